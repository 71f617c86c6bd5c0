#pragma once

#include <string>
#include <vector>

#include "zonal/rayleigh.hpp"

namespace zonal {

struct Check {
    std::string name;
    double target = 0.0;
    double value = 0.0;
    double tolerance = 0.0;

    double delta() const { return value - target; }
    bool pass() const;
};

std::vector<Check> closed_form_checks();
std::vector<Check> energy_form_checks();
std::vector<Check> boundary_agreement_checks(const DiscretizationConfig& config);

// all of the above
std::vector<Check> selfcheck(const DiscretizationConfig& config);

}  // namespace zonal
