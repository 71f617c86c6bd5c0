#pragma once

#include <string>
#include <vector>

namespace zonal {

struct PlanetRecord {
    std::string name;
    double radius_km = 0.0;
    double spin_rad_per_s = 0.0;  // negative for retrograde rotation
    double zonal_speed_m_per_s = 0.0;
    double omega_nondim = 0.0;    // value as printed in the source table

    double recomputed_omega() const { return spin_rad_per_s * radius_km * 1e3 / zonal_speed_m_per_s; }

    bool operator==(const PlanetRecord&) const = default;
};

const std::vector<PlanetRecord>& planet_table();

// One unit in the last printed digit of the table's omega column.
double printed_resolution(const PlanetRecord& p);

}  // namespace zonal
