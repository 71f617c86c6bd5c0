#pragma once

#include <vector>

#include "zonal/rayleigh.hpp"

namespace zonal {

enum class KreinSign { negative, positive, degenerate };

struct NeutralMode {
    double c = 0.0;
    int k = 1;
    double omega = 0.0;
    double mu = 0.0;  // c - omega
    EigenSolution eigenfunction;
    double dlambda_dmu = 0.0;
    KreinSign krein_sign = KreinSign::degenerate;

    bool operator==(const NeutralMode&) const = default;
};

// Tunable search constants.
struct SearchConfig {
    double grid_step = 0.25;
    double root_tol = 1e-8;
    double mu_truncation = 1e3;
    double g_step_near = 0.5;  // on [3, 10]
    double g_step_far = 5.0;   // on [10, 183]
    double g_mu_tol = 1e-7;
    double omega_tol = 1e-5;
    double degenerate_slope = 1e-6;

    bool operator==(const SearchConfig&) const = default;
};

struct MuInterval {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const MuInterval&) const = default;
};

// Non-resonant mu range that may hold neutral speeds; empty for omega in (-3, 12].
std::vector<MuInterval> search_interval(int k, double omega);

KreinSign krein_sign(double c, double omega, double dlambda_dmu, double degenerate_slope = 1e-6);

struct NeutralSolveResult {
    std::vector<NeutralMode> modes;  // ascending in mu
    bool boundary_bracket_failure = false;
    bool secondary_near_neutral = false;  // lambda_2 within 0.1 of -12 somewhere on the grid
};

NeutralSolveResult neutral_mode_solve(int k, double omega, const DiscretizationConfig& config,
                                      const SearchConfig& search = {});

struct GMaximum {
    double value = 0.0;
    double argmax = 0.0;
};

// max of the k=2 principal eigenvalue over mu in [3, 183]
GMaximum g_maximize(double omega, const DiscretizationConfig& config, const SearchConfig& search = {});
double g_of_omega(double omega, const DiscretizationConfig& config, const SearchConfig& search = {});

struct RateBracket {
    double value = 0.0;
    double lo = 0.0;  // g(lo) > -12
    double hi = 0.0;  // g(hi) <= -12
};

RateBracket negative_critical_bracket(const DiscretizationConfig& config, const SearchConfig& search = {});
double negative_critical_rate(const DiscretizationConfig& config, const SearchConfig& search = {});

struct CriticalRates {
    double positive_k1 = 99.0 / 2.0;
    double positive_k2 = 69.0 / 2.0;
    double negative_k1 = -3.0;
    double negative_k2 = 0.0;
    double overall_positive = 99.0 / 2.0;
    double overall_negative = 0.0;
    double negative_k2_lo = 0.0;
    double negative_k2_hi = 0.0;

    bool operator==(const CriticalRates&) const = default;
};

CriticalRates critical_rates(const DiscretizationConfig& config, const SearchConfig& search = {});

}  // namespace zonal
