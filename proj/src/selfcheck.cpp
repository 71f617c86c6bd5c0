#include "zonal/selfcheck.hpp"

#include <cmath>

#include "zonal/stability.hpp"

namespace zonal {

bool Check::pass() const {
    return std::isfinite(value) && std::abs(value - target) <= tolerance;
}

std::vector<Check> closed_form_checks() {
    constexpr double tol = 1e-12;
    return {
        {"lambda1(-12, 99/2)", -12.0, analytic_lambda_at_mu_minus12(1, 99.0 / 2.0).lambda, tol},
        {"lambda1(-12, 12)", -20.0, analytic_lambda_at_mu_minus12(1, 12.0).lambda, tol},
        {"lambda1(-12, 72)", -6.0, analytic_lambda_at_mu_minus12(1, 72.0).lambda, tol},
        {"lambda1~(-12, 69/2)", -12.0, analytic_lambda_at_mu_minus12(2, 69.0 / 2.0).lambda, tol},
        {"lambda1(3, -3)", -12.0, analytic_lambda_at_mu3(1, -3.0).lambda, tol},
        {"lambda1(3, -18)", -6.0, analytic_lambda_at_mu3(1, -18.0).lambda, tol},
        {"lambda1~(3, -3)", -20.0, analytic_lambda_at_mu3(2, -3.0).lambda, tol},
        {"lambda1~(3, -18)", -6.0, analytic_lambda_at_mu3(2, -18.0).lambda, tol},
    };
}

std::vector<Check> energy_form_checks() {
    constexpr double tol = 1e-8;
    auto p32 = [](double s) { return 15.0 * s * (1.0 - s * s); };
    auto p33 = [](double s) { return -15.0 * std::pow(1.0 - s * s, 1.5); };
    auto phi3 = [](double s) { return std::copysign(s * s * std::sqrt(1.0 - s * s), s); };
    return {
        {"energy P_3^2 (c=75/2, w=99/2)", -135.0 / 2.0, energy_form(75.0 / 2.0, 1, 99.0 / 2.0, p32), tol},
        {"energy P_3^3 (c=45/2, w=69/2)", -575.0, energy_form(45.0 / 2.0, 2, 69.0 / 2.0, p33), tol},
        {"energy s|s|(1-s^2)^1/2 (c=0, w=-3)", -4.0 / 45.0, energy_form(0.0, 1, -3.0, phi3), tol},
    };
}

std::vector<Check> boundary_agreement_checks(const DiscretizationConfig& config) {
    constexpr double tol = 1e-2;
    const double a = principal_eigenvalue({1, Parity::odd, 60.0, -12.0 - 1e-4}, config).lambda;
    const double b = principal_eigenvalue({1, Parity::odd, -10.0, 3.0 + 1e-4}, config).lambda;
    return {
        {"lambda1(-12-1e-4, 60) numeric", analytic_lambda_at_mu_minus12(1, 60.0).lambda, a, tol},
        {"lambda1(3+1e-4, -10) numeric", analytic_lambda_at_mu3(1, -10.0).lambda, b, tol},
    };
}

std::vector<Check> selfcheck(const DiscretizationConfig& config) {
    auto out = closed_form_checks();
    for (auto& c : energy_form_checks())
        out.push_back(std::move(c));
    for (auto& c : boundary_agreement_checks(config))
        out.push_back(std::move(c));
    return out;
}

}  // namespace zonal
