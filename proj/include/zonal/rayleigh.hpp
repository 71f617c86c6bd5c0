#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zonal/basisfn.hpp"

namespace zonal {

enum class Parity { odd, even };

// Parity of the eigenfunction used in the stability problems: odd for k = 1, even for k = 2.
Parity stability_parity(int k);

class ResonanceError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ModeSpec {
    int k = 1;
    Parity parity = Parity::odd;
    double omega = 0.0;
    double mu = 0.0;  // c - omega

    bool operator==(const ModeSpec&) const = default;
};

struct DiscretizationConfig {
    int basis_size = 32;
    int quadrature_nodes = 0;  // 0 selects 4N+16; a positive value is a lower bound
    double convergence_tol = 1e-9;
    int max_refinements = 4;

    bool operator==(const DiscretizationConfig&) const = default;
};

enum class ClosedFormKind { mu_minus12, mu3 };

// Boundary eigenpair in closed form. The eigenfunction is
//   mu_minus12, k=1:  s (1-s^2)^{a/2}        mu_minus12, k=2:  (1-s^2)^{a/2}
//   mu3,        k=1:  sign(s)|s|^a (1-s^2)^{1/2}   mu3, k=2:  |s|^a (1-s^2)
// scaled to unit L2 norm on [-1, 1].
struct ClosedForm {
    ClosedFormKind kind = ClosedFormKind::mu_minus12;
    int k = 1;
    double omega = 0.0;
    double lambda = 0.0;
    double exponent = 0.0;
    double scale = 1.0;

    double operator()(double s) const;
    std::string describe() const;

    bool operator==(const ClosedForm&) const = default;
};

ClosedForm analytic_lambda_at_mu_minus12(int k, double omega);
// For k = 2 this returns -6 at omega = -18 exactly (eigenfunction 1-s^2) and the
// formula value for omega > -18.
ClosedForm analytic_lambda_at_mu3(int k, double omega);

struct EigenSolution {
    double lambda = 0.0;
    std::vector<double> coeffs;  // in unit-normalized P_l^k, l = degrees[i]
    double residual = 0.0;
    bool converged = false;
    int k = 1;
    Parity parity = Parity::odd;
    std::vector<int> degrees;
    int quadrature_nodes = 0;
    std::vector<double> lower_eigenvalues;  // next eigenvalues below lambda, descending
    bool degenerate = false;
    std::optional<ClosedForm> closed_form;

    bool operator==(const EigenSolution&) const = default;
};

// Degrees l >= max(k, 1) with (-1)^{l+k} matching the parity; l >= 2 for k = 1.
std::vector<int> parity_degrees(int k, Parity parity, int count);

// True when 15s^2 - 3 + mu vanishes somewhere on [-1, 1].
bool in_resonance_band(double mu);

// 15s^2 - 3 + mu, written to stay exact near its zeros at mu = -12 and mu = 3
double resonance_denominator(double s, double mu);

// Distance below which mu is treated as the boundary value -12 or 3.
inline constexpr double boundary_snap = 1e-6;

int quadrature_count(double mu, int basis_size, const DiscretizationConfig& config);

Eigen::MatrixXd assemble(const ModeSpec& mode, const DiscretizationConfig& config);

// One Galerkin solve at config.basis_size, no refinement.
EigenSolution solve_at_size(const ModeSpec& mode, const DiscretizationConfig& config);

EigenSolution principal_eigenvalue(const ModeSpec& mode, const DiscretizationConfig& config);

// Same refinement, but stops as soon as the side of `level` the eigenvalue lies on is
// settled. `converged` is set only if the full tolerance was reached.
EigenSolution principal_eigenvalue_against(const ModeSpec& mode, const DiscretizationConfig& config,
                                           double level);

double evaluate_phi(const EigenSolution& sol, double s);

double dlambda_dmu(const ModeSpec& mode, const EigenSolution& sol);
double dlambda_domega(const ModeSpec& mode, const EigenSolution& sol);

struct CurvePoint {
    double mu = 0.0;
    double omega = 0.0;
    double lambda1 = 0.0;
    double dlambda_dmu = 0.0;
    bool converged = false;
    std::string error;
};

std::vector<CurvePoint> eigenvalue_curve(int k, Parity parity, double omega,
                                         const std::vector<double>& mu_grid,
                                         const DiscretizationConfig& config);

// (f(mu+h) + f(mu-h) - 2 f(mu)) / h^2
double second_difference(const std::function<double(double)>& f, double mu, double step);

double second_mu_derivative_fd(int k, double omega, double mu_center, double step,
                               const DiscretizationConfig& config);

}  // namespace zonal
