#include "zonal/rayleigh.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "zonal/parallel.hpp"
#include "zonal/symeig.hpp"

namespace zonal {

namespace {

// Basis values on the positive Gauss nodes. Every integrand met here is even in s,
// so the weights are doubled and only s > 0 is stored.
struct BasisTable {
    std::vector<int> degrees;
    std::vector<double> s;
    std::vector<double> w;
    Eigen::MatrixXd values;  // degrees.size() x s.size()
};

std::shared_ptr<const BasisTable> build_table(int k, Parity parity, int n_basis, int n_quad) {
    auto table = std::make_shared<BasisTable>();
    table->degrees = parity_degrees(k, parity, n_basis);
    const auto& rule = gauss_legendre_cached(n_quad);
    const int half = n_quad / 2;
    table->s.assign(rule.nodes.begin() + (n_quad - half), rule.nodes.end());
    table->w.assign(rule.weights.begin() + (n_quad - half), rule.weights.end());
    for (double& w : table->w)
        w *= 2.0;
    const int lmax = table->degrees.back();
    std::vector<double> column(lmax - k + 1);
    table->values.resize(n_basis, half);
    for (int j = 0; j < half; ++j) {
        normalized_legendre_column(lmax, k, table->s[j], column.data());
        for (int i = 0; i < n_basis; ++i)
            table->values(i, j) = column[table->degrees[i] - k];
    }
    return table;
}

std::shared_ptr<const BasisTable> basis_table(int k, Parity parity, int n_basis, int n_quad) {
    using Key = std::tuple<int, int, int, int>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const BasisTable>> cache;
    const Key key{k, static_cast<int>(parity), n_basis, n_quad};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto table = build_table(k, parity, n_basis, n_quad);
    std::lock_guard lock(mutex);
    if (cache.size() > 32)
        cache.clear();
    return cache.emplace(key, std::move(table)).first->second;
}

double denominator(double s, double mu) {
    return resonance_denominator(s, mu);
}

double potential(double omega, double mu, double s) {
    return (2.0 * omega + 12.0 * mu) / denominator(s, mu);
}

void validate(const ModeSpec& mode, int basis_size) {
    if (mode.k < 0)
        throw DomainError("mode: k must be >= 0");
    if (basis_size < 8)
        throw ConfigError("basis_size must be >= 8");
    if (!std::isfinite(mode.mu) || !std::isfinite(mode.omega))
        throw DomainError("mode: omega and mu must be finite");
    if (in_resonance_band(mode.mu) || std::abs(mode.mu + 12.0) < boundary_snap ||
        std::abs(mode.mu - 3.0) < boundary_snap)
        throw ResonanceError(
            fmt::format("mu = {} makes 15s^2-3+mu vanish on [-1,1] or lies within {} of it",
                        mode.mu, boundary_snap));
}

// Lower triangle of the Galerkin matrix.
Eigen::MatrixXd assemble_lower(const ModeSpec& mode, const BasisTable& table) {
    const Eigen::Index n = static_cast<Eigen::Index>(table.degrees.size());
    const Eigen::Index nh = static_cast<Eigen::Index>(table.s.size());
    // 2w+12mu is a constant, so w V has one sign and the V part is a signed Gram matrix.
    const double numerator = 2.0 * mode.omega + 12.0 * mode.mu;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    if (numerator != 0.0) {
        Eigen::VectorXd root(nh);
        for (Eigen::Index j = 0; j < nh; ++j)
            root(j) = std::sqrt(table.w[j] * std::abs(potential(mode.omega, mode.mu, table.s[j])));
        const double sign = (numerator > 0.0) == (mode.mu > 3.0) ? 1.0 : -1.0;
        Eigen::MatrixXd scaled = table.values * root.asDiagonal();
        a.selfadjointView<Eigen::Lower>().rankUpdate(scaled, -sign);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const double l = table.degrees[i];
        a(i, i) -= l * (l + 1.0);
    }
    return a;
}

EigenSolution closed_form_solution(const ModeSpec& mode, const ClosedForm& cf) {
    EigenSolution sol;
    sol.lambda = cf.lambda;
    sol.converged = true;
    sol.k = mode.k;
    sol.parity = mode.parity;
    sol.closed_form = cf;
    return sol;
}

double integrate_even(const std::function<double(double)>& f) {
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    return 2.0 * integrator.integrate(f, 0.0, 1.0);
}

}  // namespace

double resonance_denominator(double s, double mu) {
    if (mu < 0.0)
        return (mu + 12.0) - 15.0 * (1.0 - s) * (1.0 + s);
    return 15.0 * s * s + (mu - 3.0);
}

Parity stability_parity(int k) {
    return (std::abs(k) % 2 == 1) ? Parity::odd : Parity::even;
}

std::vector<int> parity_degrees(int k, Parity parity, int count) {
    std::vector<int> degrees;
    degrees.reserve(count);
    const int want = parity == Parity::even ? 0 : 1;
    for (int l = std::max({k, 1, k == 1 ? 2 : 0}); static_cast<int>(degrees.size()) < count; ++l)
        if ((l + k) % 2 == want)
            degrees.push_back(l);
    return degrees;
}

bool in_resonance_band(double mu) {
    return mu > -12.0 && mu < 3.0;
}

int quadrature_count(double mu, int basis_size, const DiscretizationConfig& config) {
    int n = std::max(4 * basis_size + 16, config.quadrature_nodes);
    if (std::abs(mu + 12.0) < 0.05 || std::abs(mu - 3.0) < 0.05)
        n *= 4;
    return n + (n % 2);
}

Eigen::MatrixXd assemble(const ModeSpec& mode, const DiscretizationConfig& config) {
    validate(mode, config.basis_size);
    const int nq = quadrature_count(mode.mu, config.basis_size, config);
    const auto table = basis_table(mode.k, mode.parity, config.basis_size, nq);
    Eigen::MatrixXd a = assemble_lower(mode, *table);
    a.triangularView<Eigen::StrictlyUpper>() = a.transpose();
    return a;
}

EigenSolution solve_at_size(const ModeSpec& mode, const DiscretizationConfig& config) {
    validate(mode, config.basis_size);
    const int nq = quadrature_count(mode.mu, config.basis_size, config);
    const auto table = basis_table(mode.k, mode.parity, config.basis_size, nq);
    const Eigen::MatrixXd a = assemble_lower(mode, *table);

    auto top = symmetric_top_eigenpairs(a, 3, 1);
    EigenSolution sol;
    sol.k = mode.k;
    sol.parity = mode.parity;
    sol.degrees = table->degrees;
    sol.quadrature_nodes = nq;
    sol.lambda = top.values[0];
    sol.lower_eigenvalues.assign(top.values.begin() + 1, top.values.end());

    Eigen::VectorXd v = top.vectors[0];
    if (top.values.size() > 1 && top.values[0] - top.values[1] < 10.0 * config.convergence_tol) {
        // tie-break inside the eigenspace: maximize the lowest-degree coefficient
        sol.degenerate = true;
        top = symmetric_top_eigenpairs(a, 2, 2);
        Eigen::VectorXd mix = top.vectors[0](0) * top.vectors[0] + top.vectors[1](0) * top.vectors[1];
        if (mix.norm() > 1e-12)
            v = mix.normalized();
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-8) {
            if (v(i) < 0.0)
                v = -v;
            break;
        }
    }
    const Eigen::VectorXd r = a.selfadjointView<Eigen::Lower>() * v - sol.lambda * v;
    sol.residual = r.norm();
    sol.coeffs.assign(v.data(), v.data() + v.size());
    return sol;
}

namespace {

template <class Stop>
EigenSolution refine(const ModeSpec& mode, const DiscretizationConfig& config, Stop stop_early) {
    const bool stability_pair = (mode.k == 1 && mode.parity == Parity::odd) ||
                                (mode.k == 2 && mode.parity == Parity::even);
    if (std::abs(mode.mu + 12.0) < boundary_snap) {
        if (!stability_pair)
            throw ResonanceError("mu = -12 has a closed form only for (k=1, odd) and (k=2, even)");
        return closed_form_solution(mode, analytic_lambda_at_mu_minus12(mode.k, mode.omega));
    }
    if (std::abs(mode.mu - 3.0) < boundary_snap) {
        if (!stability_pair)
            throw ResonanceError("mu = 3 has a closed form only for (k=1, odd) and (k=2, even)");
        return closed_form_solution(mode, analytic_lambda_at_mu3(mode.k, mode.omega));
    }

    DiscretizationConfig step = config;
    EigenSolution prev = solve_at_size(mode, step);
    for (int r = 0; r < config.max_refinements; ++r) {
        step.basis_size *= 2;
        EigenSolution cur = solve_at_size(mode, step);
        const double change = cur.lambda - prev.lambda;
        prev = std::move(cur);
        if (std::abs(change) < config.convergence_tol) {
            prev.converged = true;
            break;
        }
        if (stop_early(prev.lambda, change))
            break;
    }
    return prev;
}

}  // namespace

EigenSolution principal_eigenvalue(const ModeSpec& mode, const DiscretizationConfig& config) {
    return refine(mode, config, [](double, double) { return false; });
}

EigenSolution principal_eigenvalue_against(const ModeSpec& mode, const DiscretizationConfig& config,
                                           double level) {
    // Ritz values increase with N toward the true value, so lambda > level is final, and
    // lambda < level is settled once the gap dwarfs the last increment.
    return refine(mode, config, [level](double lambda, double change) {
        return lambda > level || level - lambda > 4.0 * std::abs(change);
    });
}

double evaluate_phi(const EigenSolution& sol, double s) {
    if (sol.closed_form)
        return (*sol.closed_form)(s);
    if (sol.degrees.empty())
        return 0.0;
    std::vector<double> column(sol.degrees.back() - sol.k + 1);
    normalized_legendre_column(sol.degrees.back(), sol.k, s, column.data());
    double phi = 0.0;
    for (std::size_t i = 0; i < sol.coeffs.size(); ++i)
        phi += sol.coeffs[i] * column[sol.degrees[i] - sol.k];
    return phi;
}

namespace {

// int_{-1}^{1} integrand(s, Phi(s)) ds, where the integrand is even in s
template <class F>
double integrate_phi(const EigenSolution& sol, F integrand, double mu) {
    if (sol.closed_form) {
        const auto& cf = *sol.closed_form;
        return integrate_even([&](double s) {
            const double phi = cf(s);
            return phi == 0.0 ? 0.0 : integrand(s, phi);
        });
    }
    if (in_resonance_band(mu))
        throw ResonanceError("mu inside the resonance band");
    const int n = static_cast<int>(sol.degrees.size());
    const auto table = basis_table(sol.k, sol.parity, n, sol.quadrature_nodes);
    const Eigen::Map<const Eigen::VectorXd> c(sol.coeffs.data(), n);
    const Eigen::VectorXd phi = table->values.transpose() * c;
    double sum = 0.0;
    for (std::size_t j = 0; j < table->s.size(); ++j)
        sum += table->w[j] * integrand(table->s[j], phi(j));
    return sum;
}

double boundary_mu(const EigenSolution& sol, double mu) {
    if (!sol.closed_form)
        return mu;
    return sol.closed_form->kind == ClosedFormKind::mu_minus12 ? -12.0 : 3.0;
}

}  // namespace

double dlambda_dmu(const ModeSpec& mode, const EigenSolution& sol) {
    const double mu = boundary_mu(sol, mode.mu);
    const double omega = mode.omega;
    return integrate_phi(
        sol,
        [&](double s, double phi) {
            // divide before squaring: Phi vanishes where the boundary denominators do
            const double ratio = phi / denominator(s, mu);
            return (-12.0 * (15.0 * s * s - 3.0) + 2.0 * omega) * ratio * ratio;
        },
        mu);
}

double dlambda_domega(const ModeSpec& mode, const EigenSolution& sol) {
    const double mu = boundary_mu(sol, mode.mu);
    return integrate_phi(
        sol, [&](double s, double phi) { return -2.0 * phi * (phi / denominator(s, mu)); }, mu);
}

std::vector<CurvePoint> eigenvalue_curve(int k, Parity parity, double omega,
                                         const std::vector<double>& mu_grid,
                                         const DiscretizationConfig& config) {
    std::vector<CurvePoint> points(mu_grid.size());
    parallel_for(mu_grid.size(), [&](std::size_t i) {
        CurvePoint& p = points[i];
        p.mu = mu_grid[i];
        p.omega = omega;
        try {
            const ModeSpec mode{k, parity, omega, p.mu};
            const auto sol = principal_eigenvalue(mode, config);
            p.lambda1 = sol.lambda;
            p.dlambda_dmu = dlambda_dmu(mode, sol);
            p.converged = sol.converged;
        } catch (const std::exception& e) {
            p.lambda1 = std::numeric_limits<double>::quiet_NaN();
            p.dlambda_dmu = std::numeric_limits<double>::quiet_NaN();
            p.converged = false;
            p.error = e.what();
        }
    });
    return points;
}

double second_difference(const std::function<double(double)>& f, double mu, double step) {
    return (f(mu + step) + f(mu - step) - 2.0 * f(mu)) / (step * step);
}

double second_mu_derivative_fd(int k, double omega, double mu_center, double step,
                               const DiscretizationConfig& config) {
    const Parity parity = stability_parity(k);
    return second_difference(
        [&](double mu) { return principal_eigenvalue({k, parity, omega, mu}, config).lambda; },
        mu_center, step);
}

ClosedForm analytic_lambda_at_mu_minus12(int k, double omega) {
    if (k != 1 && k != 2)
        throw DomainError("closed form at mu=-12 exists for k = 1, 2 only");
    if (!(omega >= 12.0 && omega <= 72.0))
        throw DomainError(fmt::format("closed form at mu=-12 needs omega in [12,72], got {}", omega));
    ClosedForm cf;
    cf.kind = ClosedFormKind::mu_minus12;
    cf.k = k;
    cf.omega = omega;
    if (k == 1) {
        const double a = std::sqrt((159.0 - 2.0 * omega) / 15.0);
        cf.exponent = a;
        cf.lambda = -(1.0 + a) * (2.0 + a);
        cf.scale = 1.0 / std::sqrt(std::beta(1.5, a + 1.0));
    } else {
        const double a = std::sqrt((204.0 - 2.0 * omega) / 15.0);
        cf.exponent = a;
        cf.lambda = -a * (1.0 + a);
        cf.scale = 1.0 / std::sqrt(std::beta(0.5, a + 1.0));
    }
    return cf;
}

ClosedForm analytic_lambda_at_mu3(int k, double omega) {
    if (k != 1 && k != 2)
        throw DomainError("closed form at mu=3 exists for k = 1, 2 only");
    if (!(omega >= -18.0 && omega <= -3.0))
        throw DomainError(fmt::format("closed form at mu=3 needs omega in [-18,-3], got {}", omega));
    ClosedForm cf;
    cf.kind = ClosedFormKind::mu3;
    cf.k = k;
    cf.omega = omega;
    const double t = std::sqrt((8.0 * omega + 159.0) / 15.0);
    if (k == 1) {
        cf.exponent = 0.5 * (1.0 + t);
        cf.lambda = -(2.0 * omega + 96.0) / 15.0 - 2.0 * t;
        cf.scale = 1.0 / std::sqrt(std::beta(cf.exponent + 0.5, 2.0));
    } else {
        if (omega == -18.0) {
            // the potential vanishes identically; Phi = 1 - s^2
            cf.exponent = 0.0;
            cf.lambda = -6.0;
        } else {
            cf.exponent = 0.5 * (1.0 + t);
            cf.lambda = -(2.0 * omega + 171.0) / 15.0 - 3.0 * t;
        }
        cf.scale = 1.0 / std::sqrt(std::beta(cf.exponent + 0.5, 3.0));
    }
    return cf;
}

double ClosedForm::operator()(double s) const {
    const double q = (1.0 - s) * (1.0 + s);
    if (kind == ClosedFormKind::mu_minus12) {
        const double envelope = std::pow(q, 0.5 * exponent);
        return scale * (k == 1 ? s * envelope : envelope);
    }
    const double power = exponent == 0.0 ? 1.0 : std::pow(std::abs(s), exponent);
    if (k == 1)
        return scale * std::copysign(power, s) * std::sqrt(q);
    return scale * power * q;
}

std::string ClosedForm::describe() const {
    if (kind == ClosedFormKind::mu_minus12)
        return k == 1 ? fmt::format("s(1-s^2)^(a/2), a={:.12g}", exponent)
                      : fmt::format("(1-s^2)^(a/2), a={:.12g}", exponent);
    return k == 1 ? fmt::format("sign(s)|s|^a(1-s^2)^(1/2), a={:.12g}", exponent)
                  : fmt::format("|s|^a(1-s^2), a={:.12g}", exponent);
}

}  // namespace zonal
