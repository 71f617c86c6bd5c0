#include "zonal/critical.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "zonal/parallel.hpp"

namespace zonal {

namespace {

constexpr double boundary_offsets[] = {1e-5, 1e-4, 1e-3, 1e-2, 0.05, 0.1};

bool closed_form_available(double boundary, double omega) {
    if (boundary == -12.0)
        return omega >= 12.0 && omega <= 72.0;
    return omega >= -18.0 && omega <= -3.0;
}

double principal(int k, double omega, double mu, const DiscretizationConfig& config) {
    return principal_eigenvalue({k, stability_parity(k), omega, mu}, config).lambda;
}

}  // namespace

std::vector<MuInterval> search_interval(int k, double omega) {
    (void)k;  // the scope lemmas are the same for both modes
    if (omega > -3.0 && omega <= 12.0)
        return {};
    if (omega <= -3.0)
        return {{3.0, -omega}};
    return {{-omega, -12.0}};
}

KreinSign krein_sign(double c, double omega, double dlambda_dmu, double degenerate_slope) {
    if (!(std::abs(dlambda_dmu) >= degenerate_slope))
        return KreinSign::degenerate;
    return (c - 5.0 * omega / 6.0) * dlambda_dmu <= 0.0 ? KreinSign::negative : KreinSign::positive;
}

NeutralSolveResult neutral_mode_solve(int k, double omega, const DiscretizationConfig& config,
                                      const SearchConfig& search) {
    NeutralSolveResult result;
    const auto intervals = search_interval(k, omega);
    if (intervals.empty())
        return result;
    const Parity parity = stability_parity(k);
    const MuInterval iv = intervals.front();
    const bool positive_regime = omega > 12.0;
    const double boundary = positive_regime ? -12.0 : 3.0;
    const double dir = positive_regime ? -1.0 : 1.0;
    const double lo = positive_regime ? std::max(iv.lo, -search.mu_truncation) : iv.lo;
    const double hi = positive_regime ? iv.hi : std::min(iv.hi, search.mu_truncation);
    auto inside = [&](double mu) { return mu >= lo && mu <= hi; };

    std::vector<double> pts;
    const bool analytic_end = closed_form_available(boundary, omega);
    if (analytic_end)
        pts.push_back(boundary);
    for (double d : boundary_offsets)
        if (inside(boundary + dir * d))
            pts.push_back(boundary + dir * d);
    for (int j = 1;; ++j) {
        const double mu = boundary + dir * j * search.grid_step;
        if (!inside(mu))
            break;
        pts.push_back(mu);
    }
    pts.push_back(positive_regime ? lo : hi);
    if (k == 2 && omega >= -18.0 && omega <= -3.0) {
        // two close roots straddle the maximum; sampling it guarantees a bracket
        const double peak = g_maximize(omega, config, search).argmax;
        if (inside(peak))
            pts.push_back(peak);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(),
                             [&](double mu) {
                                 return std::abs(mu - boundary) < boundary_snap &&
                                        !(analytic_end && mu == boundary);
                             }),
              pts.end());

    std::vector<double> f(pts.size());
    std::vector<double> second(pts.size(), -std::numeric_limits<double>::infinity());
    parallel_for(pts.size(), [&](std::size_t i) {
        const auto sol = principal_eigenvalue_against({k, parity, omega, pts[i]}, config, -12.0);
        f[i] = sol.lambda + 12.0;
        if (!sol.lower_eigenvalues.empty())
            second[i] = sol.lower_eigenvalues.front();
    });
    for (double l2 : second)
        if (std::abs(l2 + 12.0) < 0.1)
            result.secondary_near_neutral = true;

    std::vector<double> roots;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::abs(f[i]) < 1e-12) {
            roots.push_back(pts[i]);
            continue;
        }
        if (i + 1 < pts.size() && std::abs(f[i + 1]) >= 1e-12 && (f[i] < 0.0) != (f[i + 1] < 0.0)) {
            auto fn = [&](double mu) {
                return principal_eigenvalue_against({k, parity, omega, mu}, config, -12.0).lambda + 12.0;
            };
            auto tol = [&](double a, double b) { return std::abs(b - a) < search.root_tol; };
            const auto [a, b] = boost::math::tools::bisect(fn, pts[i], pts[i + 1], tol);
            roots.push_back(0.5 * (a + b));
        }
    }

    for (double mu : roots) {
        const ModeSpec mode{k, parity, omega, mu};
        NeutralMode nm;
        nm.k = k;
        nm.omega = omega;
        nm.mu = mu;
        nm.c = omega + mu;
        nm.eigenfunction = principal_eigenvalue(mode, config);
        nm.dlambda_dmu = dlambda_dmu(mode, nm.eigenfunction);
        nm.krein_sign = krein_sign(nm.c, omega, nm.dlambda_dmu, search.degenerate_slope);
        if (std::abs(mu - boundary) < 1e-5 && !nm.eigenfunction.closed_form)
            result.boundary_bracket_failure = true;
        result.modes.push_back(std::move(nm));
    }
    return result;
}

GMaximum g_maximize(double omega, const DiscretizationConfig& config, const SearchConfig& search) {
    if (!(omega >= -18.0 && omega <= -3.0))
        throw DomainError("g is defined for omega in [-18, -3]");
    std::vector<double> grid;
    for (double mu = 3.0; mu < 10.0 - 1e-12; mu += search.g_step_near)
        grid.push_back(mu);
    for (double mu = 10.0; mu <= 183.0 + 1e-12; mu += search.g_step_far)
        grid.push_back(mu);
    if (grid.back() < 183.0)
        grid.push_back(183.0);

    std::vector<double> values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { values[i] = principal(2, omega, grid[i], config); });
    const auto best = static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());

    GMaximum out{values[best], grid[best]};
    const double a = grid[best == 0 ? 0 : best - 1];
    const double b = grid[std::min(best + 1, grid.size() - 1)];
    const int bits = static_cast<int>(std::ceil(1.0 - std::log2(search.g_mu_tol / std::max(std::abs(a), std::abs(b)))));
    auto neg = [&](double mu) { return -principal(2, omega, mu, config); };
    const auto [mu_star, neg_value] = boost::math::tools::brent_find_minima(neg, a, b, bits);
    if (-neg_value > out.value)
        out = {-neg_value, mu_star};
    return out;
}

double g_of_omega(double omega, const DiscretizationConfig& config, const SearchConfig& search) {
    return g_maximize(omega, config, search).value;
}

RateBracket negative_critical_bracket(const DiscretizationConfig& config, const SearchConfig& search) {
    auto fn = [&](double omega) { return g_of_omega(omega, config, search) + 12.0; };
    auto tol = [&](double a, double b) { return std::abs(b - a) < search.omega_tol; };
    const auto [lo, hi] = boost::math::tools::bisect(fn, -18.0, -3.0, tol);
    return {0.5 * (lo + hi), lo, hi};
}

double negative_critical_rate(const DiscretizationConfig& config, const SearchConfig& search) {
    return negative_critical_bracket(config, search).value;
}

CriticalRates critical_rates(const DiscretizationConfig& config, const SearchConfig& search) {
    const auto bracket = negative_critical_bracket(config, search);
    CriticalRates rates;
    rates.negative_k2 = bracket.value;
    rates.overall_negative = bracket.value;
    rates.negative_k2_lo = bracket.lo;
    rates.negative_k2_hi = bracket.hi;
    return rates;
}

}  // namespace zonal
