// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "zonal/planets.hpp"
#include "zonal/selfcheck.hpp"
#include "zonal/stability.hpp"

using namespace zonal;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* label, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass)
        ++failures;
    fmt::print("{} {:>2} {} | {} | {:.1f} s\n", o.pass ? "PASS" : "FAIL", id, label, o.detail, secs);
    std::fflush(stdout);
}

Outcome from_checks(const std::vector<Check>& checks) {
    Outcome o;
    double worst = 0.0;
    for (const auto& c : checks) {
        worst = std::max(worst, std::abs(c.delta()));
        if (!c.pass()) {
            o.pass = false;
            o.detail += fmt::format("{} off by {:.3g}; ", c.name, c.delta());
        }
    }
    o.detail += fmt::format("{} checks, worst |delta| {:.3g}", checks.size(), worst);
    return o;
}

}  // namespace

int main() {
    const DiscretizationConfig config;

    criterion(1, "k=2 principal eigenvalues near the g maximum", [&] {
        const double omega = -16.07354;
        const double table[16] = {-12.00038017, -12.00029226, -12.00021565, -12.00015114,
                                  -12.00009860, -12.00005793, -12.00002900, -12.00001169,
                                  -12.00000589, -12.00001148, -12.00002835, -12.00005638,
                                  -12.00009546, -12.00014551, -12.00020638, -12.00027800};
        double worst = 0.0;
        int max_n = 0;
        for (int i = 0; i < 16; ++i) {
            const auto sol = principal_eigenvalue({2, Parity::even, omega, 3.233 + 0.001 * i}, config);
            worst = std::max(worst, std::abs(sol.lambda - table[i]));
            max_n = std::max(max_n, static_cast<int>(sol.degrees.size()));
        }
        return Outcome{worst < 1e-5 && max_n <= 256, fmt::format("max |delta| {:.2e}, N <= {}", worst, max_n)};
    });

    criterion(2, "negative critical rotation rate", [&] {
        const double r = negative_critical_rate(config);
        return Outcome{r > -16.07355 && r < -16.07354, fmt::format("{:.9f}", r)};
    });

    criterion(3, "closed-form anchors", [] { return from_checks(closed_form_checks()); });

    criterion(4, "numeric eigenvalue next to the boundary closed forms",
              [&] { return from_checks(boundary_agreement_checks(config)); });

    criterion(5, "energy forms of the boundary eigenfunctions", [] { return from_checks(energy_form_checks()); });

    criterion(6, "second mu-difference at the g maximum", [&] {
        DiscretizationConfig tight = config;
        tight.convergence_tol = 1e-11;
        const double expect[7] = {-11.39, -11.3925, -11.3922, -11.3925, -11.3948, -11.3958, -11.3976};
        Outcome o;
        double worst = 0.0;
        for (int i = 0; i < 7; ++i) {
            const double h = 0.001 * (i + 1);
            const double a = second_mu_derivative_fd(2, -16.07354, 3.241, h, tight);
            worst = std::max(worst, std::abs(a - expect[i]));
            if (i == 3)
                o.detail = fmt::format("a(0.004) = {:.5f}, ", a);
        }
        o.pass = worst < 0.05;
        o.detail += fmt::format("max |delta| {:.2e}", worst);
        return o;
    });

    criterion(7, "classification at the boundary rotation rates", [&] {
        using V = Verdict;
        struct Row {
            double omega;
            V k1, k2;
        };
        const double gcrit = negative_critical_bracket(config).lo;  // g(lo) > -12, the stable side
        const Row rows[] = {
            {-20.0, V::stable, V::stable},  {-16.1, V::stable, V::stable},   {gcrit, V::stable, V::stable},
            {-16.0, V::stable, V::unstable}, {-3.01, V::stable, V::unstable}, {-3.0, V::stable, V::unstable},
            {0.0, V::unstable, V::unstable}, {34.4, V::unstable, V::unstable}, {34.5, V::unstable, V::stable},
            {34.6, V::unstable, V::stable},  {49.4, V::unstable, V::stable},   {49.5, V::stable, V::stable},
            {49.6, V::stable, V::stable},    {72.0, V::stable, V::stable},     {100.0, V::stable, V::stable},
        };
        Outcome o;
        int bad = 0;
        for (const auto& r : rows) {
            const auto rep = classify(r.omega, config);
            const bool overall_ok = (rep.overall == Overall::linearly_unstable) ==
                                    (r.k1 == V::unstable || r.k2 == V::unstable);
            if (rep.verdict_k1 != r.k1 || rep.verdict_k2 != r.k2 || !overall_ok) {
                ++bad;
                o.detail += fmt::format("omega {} wrong; ", r.omega);
            }
        }
        o.pass = bad == 0;
        o.detail += fmt::format("{} rates, {} mismatches", std::size(rows), bad);
        return o;
    });

    criterion(8, "index identity and neutral-mode counts", [&] {
        Outcome o;
        int identity_bad = 0;
        for (int j = 0; j < 50; ++j) {
            const double omega = -18.0 + 90.0 * (j + 0.5) / 50;
            for (int k : {1, 2}) {
                const auto x = index_counts(k, omega, config);
                if (x.k_i_le0 + x.k_0_le0 + x.k_c_plus_k_r != 1 || x.indeterminate)
                    ++identity_bad;
            }
        }
        const double gcrit = negative_critical_rate(config);
        struct Regime {
            int k;
            double lo, hi;
            std::size_t roots;
        };
        const Regime regimes[] = {{1, 49.5, 72.0, 1}, {2, 34.5, 72.0, 1}, {1, -18.0, -3.0, 1}, {2, -18.0, gcrit, 2}};
        int count_bad = 0;
        for (const auto& r : regimes)
            for (int j = 0; j < 20; ++j) {
                const double omega = r.lo + (r.hi - r.lo) * (j + 0.5) / 20;
                if (neutral_mode_solve(r.k, omega, config).modes.size() != r.roots) {
                    ++count_bad;
                    o.detail += fmt::format("k={} omega={:.4f} count wrong; ", r.k, omega);
                }
            }
        o.pass = identity_bad == 0 && count_bad == 0;
        o.detail += fmt::format("identity failures {}/100, count failures {}/80", identity_bad, count_bad);
        return o;
    });

    criterion(9, "unstable eigenvalue counts against the index prediction", [&] {
        SpectrumFilter filter;
        filter.min_real = 1e-7;
        Outcome o;
        int bad = 0;
        for (int k : {1, 2})
            for (int j = 0; j < 20; ++j) {
                const double omega = -18.0 + 90.0 * (j + 0.5) / 20;
                const int predicted = index_counts(k, omega, config).k_c_plus_k_r;
                const int found = unstable_count(unstable_spectrum(k, omega, filter));
                if (found != predicted) {
                    ++bad;
                    o.detail += fmt::format("k={} omega={} found {} expected {}; ", k, omega, found, predicted);
                }
            }
        double prev = 0.5;
        bool shrinking = true;
        std::string seq;
        for (double omega : {49.0, 49.3, 49.49}) {
            const auto spec = unstable_spectrum(1, omega, filter);
            if (spec.empty()) {
                shrinking = false;
                seq += "none ";
                continue;
            }
            const double re = spec.front().value.real();
            shrinking = shrinking && re < prev;
            prev = re;
            seq += fmt::format("{:.2e} ", re);
        }
        o.pass = bad == 0 && shrinking;
        o.detail += fmt::format("count mismatches {}/40, Re sigma at 49, 49.3, 49.49: {}", bad, seq);
        return o;
    });

    criterion(10, "Hellmann-Feynman derivative against finite differences", [&] {
        std::mt19937 rng(20240611);
        std::uniform_real_distribution<double> omega_dist(-18.0, 72.0), unit(0.0, 1.0);
        DiscretizationConfig tight = config;
        tight.convergence_tol = 1e-12;
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const int k = 1 + static_cast<int>(unit(rng) < 0.5);
            const double omega = omega_dist(rng);
            const double mu = unit(rng) < 0.5 ? -12.5 - 30.0 * unit(rng) : 3.5 + 30.0 * unit(rng);
            const ModeSpec m{k, stability_parity(k), omega, mu};
            const auto sol = principal_eigenvalue(m, tight);
            const double hf = dlambda_dmu(m, sol);
            const double h = 1e-4;
            const double fd = (principal_eigenvalue({k, m.parity, omega, mu + h}, tight).lambda -
                               principal_eigenvalue({k, m.parity, omega, mu - h}, tight).lambda) /
                              (2 * h);
            worst = std::max(worst, std::abs(hf - fd) / std::max(std::abs(hf), std::abs(fd)));
        }
        return Outcome{worst < 1e-4, fmt::format("worst relative difference {:.2e}", worst)};
    });

    criterion(11, "planetary rotation rates", [] {
        Outcome o;
        int bad = 0;
        for (const auto& p : planet_table()) {
            const double d = std::abs(p.recomputed_omega() - p.omega_nondim);
            if (!(d < printed_resolution(p))) {
                ++bad;
                o.detail += fmt::format("{} gives {:.4g}; ", p.name, p.recomputed_omega());
            }
        }
        o.pass = bad == 0 && planet_table().size() == 9;
        o.detail += fmt::format("{} bodies, {} outside the printed precision", planet_table().size(), bad);
        return o;
    });

    fmt::print("{} of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
