#include <doctest.h>

#include <cmath>

#include "zonal/critical.hpp"

using namespace zonal;

namespace {

double lambda1(int k, double omega, double mu, int basis = 48) {
    DiscretizationConfig c;
    c.basis_size = basis;
    return principal_eigenvalue({k, stability_parity(k), omega, mu}, c).lambda;
}

void check_modes(int k, double omega, const NeutralSolveResult& r) {
    const auto iv = search_interval(k, omega);
    REQUIRE(iv.size() == 1);
    double prev = -1e300;
    for (const auto& m : r.modes) {
        CHECK(m.k == k);
        CHECK(m.omega == omega);
        CHECK(m.c == m.omega + m.mu);
        CHECK(m.mu >= iv[0].lo);
        CHECK(m.mu <= iv[0].hi);
        CHECK(m.mu > prev);
        prev = m.mu;
        CHECK(std::abs(m.eigenfunction.lambda + 12.0) < 1e-6);
        // a larger basis sees the same root
        CHECK(std::abs(lambda1(k, omega, m.mu, 96) + 12.0) < 1e-6);
        CHECK(m.krein_sign == krein_sign(m.c, omega, m.dlambda_dmu));
    }
}

}  // namespace

TEST_CASE("search intervals") {
    auto a = search_interval(1, 60.0);
    REQUIRE(a.size() == 1);
    CHECK(a[0].lo == -60.0);
    CHECK(a[0].hi == -12.0);
    auto b = search_interval(2, -10.0);
    REQUIRE(b.size() == 1);
    CHECK(b[0].lo == 3.0);
    CHECK(b[0].hi == 10.0);
    CHECK(search_interval(1, 5.0).empty());
    CHECK(search_interval(2, 12.0).empty());
    CHECK(search_interval(2, -2.9).empty());
    CHECK(search_interval(1, -3.0).size() == 1);
}

TEST_CASE("Krein sign") {
    CHECK(krein_sign(1.0, 0.0, 2.0) == KreinSign::positive);
    CHECK(krein_sign(1.0, 0.0, -2.0) == KreinSign::negative);
    CHECK(krein_sign(-1.0, 0.0, -2.0) == KreinSign::positive);
    CHECK(krein_sign(5.0, 6.0, 1.0) == KreinSign::negative);  // c = 5w/6
    CHECK(krein_sign(1.0, 0.0, 1e-8) == KreinSign::degenerate);
    CHECK(krein_sign(1.0, 0.0, NAN) == KreinSign::degenerate);
}

TEST_CASE("neutral modes for k=1 above 99/2") {
    const auto r = neutral_mode_solve(1, 60.0, {});
    REQUIRE(r.modes.size() == 1);
    CHECK(r.modes[0].mu < -12.0);
    CHECK(r.modes[0].krein_sign != KreinSign::degenerate);
    check_modes(1, 60.0, r);
}

TEST_CASE("neutral modes for k=2 below the negative critical rate") {
    const auto r = neutral_mode_solve(2, -17.0, {});
    REQUIRE(r.modes.size() == 2);
    CHECK(r.modes[0].mu > 3.0);
    CHECK(r.modes[0].krein_sign != r.modes[1].krein_sign);
    CHECK(r.modes[0].krein_sign != KreinSign::degenerate);
    CHECK(r.modes[1].krein_sign != KreinSign::degenerate);
    // lambda rises then falls through -12
    CHECK(r.modes[0].dlambda_dmu > 0);
    CHECK(r.modes[1].dlambda_dmu < 0);
    check_modes(2, -17.0, r);
}

TEST_CASE("no neutral modes where the flow is unstable") {
    CHECK(neutral_mode_solve(1, 30.0, {}).modes.empty());
    CHECK(neutral_mode_solve(2, -10.0, {}).modes.empty());
    CHECK(neutral_mode_solve(1, 5.0, {}).modes.empty());
    CHECK(neutral_mode_solve(2, 40.0, {}).modes.size() == 1);
}

TEST_CASE("root counts on sampled rotation rates") {
    for (int j = 0; j < 20; ++j) {
        const double omega = 49.5 + 22.5 * (j + 0.5) / 20;
        CAPTURE(omega);
        CHECK(neutral_mode_solve(1, omega, {}).modes.size() == 1);
    }
    for (int j = 0; j < 20; ++j) {
        const double omega = -18.0 + 1.9 * (j + 0.5) / 20;
        CAPTURE(omega);
        const auto r = neutral_mode_solve(2, omega, {});
        CHECK(r.modes.size() == 2);
    }
    for (double omega : {-16.0, -14.0, -10.0, -6.0, -3.5}) {
        CAPTURE(omega);
        CHECK(neutral_mode_solve(2, omega, {}).modes.empty());
    }
}

TEST_CASE("g at the ends of its range") {
    CHECK(g_of_omega(-18.0, {}) == doctest::Approx(-6.0).epsilon(1e-12));
    CHECK(g_of_omega(-3.0, {}) < -12.0);
}

TEST_CASE("g maximum agrees with a brute-force scan") {
    const double omega = -16.07354;
    const auto g = g_maximize(omega, {});
    CHECK(g.value == doctest::Approx(-12.00000589).epsilon(1e-8).scale(1.0));
    CHECK(g.argmax == doctest::Approx(3.241).epsilon(1e-3).scale(1.0));
    double best = -1e300;
    for (double mu = 3.2; mu <= 3.3; mu += 5e-4)
        best = std::max(best, lambda1(2, omega, mu));
    CHECK(best <= g.value + 1e-10);
    CHECK(best >= g.value - 1e-7);
    // g also dominates far points
    for (double mu : {3.0 + 1e-3, 5.0, 20.0, 150.0})
        CHECK(lambda1(2, omega, mu) <= g.value);
}

TEST_CASE("g is strictly decreasing") {
    double prev = 1e300;
    for (int i = 0; i < 30; ++i) {
        const double omega = -18.0 + 15.0 * i / 29.0;
        const double g = g_of_omega(omega, {});
        CAPTURE(omega);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("negative critical rate") {
    const auto b = negative_critical_bracket({});
    CHECK(b.value > -16.07355);
    CHECK(b.value < -16.07354);
    CHECK(b.hi - b.lo <= 1e-5);
    CHECK(g_of_omega(b.lo, {}) > -12.0);
    CHECK(g_of_omega(b.hi, {}) <= -12.0);
    CHECK(g_of_omega(b.value - 1e-3, {}) > -12.0);
    CHECK(g_of_omega(b.value + 1e-3, {}) < -12.0);
    CHECK(std::abs(b.value - -16.0732) < 5e-4);
}

TEST_CASE("critical rates record") {
    const auto r = critical_rates({});
    CHECK(r.positive_k1 == 49.5);
    CHECK(r.positive_k2 == 34.5);
    CHECK(r.negative_k1 == -3.0);
    CHECK(r.overall_positive == std::max(r.positive_k1, r.positive_k2));
    CHECK(r.overall_negative == r.negative_k2);
    CHECK(r.negative_k2 > -16.0736);
    CHECK(r.negative_k2 < -16.0734);
}
