#include <doctest.h>

#include <cmath>

#include "zonal/json_io.hpp"
#include "zonal/planets.hpp"
#include "zonal/selfcheck.hpp"
#include "zonal/stability.hpp"

using namespace zonal;
using nlohmann::json;

namespace {

template <class T>
T round_trip(const T& value) {
    return json::parse(json(value).dump()).get<T>();
}

const PlanetRecord& body(const std::string& name) {
    for (const auto& p : planet_table())
        if (p.name == name)
            return p;
    FAIL("missing body " << name);
    throw;
}

}  // namespace

TEST_CASE("stability report round-trips through JSON") {
    const auto r = classify(-17.0, {});
    REQUIRE(r.neutral_modes.size() == 3);  // one k=1 root and two k=2 roots
    CHECK(round_trip(r) == r);
    const json j = r;
    CHECK(j.at("overall") == "spectrally_stable");
    CHECK(j.at("verdict_k2") == "stable");
    CHECK(j.at("neutral_modes").at(0).at("krein_sign").is_string());
    CHECK(j.at("index_k2").at("k_i_le0") == 1);
}

TEST_CASE("spectral picture and critical rates round-trip") {
    const auto a = spectral_picture(1, 50.0, {});
    CHECK(round_trip(a) == a);
    const json ja = a;
    CHECK(ja.at("embedded_eigenvalue").is_number());
    CHECK(ja.at("essential_interval").size() == 2);
    const auto b = spectral_picture(2, -17.0, {});
    CHECK(round_trip(b) == b);
    CHECK(json(b).at("rotational_pair").is_null());

    CriticalRates c;
    c.negative_k2 = c.overall_negative = -16.0735481;
    CHECK(round_trip(c) == c);
}

TEST_CASE("eigen solutions keep their closed form") {
    const auto s = principal_eigenvalue({1, Parity::odd, 49.5, -12.0}, {});
    REQUIRE(s.closed_form);
    const auto back = round_trip(s);
    CHECK(back == s);
    CHECK((*back.closed_form)(0.4) == (*s.closed_form)(0.4));
    const auto n = principal_eigenvalue({2, Parity::even, -10.0, 5.0}, {});
    CHECK(round_trip(n) == n);
}

TEST_CASE("config fills missing fields with defaults") {
    const auto c = json::parse(R"({"basis_size": 64})").get<DiscretizationConfig>();
    CHECK(c.basis_size == 64);
    CHECK(c.convergence_tol == DiscretizationConfig{}.convergence_tol);
    CHECK(c.max_refinements == DiscretizationConfig{}.max_refinements);
}

TEST_CASE("planet table") {
    const auto& t = planet_table();
    REQUIRE(t.size() == 9);
    for (const auto& p : t) {
        CAPTURE(p.name);
        CHECK(round_trip(p) == p);
        CHECK(std::abs(p.recomputed_omega() - p.omega_nondim) < printed_resolution(p));
        CHECK(std::signbit(p.recomputed_omega()) == std::signbit(p.omega_nondim));
    }
    const auto& earth = body("Earth");
    CHECK(earth.radius_km == 6371);
    CHECK(earth.spin_rad_per_s == 7.27e-5);
    CHECK(earth.zonal_speed_m_per_s == 50);
    CHECK(earth.omega_nondim == 9.26);
    CHECK(body("Jupiter").omega_nondim == 123);
}

TEST_CASE("recomputed omega within half a percent where the table has enough digits") {
    for (const char* name : {"Earth", "Jupiter", "Saturn", "Pluto"}) {
        const auto& p = body(name);
        CAPTURE(p.name);
        CHECK(std::abs(p.recomputed_omega() / p.omega_nondim - 1) < 5e-3);
    }
}

TEST_CASE("planet verdicts") {
    CHECK(classify(body("Saturn").omega_nondim, {}).overall == Overall::spectrally_stable);
    CHECK(classify(body("WASP-39b").omega_nondim, {}).overall == Overall::linearly_unstable);
    CHECK(classify(body("Earth").omega_nondim, {}).overall == Overall::linearly_unstable);
}

TEST_CASE("self-check passes") {
    const auto checks = selfcheck({});
    CHECK(checks.size() == 13);
    for (const auto& c : checks) {
        CAPTURE(c.name);
        CHECK(c.pass());
    }
}
