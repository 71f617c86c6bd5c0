#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fmt/os.h>
#include <iostream>
#include <string>

#include "zonal/json_io.hpp"
#include "zonal/planets.hpp"
#include "zonal/selfcheck.hpp"
#include "zonal/stability.hpp"

using namespace zonal;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string verdict_line(const StabilityReport& r) {
    if (r.rayleigh_criterion)
        return "spectrally stable (Rayleigh criterion)";
    const bool u1 = r.verdict_k1 == Verdict::unstable;
    const bool u2 = r.verdict_k2 == Verdict::unstable;
    if (u1 && u2)
        return "linearly unstable (k=1 and k=2)";
    if (u1)
        return "linearly unstable (k=1)";
    if (u2)
        return "linearly unstable (k=2)";
    return "spectrally stable";
}

const char* krein_name(KreinSign s) {
    switch (s) {
    case KreinSign::negative:
        return "negative";
    case KreinSign::positive:
        return "positive";
    default:
        return "degenerate";
    }
}

void print_index(const char* label, const IndexCounts& c, Verdict v) {
    if (!c.evaluated) {
        fmt::print("{}: stable (not counted)\n", label);
        return;
    }
    fmt::print("{}: {:<8} n-(L)={} k_i<=0={} k_0<=0={} k_c+k_r={}{}\n", label,
               v == Verdict::unstable ? "unstable" : "stable", c.n_minus_L, c.k_i_le0, c.k_0_le0, c.k_c_plus_k_r,
               c.indeterminate ? " (indeterminate)" : "");
}

int cmd_classify(double omega, bool as_json, const DiscretizationConfig& config) {
    if (!std::isfinite(omega))
        throw UsageError("omega must be finite");
    const auto r = classify(omega, config);
    if (as_json) {
        std::cout << json(r).dump(2) << "\n";
        return exit_ok;
    }
    fmt::print("omega = {}\n{}\n", omega, verdict_line(r));
    print_index("k=1", r.index_k1, r.verdict_k1);
    print_index("k=2", r.index_k2, r.verdict_k2);
    fmt::print("dim E^u = dim E^s = {}\n", r.dim_Eu);
    for (const auto& m : r.neutral_modes)
        fmt::print("neutral mode k={} c={:.10g} mu={:.10g} dlambda/dmu={:.6g} krein={}\n", m.k, m.c, m.mu,
                   m.dlambda_dmu, krein_name(m.krein_sign));
    return exit_ok;
}

std::vector<double> parse_grid(const std::string& spec) {
    const auto p1 = spec.find(':');
    const auto p2 = p1 == std::string::npos ? std::string::npos : spec.find(':', p1 + 1);
    if (p2 == std::string::npos)
        throw UsageError("--mu expects a:b:step");
    double a, b, step;
    try {
        a = std::stod(spec.substr(0, p1));
        b = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
        step = std::stod(spec.substr(p2 + 1));
    } catch (const std::exception&) {
        throw UsageError("cannot parse --mu grid '" + spec + "'");
    }
    if (!(step > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw UsageError("--mu step must be positive");
    std::vector<double> grid;
    if (b < a)
        return grid;
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    for (long i = 0; i < n; ++i)
        grid.push_back(a + static_cast<double>(i) * step);
    return grid;
}

int cmd_curve(int k, double omega, const std::string& mu_spec, const std::string& out_path,
              const DiscretizationConfig& config) {
    const auto grid = parse_grid(mu_spec);
    const auto points = eigenvalue_curve(k, stability_parity(k), omega, grid, config);
    auto out = fmt::output_file(out_path);
    out.print("mu,omega,lambda1,dlambda_dmu,converged\n");
    for (const auto& p : points) {
        if (!p.error.empty())
            out.print("{:.12g},{:.12g},nan,nan,false\n", p.mu, p.omega);
        else
            out.print("{:.12g},{:.12g},{:.15g},{:.15g},{}\n", p.mu, p.omega, p.lambda1, p.dlambda_dmu,
                      p.converged ? "true" : "false");
    }
    return exit_ok;
}

int cmd_critical(const std::string& mode, bool as_json, const DiscretizationConfig& config) {
    const CriticalRates exact;
    if (mode != "all" && mode != "k2-") {
        const double v = mode == "k1+" ? exact.positive_k1 : mode == "k2+" ? exact.positive_k2 : exact.negative_k1;
        if (as_json)
            std::cout << json{{"mode", mode}, {"value", v}}.dump(2) << "\n";
        else
            fmt::print("{}  {}\n", mode, v);
        return exit_ok;
    }
    const auto rates = critical_rates(config);
    if (as_json) {
        if (mode == "all")
            std::cout << json(rates).dump(2) << "\n";
        else
            std::cout << json{{"mode", mode}, {"value", rates.negative_k2}, {"lo", rates.negative_k2_lo},
                              {"hi", rates.negative_k2_hi}}
                             .dump(2)
                      << "\n";
        return exit_ok;
    }
    if (mode == "all")
        fmt::print("k1+  {}\nk2+  {}\nk1-  {}\n", rates.positive_k1, rates.positive_k2, rates.negative_k1);
    fmt::print("k2-  {:.10f}  in [{:.10f}, {:.10f}]\n", rates.negative_k2, rates.negative_k2_lo, rates.negative_k2_hi);
    if (mode == "all")
        fmt::print("unstable for omega in ({:.10f}, {})\n", rates.overall_negative, rates.overall_positive);
    return exit_ok;
}

int cmd_spectrum(int k, double omega, bool as_json, const DiscretizationConfig& config) {
    if (k == 0)
        throw UsageError("--k must be nonzero");
    const auto p = spectral_picture(k, omega, config);
    if (as_json) {
        std::cout << json(p).dump(2) << "\n";
        return exit_ok;
    }
    fmt::print("k = {}, omega = {}\n", k, omega);
    fmt::print("essential spectrum: i[{}, {}]\n", p.essential_interval.first, p.essential_interval.second);
    if (p.embedded_eigenvalue)
        fmt::print("embedded eigenvalue: {:.10g}i\n", *p.embedded_eigenvalue);
    for (double v : p.isolated_imaginary)
        fmt::print("isolated eigenvalue: {:.10g}i\n", v);
    if (p.rotational_pair) {
        if (p.rotational_pair->generalized_kernel)
            fmt::print("rotational modes: generalized kernel (omega = 0)\n");
        else
            fmt::print("rotational pair: +-{:.10g}i, eigenfunction Y_1 {:+.10g} Y_3\n", p.rotational_pair->plus,
                       p.rotational_pair->y3_coefficient);
    }
    fmt::print("unstable eigenvalues: {}\n", p.unstable_count);
    return exit_ok;
}

int cmd_planets(bool as_json, const DiscretizationConfig& config) {
    json rows = json::array();
    if (!as_json)
        fmt::print("{:<12} {:>9} {:>11} {:>7} {:>8} {:>10}  {}\n", "body", "R' (km)", "w' (rad/s)", "U' (m/s)",
                   "w table", "w", "3-jet");
    for (const auto& p : planet_table()) {
        const double w = p.recomputed_omega();
        const auto r = classify(w, config);
        if (as_json) {
            rows.push_back({{"record", p}, {"recomputed_omega", w}, {"verdict", verdict_line(r)}, {"overall", r.overall}});
            continue;
        }
        fmt::print("{:<12} {:>9} {:>11.3g} {:>7} {:>8} {:>10.4f}  {}\n", p.name, p.radius_km, p.spin_rad_per_s,
                   p.zonal_speed_m_per_s, p.omega_nondim, w, verdict_line(r));
    }
    if (as_json)
        std::cout << rows.dump(2) << "\n";
    return exit_ok;
}

int cmd_selfcheck(const DiscretizationConfig& config) {
    bool ok = true;
    for (const auto& c : selfcheck(config)) {
        fmt::print("{:<4} {:<38} target {:>14.10g}  value {:>20.15g}  delta {:>10.3e}  tol {:.0e}\n",
                   c.pass() ? "PASS" : "FAIL", c.name, c.target, c.value, c.delta(), c.tolerance);
        ok = ok && c.pass();
    }
    fmt::print("{}\n", ok ? "selfcheck passed" : "selfcheck FAILED");
    return ok ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral stability of the 3-jet zonal flow on the rotating sphere"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "line-based key=value file with discretization settings");
    app.allow_config_extras(CLI::config_extras_mode::error);

    DiscretizationConfig config;
    app.add_option("--basis_size,--basis-size", config.basis_size, "initial Galerkin basis size")
        ->check(CLI::Range(2, 4096));
    app.add_option("--quadrature_nodes,--quadrature-nodes", config.quadrature_nodes,
                   "minimum Gauss nodes (0 = automatic)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--convergence_tol,--convergence-tol", config.convergence_tol, "refinement tolerance on lambda")
        ->check(CLI::PositiveNumber);
    app.add_option("--max_refinements,--max-refinements", config.max_refinements, "basis doublings")
        ->check(CLI::Range(0, 8));

    double omega = 0.0;
    int k = 1;
    bool as_json = false;
    std::string mu_spec, out_path, mode = "all";

    auto* classify_cmd = app.add_subcommand("classify", "stability verdict at one rotation rate");
    classify_cmd->add_option("--omega", omega, "rotation rate")->required();
    classify_cmd->add_flag("--json", as_json);

    auto* curve_cmd = app.add_subcommand("curve", "principal eigenvalue along a mu grid, as CSV");
    curve_cmd->add_option("--k", k)->required()->check(CLI::IsMember({1, 2}));
    curve_cmd->add_option("--omega", omega)->required();
    curve_cmd->add_option("--mu", mu_spec, "a:b:step")->required();
    curve_cmd->add_option("--out", out_path)->required();

    auto* critical_cmd = app.add_subcommand("critical", "critical rotation rates");
    critical_cmd->add_option("--mode", mode)->check(CLI::IsMember({"k1+", "k2+", "k1-", "k2-", "all"}));
    critical_cmd->add_flag("--json", as_json);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "spectral picture of one Fourier mode");
    spectrum_cmd->add_option("--k", k)->required();
    spectrum_cmd->add_option("--omega", omega)->required();
    spectrum_cmd->add_flag("--json", as_json);

    auto* planets_cmd = app.add_subcommand("planets", "rotation parameter of solar and extrasolar bodies");
    planets_cmd->add_flag("--json", as_json);

    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "closed-form and energy-form cross checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*classify_cmd)
            return cmd_classify(omega, as_json, config);
        if (*curve_cmd)
            return cmd_curve(k, omega, mu_spec, out_path, config);
        if (*critical_cmd)
            return cmd_critical(mode, as_json, config);
        if (*spectrum_cmd)
            return cmd_spectrum(k, omega, as_json, config);
        if (*planets_cmd)
            return cmd_planets(as_json, config);
        if (*selfcheck_cmd)
            return cmd_selfcheck(config);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_check_failed;
    }
    return exit_usage;
}
