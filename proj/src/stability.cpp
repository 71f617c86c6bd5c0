#include "zonal/stability.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "zonal/parallel.hpp"

namespace zonal {

namespace {

// zeros of 15s^2 - 3 + mu on [-1, 1]
std::vector<double> denominator_zeros(double mu) {
    if (mu < -12.0 || mu > 3.0)
        return {};
    const double z = std::sqrt((3.0 - mu) / 15.0);
    if (z == 0.0)
        return {0.0};
    return {-z, z};
}

void check_cancellation(const std::function<double(double)>& phi, double mu, double z) {
    auto ratio = [&](double h) {
        double r = 0.0;
        for (double s : {z - h, z + h}) {
            if (s <= -1.0 || s >= 1.0)
                continue;
            r = std::max(r, std::abs(phi(s) / resonance_denominator(s, mu)));
        }
        return r;
    };
    const double coarse = ratio(1e-3);
    const double fine = ratio(1e-6);
    if (!std::isfinite(fine) || fine > 10.0 * coarse + 1e-300)
        throw SingularIntegrandError("Phi does not cancel the zero of 15s^2-3+mu at s = " + std::to_string(z));
}

bool is_stability_mode(int k) {
    return k == 1 || k == 2;
}

}  // namespace

double energy_form(double c, int k, double omega, const std::function<double(double)>& phi) {
    (void)k;
    const double mu = c - omega;
    std::vector<double> cuts{-1.0, 0.0, 1.0};
    for (double z : denominator_zeros(mu)) {
        check_cancellation(phi, mu, z);
        cuts.push_back(z);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto integrand = [&](double s) {
        const double p = phi(s);
        if (p == 0.0)
            return 0.0;
        const double ratio = p / resonance_denominator(s, mu);
        return (-12.0 * (15.0 * s * s - 3.0) + 2.0 * omega) * ratio * ratio;
    };
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrator.integrate(integrand, cuts[i], cuts[i + 1]);
    return (c - 5.0 * omega / 6.0) * total;
}

double energy_form(double c, int k, double omega, const EigenSolution& phi) {
    return energy_form(c, k, omega, [&](double s) { return evaluate_phi(phi, s); });
}

IndexCounts index_counts(int k, double omega, const std::vector<NeutralMode>& modes) {
    IndexCounts out;
    if (!is_stability_mode(std::abs(k))) {
        out.n_minus_L = 0;
        return out;
    }
    for (const auto& m : modes) {
        if (m.krein_sign == KreinSign::positive)
            continue;
        ++out.k_i_le0;
        if (m.krein_sign == KreinSign::degenerate)
            out.indeterminate = true;
    }
    // the kernel is trivial on (-18, 72); outside it no neutral speed sits at c = 5w/6 either
    (void)omega;
    out.k_0_le0 = 0;
    out.k_c_plus_k_r = out.n_minus_L - out.k_i_le0 - out.k_0_le0;
    if (out.k_c_plus_k_r < 0) {
        out.k_c_plus_k_r = 0;
        out.indeterminate = true;
    }
    return out;
}

IndexCounts index_counts(int k, double omega, const DiscretizationConfig& config, const SearchConfig& search) {
    if (!is_stability_mode(std::abs(k)))
        return index_counts(k, omega, std::vector<NeutralMode>{});
    return index_counts(k, omega, neutral_mode_solve(std::abs(k), omega, config, search).modes);
}

StabilityReport classify(double omega, const DiscretizationConfig& config, const SearchConfig& search) {
    StabilityReport r;
    r.omega = omega;
    if (omega <= -18.0 || omega >= 72.0) {
        r.rayleigh_criterion = true;
        r.index_k1.evaluated = false;
        r.index_k2.evaluated = false;
        return r;
    }

    NeutralSolveResult solved[2];
    parallel_for(2, [&](std::size_t i) {
        solved[i] = neutral_mode_solve(static_cast<int>(i) + 1, omega, config, search);
    });
    r.index_k1 = index_counts(1, omega, solved[0].modes);
    r.index_k2 = index_counts(2, omega, solved[1].modes);
    for (auto& s : solved)
        for (auto& m : s.modes)
            r.neutral_modes.push_back(std::move(m));

    r.verdict_k1 = r.index_k1.k_c_plus_k_r > 0 ? Verdict::unstable : Verdict::stable;
    r.verdict_k2 = r.index_k2.k_c_plus_k_r > 0 ? Verdict::unstable : Verdict::stable;
    // closed endpoints of the instability intervals
    if (omega == 99.0 / 2.0 || omega == -3.0)
        r.verdict_k1 = Verdict::stable;
    if (omega == 69.0 / 2.0)
        r.verdict_k2 = Verdict::stable;

    const int unstable = (r.verdict_k1 == Verdict::unstable) + (r.verdict_k2 == Verdict::unstable);
    r.overall = unstable > 0 ? Overall::linearly_unstable : Overall::spectrally_stable;
    r.dim_Eu = 2 * unstable;
    r.dim_Es = r.dim_Eu;
    return r;
}

Eigen::MatrixXcd linearized_operator_matrix(int k, double omega, int basis_size, bool rotating_frame) {
    if (k == 0)
        throw DomainError("k must be nonzero");
    if (basis_size < 1)
        throw ConfigError("basis_size must be positive");
    const int ak = std::abs(k);
    const auto degrees = parity_degrees(ak, stability_parity(ak), basis_size);
    const int n = basis_size;
    // s P_l = alpha(l+1) P_{l+1} + alpha(l) P_{l-1} for unit-normalized P_l^k
    auto alpha = [&](int l) {
        if (l <= ak)
            return 0.0;
        const double ll = l;
        return std::sqrt((ll * ll - ak * ak) / (4.0 * ll * ll - 1.0));
    };
    Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const int l = degrees[i];
        s2(i, i) = alpha(l + 1) * alpha(l + 1) + alpha(l) * alpha(l);
        if (i + 1 < n) {
            s2(i, i + 1) = alpha(l + 1) * alpha(l + 2);
            s2(i + 1, i) = s2(i, i + 1);
        }
    }
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd inv_lap(n);
    for (int i = 0; i < n; ++i)
        inv_lap(i) = 1.0 / (static_cast<double>(degrees[i]) * (degrees[i] + 1));

    Eigen::MatrixXd b = 15.0 * s2 - 3.0 * id;
    b += (-180.0 * s2 + (36.0 + 2.0 * omega) * id) * inv_lap.asDiagonal();
    if (rotating_frame)
        b -= (omega / 6.0) * id;
    return std::complex<double>(0.0, k) * b.cast<std::complex<double>>();
}

std::complex<double> rayleigh_mismatch(int k, double omega, std::complex<double> beta, double tol) {
    using cd = std::complex<double>;
    using state = std::array<cd, 2>;
    namespace ode = boost::numeric::odeint;
    const double kk = std::abs(k);
    auto q = [&](double s) { return cd(-12.0 * (15.0 * s * s - 3.0) + 2.0 * omega) / (cd(15.0 * s * s - 3.0) - beta); };

    // Phi = (1-s^2)^{k/2} u with u regular at s = 1:
    //   (1-s^2) u'' - 2(k+1) s u' - (q + k(k+1)) u = 0
    const double h = std::min(1e-7, 1e-3 * std::abs(beta - 12.0) / 30.0);
    const cd du1 = -(q(1.0) + kk * (kk + 1.0)) / (2.0 * (kk + 1.0));
    state y{cd(1.0) - h * du1, du1};
    auto rhs = [&](const state& u, state& du, double s) {
        du[0] = u[1];
        du[1] = (2.0 * (kk + 1.0) * s * u[1] + (q(s) + kk * (kk + 1.0)) * u[0]) / ((1.0 - s) * (1.0 + s));
    };
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<state, double, state, double, ode::array_algebra>());
    ode::integrate_adaptive(stepper, rhs, y, 1.0 - h, 0.0, -1e-3);
    // odd Phi vanishes at the equator, even Phi has zero slope there
    return stability_parity(k) == Parity::odd ? y[0] : y[1];
}

namespace {

using cd = std::complex<double>;

struct Box {
    double re_lo, re_hi, im_lo, im_hi;
};

class ZeroCounter {
public:
    ZeroCounter(int k, double omega, double tol) : k_(k), omega_(omega), tol_(tol) {}

    cd f(cd beta) const { return rayleigh_mismatch(k_, omega_, beta, tol_); }

    int winding(const Box& b) const {
        const cd corners[] = {{b.re_lo, b.im_lo}, {b.re_hi, b.im_lo}, {b.re_hi, b.im_hi}, {b.re_lo, b.im_hi}};
        double total = 0.0;
        for (int e = 0; e < 4; ++e) {
            const cd za = corners[e], zb = corners[(e + 1) % 4];
            constexpr int pieces = 24;
            cd prev_z = za, prev_f = f(za);
            for (int i = 1; i <= pieces; ++i) {
                const cd z = za + (zb - za) * (static_cast<double>(i) / pieces);
                const cd fz = f(z);
                total += arg_change(prev_z, z, prev_f, fz, 0);
                prev_z = z;
                prev_f = fz;
            }
        }
        return static_cast<int>(std::lround(total / (2.0 * M_PI)));
    }

    std::optional<cd> secant(cd start, double scale) const {
        cd b0 = start, b1 = start + cd(0.1 * scale, -0.05 * scale);
        cd f0 = f(b0), f1 = f(b1);
        for (int it = 0; it < 100; ++it) {
            if (f1 == f0)
                break;
            const cd b2 = b1 - f1 * (b1 - b0) / (f1 - f0);
            b0 = b1;
            f0 = f1;
            b1 = b2;
            f1 = f(b1);
            if (std::abs(b1 - b0) < 1e-13 * std::max(1.0, std::abs(b1)))
                return b1;
        }
        return std::nullopt;
    }

private:
    double arg_change(cd za, cd zb, cd fa, cd fb, int depth) const {
        const double d = std::arg(fb / fa);
        if (std::abs(d) < 0.4 || depth >= 40)
            return d;
        const cd zm = 0.5 * (za + zb);
        const cd fm = f(zm);
        return arg_change(za, zm, fa, fm, depth + 1) + arg_change(zm, zb, fm, fb, depth + 1);
    }

    int k_;
    double omega_;
    double tol_;
};

void locate(const ZeroCounter& zc, const Box& b, int count, std::vector<cd>& roots) {
    if (count <= 0)
        return;
    const double w = b.re_hi - b.re_lo, h = b.im_hi - b.im_lo;
    if (count == 1 && std::max(w, h) < 1e-2) {
        if (auto r = zc.secant({0.5 * (b.re_lo + b.re_hi), 0.5 * (b.im_lo + b.im_hi)}, std::max(w, h)))
            roots.push_back(*r);
        return;
    }
    if (std::max(w, h) < 1e-9)
        return;
    Box lo = b, hi = b;
    if (w >= h) {
        lo.re_hi = hi.re_lo = b.re_lo + 0.5 * w;
    } else {
        lo.im_hi = hi.im_lo = b.im_lo + 0.5 * h;
    }
    const int n_lo = zc.winding(lo);
    locate(zc, lo, n_lo, roots);
    locate(zc, hi, count - n_lo, roots);
}

}  // namespace

std::vector<UnstableEigenvalue> unstable_spectrum(int k, double omega, const SpectrumFilter& filter) {
    if (!is_stability_mode(k))
        throw DomainError("unstable_spectrum is defined for k = 1, 2");
    if (!(filter.min_real > 0.0) || !(filter.max_growth > filter.min_real))
        throw ConfigError("invalid spectrum filter");
    // sigma = ik beta is unstable when Im beta < 0; the essential range of beta is [-3, 12]
    const Box box{-4.0, 13.0, -filter.max_growth / k, -filter.min_real / k};
    const ZeroCounter fine(k, omega, filter.ode_tol);
    const ZeroCounter coarse(k, omega, 100.0 * filter.ode_tol);

    std::vector<cd> roots;
    locate(fine, box, fine.winding(box), roots);

    std::vector<UnstableEigenvalue> out;
    for (const cd& beta : roots) {
        const cd sigma = cd(0.0, k) * beta;
        if (!(sigma.real() > filter.min_real))
            continue;
        const auto again = coarse.secant(beta, 1e-3);
        const bool persistent = again && std::abs(cd(0.0, k) * *again - sigma) < filter.persistence;
        out.push_back({sigma, persistent});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.value.real() > b.value.real(); });
    return out;
}

int unstable_count(const std::vector<UnstableEigenvalue>& spectrum) {
    return static_cast<int>(std::count_if(spectrum.begin(), spectrum.end(),
                                          [](const auto& e) { return e.persistent; }));
}

std::pair<int, int> trichotomy_dims(double omega, const DiscretizationConfig& config, const SearchConfig& search) {
    int d = 0;
    if (omega > -3.0 && omega < 69.0 / 2.0)
        d = 4;
    else if (omega >= 69.0 / 2.0 && omega < 99.0 / 2.0)
        d = 2;
    else if (omega > -18.0 && omega <= -3.0)
        d = g_of_omega(omega, config, search) < -12.0 ? 2 : 0;
    return {d, d};
}

SpectralPicture spectral_picture(int k, double omega, const DiscretizationConfig& config, const SearchConfig& search) {
    if (k == 0)
        throw DomainError("k must be nonzero");
    SpectralPicture p;
    p.k = k;
    p.omega = omega;
    p.essential_interval = {-3.0 * k, 12.0 * k};
    const int ak = std::abs(k);
    if (ak <= 3) {
        const double e = k * omega / 6.0;
        if (omega > -18.0 && omega < 72.0)
            p.embedded_eigenvalue = e;
        else
            p.isolated_imaginary.push_back(e);
    }
    if (is_stability_mode(ak)) {
        for (const auto& m : neutral_mode_solve(ak, omega, config, search).modes)
            p.isolated_imaginary.push_back(-k * m.mu);
        p.unstable_count = unstable_count(unstable_spectrum(ak, omega));
    }
    if (ak == 1) {
        RotationalPair rp;
        if (omega == 0.0) {
            rp.generalized_kernel = true;
        } else {
            rp.plus = omega;
            rp.minus = -omega;
            rp.y3_coefficient = -(72.0 / omega) * std::sqrt(1.0 / 14.0);
        }
        p.rotational_pair = rp;
    }
    return p;
}

}  // namespace zonal
