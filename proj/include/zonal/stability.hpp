#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "zonal/critical.hpp"

namespace zonal {

class SingularIntegrandError : public DomainError {
public:
    using DomainError::DomainError;
};

// (c - 5w/6) int (-12(15s^2-3)+2w) / (15s^2-3+mu)^2 |Phi|^2 ds with mu = c - w
double energy_form(double c, int k, double omega, const std::function<double(double)>& phi);
double energy_form(double c, int k, double omega, const EigenSolution& phi);

struct IndexCounts {
    int n_minus_L = 1;
    int k_i_le0 = 0;
    int k_0_le0 = 0;
    int k_c_plus_k_r = 0;
    bool indeterminate = false;  // a neutral mode had a degenerate Krein sign
    bool evaluated = true;       // false when the Rayleigh criterion decided without counting

    bool operator==(const IndexCounts&) const = default;
};

IndexCounts index_counts(int k, double omega, const std::vector<NeutralMode>& modes);
IndexCounts index_counts(int k, double omega, const DiscretizationConfig& config,
                         const SearchConfig& search = {});

enum class Verdict { unstable, stable };
enum class Overall { linearly_unstable, spectrally_stable };

struct StabilityReport {
    double omega = 0.0;
    Verdict verdict_k1 = Verdict::stable;
    Verdict verdict_k2 = Verdict::stable;
    Overall overall = Overall::spectrally_stable;
    IndexCounts index_k1;
    IndexCounts index_k2;
    int dim_Eu = 0;
    int dim_Es = 0;
    std::vector<NeutralMode> neutral_modes;
    bool rayleigh_criterion = false;  // decided by the fast path |omega| outside (-18, 72)

    bool operator==(const StabilityReport&) const = default;
};

StabilityReport classify(double omega, const DiscretizationConfig& config, const SearchConfig& search = {});

struct RotationalPair {
    double plus = 0.0;   // imaginary part of the eigenvalue +i omega
    double minus = 0.0;  // and of -i omega
    double y3_coefficient = 0.0;  // eigenfunction Y_1 + y3_coefficient Y_3
    bool generalized_kernel = false;  // omega = 0: Y_1 lies in the generalized kernel instead

    bool operator==(const RotationalPair&) const = default;
};

// Imaginary eigenvalues are stored by their imaginary parts.
struct SpectralPicture {
    int k = 1;
    double omega = 0.0;
    std::pair<double, double> essential_interval;
    std::optional<double> embedded_eigenvalue;
    std::vector<double> isolated_imaginary;
    std::optional<RotationalPair> rotational_pair;
    int unstable_count = 0;

    bool operator==(const SpectralPicture&) const = default;
};

SpectralPicture spectral_picture(int k, double omega, const DiscretizationConfig& config,
                                 const SearchConfig& search = {});

struct SpectrumFilter {
    double min_real = 1e-4;
    double persistence = 1e-3;
    double ode_tol = 1e-10;     // shooting tolerance; persistence compares against 100x looser
    double max_growth = 20.0;   // search box depth in Re(sigma)/k

    bool operator==(const SpectrumFilter&) const = default;
};

// Matrix of L_w (or of J_w L when rotating_frame is set) on the k-th Fourier mode,
// acting on vorticity coefficients in the parity subspace.
Eigen::MatrixXcd linearized_operator_matrix(int k, double omega, int basis_size, bool rotating_frame = false);

struct UnstableEigenvalue {
    std::complex<double> value;
    bool persistent = false;  // reproduced within the persistence threshold at the looser tolerance
};

// Mismatch of the Rayleigh equation (Psi_0' - beta) Delta_k Phi = (Upsilon_0' + 2w) Phi shot from
// the pole s = 1 to the equator; zero exactly when sigma = ik beta is an eigenvalue of L_w.
std::complex<double> rayleigh_mismatch(int k, double omega, std::complex<double> beta, double tol = 1e-10);

std::vector<UnstableEigenvalue> unstable_spectrum(int k, double omega, const SpectrumFilter& filter = {});
int unstable_count(const std::vector<UnstableEigenvalue>& spectrum);

std::pair<int, int> trichotomy_dims(double omega, const DiscretizationConfig& config,
                                    const SearchConfig& search = {});

}  // namespace zonal
