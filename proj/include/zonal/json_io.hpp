#pragma once

#include <json.hpp>
#include <optional>

#include "zonal/planets.hpp"
#include "zonal/stability.hpp"

NLOHMANN_JSON_NAMESPACE_BEGIN
template <typename T>
struct adl_serializer<std::optional<T>> {
    static void to_json(json& j, const std::optional<T>& v) {
        if (v)
            j = *v;
        else
            j = nullptr;
    }
    static void from_json(const json& j, std::optional<T>& v) {
        if (j.is_null())
            v.reset();
        else
            v = j.get<T>();
    }
};
NLOHMANN_JSON_NAMESPACE_END

namespace zonal {

using nlohmann::json;

NLOHMANN_JSON_SERIALIZE_ENUM(Parity, {{Parity::odd, "odd"}, {Parity::even, "even"}})
NLOHMANN_JSON_SERIALIZE_ENUM(ClosedFormKind, {{ClosedFormKind::mu_minus12, "mu_minus12"}, {ClosedFormKind::mu3, "mu3"}})
NLOHMANN_JSON_SERIALIZE_ENUM(KreinSign, {{KreinSign::negative, "negative"},
                                         {KreinSign::positive, "positive"},
                                         {KreinSign::degenerate, "degenerate"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Verdict, {{Verdict::unstable, "unstable"}, {Verdict::stable, "stable"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Overall, {{Overall::linearly_unstable, "linearly_unstable"},
                                       {Overall::spectrally_stable, "spectrally_stable"}})

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(DiscretizationConfig, basis_size, quadrature_nodes, convergence_tol,
                                                max_refinements)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClosedForm, kind, k, omega, lambda, exponent, scale)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EigenSolution, lambda, coeffs, residual, converged, k, parity, degrees,
                                   quadrature_nodes, lower_eigenvalues, degenerate, closed_form)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(NeutralMode, c, k, omega, mu, eigenfunction, dlambda_dmu, krein_sign)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IndexCounts, n_minus_L, k_i_le0, k_0_le0, k_c_plus_k_r, indeterminate, evaluated)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StabilityReport, omega, verdict_k1, verdict_k2, overall, index_k1, index_k2, dim_Eu,
                                   dim_Es, neutral_modes, rayleigh_criterion)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RotationalPair, plus, minus, y3_coefficient, generalized_kernel)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SpectralPicture, k, omega, essential_interval, embedded_eigenvalue,
                                   isolated_imaginary, rotational_pair, unstable_count)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CriticalRates, positive_k1, positive_k2, negative_k1, negative_k2, overall_positive,
                                   overall_negative, negative_k2_lo, negative_k2_hi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PlanetRecord, name, radius_km, spin_rad_per_s, zonal_speed_m_per_s, omega_nondim)

}  // namespace zonal
