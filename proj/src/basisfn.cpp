#include "zonal/basisfn.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace zonal {

namespace {

void check_order(int l, int k) {
    if (k < 0 || l < k)
        throw DomainError("associated Legendre: need 0 <= k <= l, got l=" + std::to_string(l) +
                          ", k=" + std::to_string(k));
}

// (2k-1)!! (1-s^2)^{k/2} with the (-1)^k phase.
double sectoral(int k, double s) {
    const double root = std::sqrt((1.0 - s) * (1.0 + s));
    double p = 1.0;
    for (int i = 1; i <= k; ++i)
        p *= -(2.0 * i - 1.0) * root;
    return p;
}

}  // namespace

double assoc_legendre(int l, int k, double s) {
    check_order(l, k);
    if (!(std::abs(s) <= 1.0))
        throw DomainError("associated Legendre: |s| must be <= 1");

    double pmm = sectoral(k, s);
    if (l == k)
        return pmm;
    double pm1 = s * (2.0 * k + 1.0) * pmm;
    for (int n = k + 2; n <= l; ++n) {
        const double pn = ((2.0 * n - 1.0) * s * pm1 - (n + k - 1.0) * pmm) / (n - k);
        pmm = pm1;
        pm1 = pn;
    }
    return pm1;
}

double legendre_norm_sq(int l, int k) {
    check_order(l, k);
    double ratio = 1.0;  // (l+k)! / (l-k)!
    for (int j = l - k + 1; j <= l + k; ++j)
        ratio *= j;
    return 2.0 * ratio / (2.0 * l + 1.0);
}

BasisFunction basis_function(int l, int k) {
    return {l, k, std::sqrt(legendre_norm_sq(l, k))};
}

void normalized_legendre_column(int lmax, int k, double s, double* out) {
    check_order(lmax, k);
    const double root = std::sqrt((1.0 - s) * (1.0 + s));
    // P^k_k / ||P^k_k||: (-1)^k sqrt((2k+1)/2 * (2k-1)!!/(2k)!!) root^k
    double p = std::sqrt(0.5);
    for (int i = 1; i <= k; ++i)
        p *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * root;
    out[0] = p;
    if (lmax == k)
        return;
    out[1] = std::sqrt(2.0 * k + 3.0) * s * p;
    const double k2 = static_cast<double>(k) * k;
    for (int l = k + 2; l <= lmax; ++l) {
        const double ll = static_cast<double>(l) * l;
        const double a = std::sqrt((4.0 * ll - 1.0) / (ll - k2));
        const double b = std::sqrt((2.0 * l + 1.0) * ((l - 1.0) * (l - 1.0) - k2) /
                                   ((2.0 * l - 3.0) * (ll - k2)));
        out[l - k] = a * s * out[l - k - 1] - b * out[l - k - 2];
    }
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1)
        throw DomainError("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi's estimate of the i-th largest root
        double x = (1.0 - (n - 1.0) / (8.0 * n * n * n)) *
                   std::cos(std::numbers::pi * (4.0 * i + 3.0) / (4.0 * n + 2.0));
        double dp = 0.0;
        for (int it = 0; it < 20; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 5e-16)
                break;
        }
        // recompute the derivative at the converged root for the weight
        double p0 = 1.0;
        double p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

const QuadratureRule& gauss_legendre_cached(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<const QuadratureRule>(gauss_legendre(n));
    return *slot;
}

double gegenbauer(int n, double beta, double s) {
    if (n < 0)
        throw DomainError("gegenbauer: n must be >= 0");
    if (!(beta > 0.0))
        throw DomainError("gegenbauer: beta must be > 0");
    // standard C_n^beta by the three-term recurrence, then rescale to Rodrigues form
    double c0 = 1.0;
    double c1 = 2.0 * beta * s;
    if (n == 0)
        return 1.0;
    double scale = -(2.0 * beta + 1.0) / (2.0 * beta);
    for (int m = 2; m <= n; ++m) {
        const double c2 = (2.0 * s * (m + beta - 1.0) * c1 - (m + 2.0 * beta - 2.0) * c0) / m;
        c0 = c1;
        c1 = c2;
        scale *= -2.0 * m * (m + beta - 0.5) / (m + 2.0 * beta - 1.0);
    }
    return scale * c1;
}

}  // namespace zonal
