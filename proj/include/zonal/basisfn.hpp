#pragma once

#include <stdexcept>
#include <vector>

namespace zonal {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

struct BasisFunction {
    int l = 0;
    int k = 0;
    double normalization = 1.0;  // L2 norm on [-1, 1]
};

// Ferrers function with the Condon-Shortley phase:
//   P_3^1 = (3/2)(1-5s^2)(1-s^2)^{1/2},  P_3^2 = 15s(1-s^2),  P_3^3 = -15(1-s^2)^{3/2}.
double assoc_legendre(int l, int k, double s);

// int_{-1}^{1} (P_l^k)^2 ds = 2(l+k)! / ((2l+1)(l-k)!)
double legendre_norm_sq(int l, int k);

BasisFunction basis_function(int l, int k);

QuadratureRule gauss_legendre(int n);

// Shared immutable rule; repeated requests for the same n reuse one instance.
const QuadratureRule& gauss_legendre_cached(int n);

// Unit-normalized P_l^k / sqrt(legendre_norm_sq(l, k)) for l = k..lmax at one point.
// out[l - k] holds degree l. Stable for large l.
void normalized_legendre_column(int lmax, int k, double s, double* out);

// Gegenbauer solution of (1-s^2)y'' - (2b+1)s y' + n(n+2b) y = 0 in Rodrigues
// normalization (1-s^2)^{1/2-b} d^n/ds^n (1-s^2)^{n+b-1/2}, so that
// C_0 = 1 and C_1 = -(2b+1)s.
double gegenbauer(int n, double beta, double s);

}  // namespace zonal
