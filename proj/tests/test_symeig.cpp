#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "zonal/symeig.hpp"

using namespace zonal;

namespace {

Eigen::MatrixXd random_symmetric(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> d;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            a(i, j) = a(j, i) = d(rng);
    return a;
}

}  // namespace

TEST_CASE("top eigenpairs agree with Eigen's solver") {
    for (int n : {1, 2, 7, 40, 150}) {
        const Eigen::MatrixXd a = random_symmetric(n, 100 + n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
        const int nval = std::min(n, 4);
        const auto top = symmetric_top_eigenpairs(a, nval, std::min(n, 2));
        REQUIRE(top.values.size() == static_cast<std::size_t>(nval));
        for (int i = 0; i < nval; ++i)
            CHECK(top.values[i] == doctest::Approx(ref.eigenvalues()(n - 1 - i)).epsilon(1e-12).scale(10.0));
        for (std::size_t i = 0; i < top.vectors.size(); ++i) {
            const Eigen::VectorXd& v = top.vectors[i];
            CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK((a * v - top.values[i] * v).norm() < 1e-10 * (1.0 + a.norm()));
        }
    }
}

TEST_CASE("tridiagonalization preserves the spectrum") {
    const Eigen::MatrixXd a = random_symmetric(60, 3);
    const auto t = tridiagonalize(a);
    auto vals = tridiagonal_eigenvalues(t.diag, t.offdiag);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    REQUIRE(vals.size() == 60);
    for (int i = 0; i < 60; ++i)
        CHECK(vals[i] == doctest::Approx(ref.eigenvalues()(i)).epsilon(1e-12).scale(10.0));
}

TEST_CASE("tridiagonal eigenvalues of the discrete Laplacian") {
    const int n = 50;
    std::vector<double> d(n, 2.0), e(n - 1, -1.0);
    const auto vals = tridiagonal_eigenvalues(d, e);
    for (int j = 1; j <= n; ++j)
        CHECK(vals[j - 1] == doctest::Approx(2.0 - 2.0 * std::cos(j * M_PI / (n + 1))).epsilon(1e-13).scale(1.0));
}

TEST_CASE("inverse iteration separates a degenerate pair") {
    // block diagonal with a repeated top eigenvalue
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 6);
    a.diagonal() << 5, 5, 1, 2, -3, 0.5;
    const auto top = symmetric_top_eigenpairs(a, 3, 2);
    CHECK(top.values[0] == doctest::Approx(5));
    CHECK(top.values[1] == doctest::Approx(5));
    CHECK(top.values[2] == doctest::Approx(2));
    CHECK(std::abs(top.vectors[0].dot(top.vectors[1])) < 1e-10);
}
