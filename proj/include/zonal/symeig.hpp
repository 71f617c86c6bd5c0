#pragma once

#include <Eigen/Dense>
#include <vector>

namespace zonal {

// Householder reduction Q^T A Q = T of a symmetric matrix. The reflectors are
// kept (column j holds the unit vector acting on rows j+1..n-1) so that
// eigenvectors of T can be mapped back without forming Q.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;  // offdiag[i] couples rows i and i+1
    Eigen::MatrixXd reflectors;
};

Tridiagonal tridiagonalize(const Eigen::MatrixXd& a);

// All eigenvalues of a symmetric tridiagonal matrix by implicit QL, ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag);

// Unit eigenvector of T for a computed eigenvalue, by inverse iteration.
// Vectors in `against` are projected out (for clustered eigenvalues).
Eigen::VectorXd tridiagonal_eigenvector(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag, double lambda,
                                        const std::vector<Eigen::VectorXd>& against = {});

// y -> Q y
Eigen::VectorXd back_transform(const Tridiagonal& t, Eigen::VectorXd y);

struct TopEigenpairs {
    std::vector<double> values;        // descending
    std::vector<Eigen::VectorXd> vectors;  // for the first `nvec` values
};

// The `nval` largest eigenvalues of a symmetric matrix and eigenvectors for the
// `nvec` largest of them.
TopEigenpairs symmetric_top_eigenpairs(const Eigen::MatrixXd& a, int nval, int nvec);

}  // namespace zonal
