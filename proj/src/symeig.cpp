#include "zonal/symeig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zonal {

Tridiagonal tridiagonalize(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n)
        throw std::invalid_argument("tridiagonalize: matrix must be square");
    Eigen::MatrixXd work = a;
    Tridiagonal t;
    t.reflectors = Eigen::MatrixXd::Zero(n, std::max<Eigen::Index>(n - 2, 0));
    t.diag.resize(n);
    t.offdiag.assign(n > 0 ? n - 1 : 0, 0.0);

    Eigen::VectorXd v, p;
    for (Eigen::Index j = 0; j + 2 < n; ++j) {
        const Eigen::Index m = n - j - 1;
        v = work.col(j).tail(m);
        const double xnorm = v.norm();
        if (xnorm == 0.0)
            continue;
        const double alpha = v(0) >= 0.0 ? -xnorm : xnorm;
        v(0) -= alpha;
        v.normalize();
        auto sub = work.bottomRightCorner(m, m);
        p.noalias() = 2.0 * (sub.selfadjointView<Eigen::Lower>() * v);
        p -= v.dot(p) * v;
        sub.selfadjointView<Eigen::Lower>().rankUpdate(v, p, -1.0);
        t.offdiag[j] = alpha;
        t.reflectors.col(j).tail(m) = v;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        t.diag[i] = work(i, i);
    if (n >= 2)
        t.offdiag[n - 2] = work(n - 1, n - 2);
    return t;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    e.resize(n, 0.0);
    if (n > 0)
        e[n - 1] = 0.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd)
                    break;
            }
            if (m == l)
                break;
            if (++iter > 60)
                throw std::runtime_error("tridiagonal_eigenvalues: QL iteration did not converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            int i = m - 1;
            for (; i >= l; --i) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (r == 0.0 && i >= l)
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

Eigen::VectorXd tridiagonal_eigenvector(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag, double lambda,
                                        const std::vector<Eigen::VectorXd>& against) {
    const int n = static_cast<int>(diag.size());
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    if (n == 1)
        return x;

    double tnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0)
            row += std::abs(offdiag[i - 1]);
        if (i + 1 < n)
            row += std::abs(offdiag[i]);
        tnorm = std::max(tnorm, row);
    }
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(tnorm, 1.0);
    const double shift = lambda + tiny;

    // LU of T - shift with partial pivoting; U has two superdiagonals.
    std::vector<double> dl(offdiag.begin(), offdiag.begin() + (n - 1));
    std::vector<double> du = dl;
    std::vector<double> du2(n, 0.0);
    std::vector<double> d(n);
    std::vector<char> piv(n, 0);
    for (int i = 0; i < n; ++i)
        d[i] = diag[i] - shift;
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0)
                d[i] = tiny;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            piv[i] = 1;
        }
    }
    if (d[n - 1] == 0.0)
        d[n - 1] = tiny;

    auto solve = [&](Eigen::VectorXd& b) {
        for (int i = 0; i + 1 < n; ++i) {
            if (piv[i]) {
                const double temp = b(i);
                b(i) = b(i + 1);
                b(i + 1) = temp - dl[i] * b(i);
            } else {
                b(i + 1) -= dl[i] * b(i);
            }
        }
        b(n - 1) /= d[n - 1];
        b(n - 2) = (b(n - 2) - du[n - 2] * b(n - 1)) / d[n - 2];
        for (int i = n - 3; i >= 0; --i)
            b(i) = (b(i) - du[i] * b(i + 1) - du2[i] * b(i + 2)) / d[i];
    };

    for (int i = 0; i < n; ++i)
        x(i) = 1.0 + 0.1 * std::sin(1.0 + i);
    for (int it = 0; it < 4; ++it) {
        solve(x);
        for (const auto& q : against)
            x -= q.dot(x) * q;
        const double norm = x.norm();
        if (norm == 0.0 || !std::isfinite(norm))
            throw std::runtime_error("tridiagonal_eigenvector: inverse iteration broke down");
        x /= norm;
    }
    return x;
}

Eigen::VectorXd back_transform(const Tridiagonal& t, Eigen::VectorXd y) {
    const Eigen::Index n = y.size();
    for (Eigen::Index j = t.reflectors.cols() - 1; j >= 0; --j) {
        const Eigen::Index m = n - j - 1;
        const auto v = t.reflectors.col(j).tail(m);
        y.tail(m) -= (2.0 * v.dot(y.tail(m))) * v;
    }
    return y;
}

TopEigenpairs symmetric_top_eigenpairs(const Eigen::MatrixXd& a, int nval, int nvec) {
    const auto t = tridiagonalize(a);
    auto values = tridiagonal_eigenvalues(t.diag, t.offdiag);
    std::reverse(values.begin(), values.end());
    nval = std::min<int>(nval, static_cast<int>(values.size()));
    nvec = std::min(nvec, nval);

    TopEigenpairs out;
    out.values.assign(values.begin(), values.begin() + nval);
    std::vector<Eigen::VectorXd> found;
    for (int i = 0; i < nvec; ++i) {
        auto y = tridiagonal_eigenvector(t.diag, t.offdiag, values[i], found);
        found.push_back(y);
        out.vectors.push_back(back_transform(t, std::move(y)));
    }
    return out;
}

}  // namespace zonal
