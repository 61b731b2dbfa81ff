#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"

namespace osa {

struct EigenDecomposition {
    Vec values;                    // descending
    std::vector<Vec> vectors;      // vectors[i] is the unit eigenvector for values[i]

    SymMat reconstruct() const {
        SymMat m(static_cast<int>(values.size()));
        for (std::size_t k = 0; k < values.size(); ++k) {
            const Vec& v = vectors[k];
            for (int i = 0; i < m.dim(); ++i)
                for (int j = 0; j < m.dim(); ++j) m(i, j) += values[k] * v[i] * v[j];
        }
        return m;
    }
};

namespace detail {

inline double offdiag_frobenius(const SymMat& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

}  // namespace detail

// Symmetric eigendecomposition by cyclic Jacobi rotations (row-cyclic sweep
// order, so the result is deterministic). Converged when the off-diagonal
// Frobenius mass drops below tol * ||M||_F.
inline EigenDecomposition sym_eigen(const SymMat& m, double tol = 1e-12, int max_sweeps = 100) {
    const int n = m.dim();
    detail::require(n >= 1, "sym_eigen: empty matrix");
    if (!m.finite()) throw NumericalFault("sym_eigen: non-finite entries");
    detail::require(m.asymmetry() <= 1e-12 * std::max(1.0, m.frobenius()),
                    "sym_eigen: matrix is not symmetric");

    SymMat a = m;
    a.symmetrize();
    std::vector<Vec> rot(n, Vec(n, 0.0));  // rot[r][c]: accumulated rotations, columns = eigenvectors
    for (int i = 0; i < n; ++i) rot[i][i] = 1.0;

    const double scale = m.frobenius();
    if (scale > 0.0) {
        int sweep = 0;
        while (detail::offdiag_frobenius(a) > tol * scale) {
            if (++sweep > max_sweeps) throw NumericalFault("sym_eigen: no convergence after sweep cap");
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const double apq = a(p, q);
                    if (apq == 0.0) continue;
                    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    const double tau = s / (1.0 + c);

                    a(p, p) -= t * apq;
                    a(q, q) += t * apq;
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    for (int r = 0; r < n; ++r) {
                        if (r != p && r != q) {
                            const double arp = a(r, p), arq = a(r, q);
                            a(r, p) = arp - s * (arq + tau * arp);
                            a(p, r) = a(r, p);
                            a(r, q) = arq + s * (arp - tau * arq);
                            a(q, r) = a(r, q);
                        }
                        const double vrp = rot[r][p], vrq = rot[r][q];
                        rot[r][p] = vrp - s * (vrq + tau * vrp);
                        rot[r][q] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

    EigenDecomposition ed;
    ed.values.resize(n);
    ed.vectors.assign(n, Vec(n));
    for (int k = 0; k < n; ++k) {
        ed.values[k] = a(order[k], order[k]);
        for (int r = 0; r < n; ++r) ed.vectors[k][r] = rot[r][order[k]];
    }
    return ed;
}

}  // namespace osa
