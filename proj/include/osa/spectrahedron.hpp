#pragma once

#include <cmath>
#include <span>

#include "osa/eigen_jacobi.hpp"
#include "osa/errors.hpp"
#include "osa/linalg.hpp"
#include "osa/rng.hpp"
#include "osa/simplex_projection.hpp"

namespace osa {

// A point of the relaxed decision set K = {X PSD, tr(X) = 1}.
struct WeightMatrix {
    SymMat matrix;

    int dim() const { return matrix.dim(); }
};

struct SpectrahedronProjection {
    WeightMatrix point;
    EigenDecomposition decomposition;   // projected eigenvalues, shared eigenvectors
};

// Frobenius-nearest point of K: eigendecompose, project the eigenvalue
// vector onto the probability simplex, reassemble. Eigenvalues are
// renormalized so the trace is 1 up to rounding. The returned decomposition
// is the one of the projected point, ready for eigenvector sampling.
inline SpectrahedronProjection project_spectrahedron_full(const SymMat& m) {
    EigenDecomposition ed = sym_eigen(m);
    Vec lam = project_simplex(ed.values);

    double total = 0.0;
    for (double& l : lam) {
        if (l < 0.0) l = 0.0;
        total += l;
    }
    for (double& l : lam) l /= total;

    const int n = m.dim();
    SymMat x(n);
    for (int k = 0; k < n; ++k) {
        if (lam[k] == 0.0) continue;
        const Vec& v = ed.vectors[k];
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double add = lam[k] * v[i] * v[j];
                x(i, j) += add;
                if (i != j) x(j, i) += add;
            }
    }
    ed.values = std::move(lam);
    return SpectrahedronProjection{WeightMatrix{std::move(x)}, std::move(ed)};
}

inline WeightMatrix project_spectrahedron(const SymMat& m) {
    return project_spectrahedron_full(m).point;
}

namespace detail {

// Flip so the first coordinate with |v_i| > 1e-12 is positive; makes the
// sampled vector reproducible across equivalent decompositions.
inline void canonical_sign(Vec& v) {
    for (double c : v) {
        if (std::abs(c) > 1e-12) {
            if (c < 0.0)
                for (double& x : v) x = -x;
            return;
        }
    }
}

}  // namespace detail

// Draw eigenvector i with probability lambda_i from a precomputed
// decomposition. Eigenvalues are clipped at 0 and renormalized first.
inline Vec sample_eigvec(const EigenDecomposition& ed, Rng& rng) {
    Vec probs = ed.values;
    double total = 0.0;
    for (double& p : probs) {
        if (p < 0.0) p = 0.0;
        total += p;
    }
    if (total < 1e-12) throw NumericalFault("sample_eigvec: degenerate matrix, all eigenvalues ~ 0");

    const std::size_t idx = rng.categorical(probs);
    Vec v = ed.vectors[idx];
    const double nrm = norm2(v);
    for (double& c : v) c /= nrm;
    detail::canonical_sign(v);
    return v;
}

inline Vec sample_eigvec(const WeightMatrix& x, Rng& rng) {
    return sample_eigvec(sym_eigen(x.matrix), rng);
}

}  // namespace osa
