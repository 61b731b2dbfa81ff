#pragma once

#include <cmath>
#include <span>

#include "osa/errors.hpp"
#include "osa/linalg.hpp"
#include "osa/rng.hpp"
#include "osa/spectrahedron.hpp"

namespace osa {

// Convex decision set with Euclidean projection. Decisions are plain
// vectors; the spectrahedron variant works on flattened n x n symmetric
// matrices, where the l2 norm of the flat vector is the Frobenius norm.
class DecisionSet {
  public:
    enum class Kind { Ball, Simplex, Spectrahedron };

    static DecisionSet ball(int dim, double radius = 1.0) {
        if (dim < 1 || radius <= 0.0) throw ParameterError("ball: need dim >= 1, radius > 0");
        return DecisionSet(Kind::Ball, dim, radius, 0);
    }

    static DecisionSet simplex(int dim) {
        if (dim < 1) throw ParameterError("simplex: need dim >= 1");
        return DecisionSet(Kind::Simplex, dim, 0.0, 0);
    }

    static DecisionSet spectrahedron(int n) {
        if (n < 1) throw ParameterError("spectrahedron: need n >= 1");
        return DecisionSet(Kind::Spectrahedron, n * n, 0.0, n);
    }

    Kind kind() const { return kind_; }
    int dimension() const { return dim_; }
    int matrix_dim() const { return matrix_n_; }

    double diameter() const {
        switch (kind_) {
            case Kind::Ball: return 2.0 * radius_;
            case Kind::Simplex: return std::sqrt(2.0);
            case Kind::Spectrahedron: return std::sqrt(2.0);
        }
        return 0.0;
    }

    Vec project(std::span<const double> p) const {
        detail::require(static_cast<int>(p.size()) == dim_, "project: dimension mismatch");
        detail::require(all_finite(p), "project: non-finite input");
        switch (kind_) {
            case Kind::Ball: {
                const double n = norm2(p);
                Vec r(p.begin(), p.end());
                if (n > radius_)
                    for (double& c : r) c *= radius_ / n;
                return r;
            }
            case Kind::Simplex: return project_simplex(p);
            case Kind::Spectrahedron: {
                SymMat m = SymMat::from_flat(p);
                m.symmetrize();
                return project_spectrahedron(m).matrix.flat();
            }
        }
        return {};
    }

    Vec centroid() const {
        Vec c(dim_, 0.0);
        if (kind_ == Kind::Simplex)
            for (double& v : c) v = 1.0 / dim_;
        if (kind_ == Kind::Spectrahedron)
            for (int i = 0; i < matrix_n_; ++i) c[static_cast<std::size_t>(i) * matrix_n_ + i] = 1.0 / matrix_n_;
        return c;
    }

    // Random member, used for gradient-bound calibration and test oracles.
    Vec sample(Rng& rng) const {
        switch (kind_) {
            case Kind::Ball: {
                Vec v(dim_);
                for (double& c : v) c = rng.normal();
                const double n = norm2(v);
                const double r = radius_ * std::pow(rng.uniform(), 1.0 / dim_);
                for (double& c : v) c *= (n > 0.0 ? r / n : 0.0);
                return v;
            }
            case Kind::Simplex: {
                Vec v(dim_);
                double total = 0.0;
                for (double& c : v) {
                    double u = rng.uniform();
                    while (u <= 0.0) u = rng.uniform();
                    c = -std::log(u);
                    total += c;
                }
                for (double& c : v) c /= total;
                return v;
            }
            case Kind::Spectrahedron: {
                SymMat g(matrix_n_);
                for (int i = 0; i < matrix_n_; ++i)
                    for (int j = 0; j < matrix_n_; ++j) g(i, j) = rng.normal();
                SymMat x(matrix_n_);
                for (int i = 0; i < matrix_n_; ++i)
                    for (int j = 0; j < matrix_n_; ++j) {
                        double s = 0.0;
                        for (int k = 0; k < matrix_n_; ++k) s += g(i, k) * g(j, k);
                        x(i, j) = s;
                    }
                const double tr = x.trace();
                x *= 1.0 / tr;
                return x.flat();
            }
        }
        return {};
    }

  private:
    DecisionSet(Kind kind, int dim, double radius, int matrix_n)
        : kind_(kind), dim_(dim), radius_(radius), matrix_n_(matrix_n) {}

    Kind kind_;
    int dim_;
    double radius_;
    int matrix_n_;
};

}  // namespace osa
