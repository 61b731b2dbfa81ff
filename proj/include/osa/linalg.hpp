#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "osa/errors.hpp"

namespace osa {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    detail::require(a.size() == b.size(), "dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(const Vec& a, const Vec& b) {
    detail::require(a.size() == b.size(), "vec add: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    detail::require(a.size() == b.size(), "vec sub: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator*(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

// a += s * b
inline void axpy(double s, std::span<const double> b, Vec& a) {
    detail::require(a.size() == b.size(), "axpy: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

inline bool all_finite(std::span<const double> a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

// Dense symmetric matrix, row-major full storage. Construction symmetrizes
// nothing; callers either fill both triangles or use set_sym.
class SymMat {
  public:
    SymMat() = default;
    explicit SymMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    static SymMat identity(int n) {
        SymMat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    // v v^T
    static SymMat outer(std::span<const double> v) {
        SymMat m(static_cast<int>(v.size()));
        for (int i = 0; i < m.n_; ++i)
            for (int j = 0; j < m.n_; ++j) m(i, j) = v[i] * v[j];
        return m;
    }

    static SymMat from_flat(std::span<const double> flat) {
        const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(flat.size()))));
        detail::require(static_cast<std::size_t>(n) * n == flat.size(),
                        "from_flat: length is not a perfect square");
        SymMat m(n);
        m.a_.assign(flat.begin(), flat.end());
        return m;
    }

    int dim() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    void set_sym(int i, int j, double v) {
        (*this)(i, j) = v;
        (*this)(j, i) = v;
    }

    const Vec& flat() const { return a_; }

    double trace() const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += (*this)(i, i);
        return s;
    }

    double frobenius() const { return norm2(a_); }

    // max |M(i,j) - M(j,i)|
    double asymmetry() const {
        double worst = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
        return worst;
    }

    void symmetrize() {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
                (*this)(i, j) = v;
                (*this)(j, i) = v;
            }
    }

    bool finite() const { return all_finite(a_); }

    SymMat& operator+=(const SymMat& o) {
        detail::require(n_ == o.n_, "matrix add: dimension mismatch");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }

    SymMat& operator-=(const SymMat& o) {
        detail::require(n_ == o.n_, "matrix sub: dimension mismatch");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }

    SymMat& operator*=(double s) {
        for (double& v : a_) v *= s;
        return *this;
    }

    friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
    friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
    friend SymMat operator*(double s, SymMat a) { return a *= s; }

    Vec multiply(std::span<const double> x) const {
        detail::require(static_cast<int>(x.size()) == n_, "matvec: dimension mismatch");
        Vec y(n_, 0.0);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    double quadratic_form(std::span<const double> x) const { return dot(multiply(x), x); }

    // Frobenius inner product <A, B> = sum_ij A(i,j) B(i,j)
    double inner(const SymMat& o) const {
        detail::require(n_ == o.n_, "inner: dimension mismatch");
        return dot(a_, o.a_);
    }

  private:
    int n_ = 0;
    Vec a_;
};

inline double frobenius_distance(const SymMat& a, const SymMat& b) { return (a - b).frobenius(); }

}  // namespace osa
