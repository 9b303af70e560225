#pragma once

// Dense real/complex vectors and matrices, plus the realification map that
// turns a complex unitary acting on 2^L amplitudes into a real orthogonal
// matrix acting on 2^(L+1) reals.
//
// Packing convention: complex amplitude a_k lives in real slots
// (2k, 2k+1) as (Re a_k, Im a_k).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlmq/errors.hpp"

namespace dlmq {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kUnitNormTolerance = 1e-9;
inline constexpr double kUnitaryTolerance = 1e-12;
inline constexpr double kDegenerateNorm = 1e-12;
inline constexpr std::size_t kMaxRealDim = 512;

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

/// Real vector whose Euclidean norm is 1 (within kUnitNormTolerance) by
/// construction. Only `normalize` and the trusted factory create one.
class RealUnitVector {
 public:
  RealUnitVector() = default;

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> components() const { return c_; }
  const RealVector& vector() const { return c_; }

  /// Wraps `v` without rescaling. Throws if ‖v‖ is not 1 within tolerance.
  static RealUnitVector checked(RealVector v) {
    const double n = norm(v);
    if (v.empty() || std::abs(n - 1.0) > kUnitNormTolerance)
      throw PreconditionError("RealUnitVector: norm " + std::to_string(n) +
                              " is not 1");
    RealUnitVector u;
    u.c_ = std::move(v);
    return u;
  }

  friend RealUnitVector normalize(std::span<const double> v);

 private:
  RealVector c_;
};

/// Rescales `v` to unit length. Throws DegenerateInputError when ‖v‖ ≤ 1e-12.
inline RealUnitVector normalize(std::span<const double> v) {
  const double n = norm(v);
  if (!(n > kDegenerateNorm))
    throw DegenerateInputError("normalize: vector norm " + std::to_string(n) +
                               " is too small");
  RealUnitVector u;
  u.c_.assign(v.begin(), v.end());
  for (double& x : u.c_) x /= n;
  return u;
}

inline RealUnitVector normalize(std::initializer_list<double> v) {
  return normalize(std::span<const double>(v.begin(), v.size()));
}

/// Square dense matrix, row-major.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, T{}) {}
  SquareMatrix(std::size_t n, std::initializer_list<T> rows) : SquareMatrix(n) {
    if (rows.size() != n * n)
      throw DimensionError("SquareMatrix: initializer has wrong size");
    std::copy(rows.begin(), rows.end(), a_.begin());
  }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return a_[r * n_ + c];
  }
  std::span<const T> row(std::size_t r) const {
    return std::span<const T>(a_).subspan(r * n_, n_);
  }

  friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    if (x.n_ != y.n_) throw DimensionError("matrix product: size mismatch");
    SquareMatrix z(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        const T xik = x(i, k);
        if (xik == T{}) continue;
        for (std::size_t j = 0; j < x.n_; ++j) z(i, j) += xik * y(k, j);
      }
    return z;
  }

  friend std::vector<T> operator*(const SquareMatrix& m,
                                  const std::vector<T>& v) {
    if (m.n_ != v.size()) throw DimensionError("matrix-vector: size mismatch");
    std::vector<T> out(m.n_, T{});
    for (std::size_t i = 0; i < m.n_; ++i) {
      T s{};
      for (std::size_t j = 0; j < m.n_; ++j) s += m(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<Complex>;

inline ComplexMatrix adjoint(const ComplexMatrix& u) {
  ComplexMatrix a(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < u.dim(); ++j) a(j, i) = std::conj(u(i, j));
  return a;
}

inline RealMatrix transpose(const RealMatrix& m) {
  RealMatrix t(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) t(j, i) = m(i, j);
  return t;
}

/// Largest entrywise deviation of M†M from the identity.
inline double unitarity_defect(const ComplexMatrix& u) {
  const std::size_t n = u.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += std::conj(u(k, i)) * u(k, j);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

inline double orthogonality_defect(const RealMatrix& m) {
  const std::size_t n = m.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += m(k, i) * m(k, j);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTolerance) {
  return u.dim() > 0 && unitarity_defect(u) <= tol;
}

inline bool is_orthogonal(const RealMatrix& m, double tol = 1e-10) {
  return m.dim() > 0 && orthogonality_defect(m) <= tol;
}

/// Real orthogonal matrix of twice the dimension: each entry a+bi becomes the
/// block [[a,-b],[b,a]].
inline RealMatrix realify(const ComplexMatrix& u) {
  if (u.dim() == 0) throw DimensionError("realify: empty matrix");
  if (2 * u.dim() > kMaxRealDim)
    throw DimensionError("realify: dimension exceeds " +
                         std::to_string(kMaxRealDim));
  if (!is_unitary(u))
    throw PreconditionError("realify: matrix is not unitary (defect " +
                            std::to_string(unitarity_defect(u)) + ")");
  const std::size_t n = u.dim();
  RealMatrix r(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double a = u(i, j).real();
      const double b = u(i, j).imag();
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  return r;
}

inline RealVector realify(std::span<const Complex> a) {
  RealVector v(2 * a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    v[2 * k] = a[k].real();
    v[2 * k + 1] = a[k].imag();
  }
  return v;
}

inline ComplexVector complexify(std::span<const double> v) {
  if (v.size() % 2 != 0) throw DimensionError("complexify: odd length");
  ComplexVector a(v.size() / 2);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = {v[2 * k], v[2 * k + 1]};
  return a;
}

/// Compressed-row copy of a matrix for repeated products; realified gate
/// embeddings have at most a handful of nonzeros per row.
class SparseRows {
 public:
  SparseRows() = default;
  explicit SparseRows(const RealMatrix& m) : n_(m.dim()) {
    offsets_.reserve(n_ + 1);
    offsets_.push_back(0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j)
        if (m(i, j) != 0.0) {
          cols_.push_back(j);
          vals_.push_back(m(i, j));
        }
      offsets_.push_back(cols_.size());
    }
  }

  std::size_t dim() const { return n_; }

  void apply(std::span<const double> in, std::span<double> out) const {
    if (in.size() != n_ || out.size() != n_)
      throw DimensionError("SparseRows::apply: size mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
        s += vals_[k] * in[cols_[k]];
      out[i] = s;
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

}  // namespace dlmq
