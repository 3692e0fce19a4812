#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sdg/weil.hpp"

namespace sdg {

namespace detail {

/// Gauss-Jordan inverse of a dense row-major rational matrix.
inline std::vector<Rational> rational_inverse(std::vector<Rational> a, std::size_t n) {
  std::vector<Rational> inv(n * n);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) throw NotInvertible("constant term of matrix is singular");
    if (pivot != col)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a[pivot * n + k], a[col * n + k]);
        std::swap(inv[pivot * n + k], inv[col * n + k]);
      }
    const Rational scale = Rational(1) / a[col * n + col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col * n + k] *= scale;
      inv[col * n + k] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r * n + col] == 0) continue;
      const Rational f = a[r * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Dense matrix of Weil elements over a single algebra.
class WeilMatrix {
 public:
  WeilMatrix(AlgebraPtr alg, std::size_t rows, std::size_t cols)
      : alg_(std::move(alg)), rows_(rows), cols_(cols), entries_(rows * cols, WeilElement(alg_)) {}

  static WeilMatrix identity(AlgebraPtr alg, std::size_t n) {
    WeilMatrix out(std::move(alg), n, n);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = WeilElement(out.alg_, 1);
    return out;
  }

  /// Row-major rational entries lifted to constants.
  static WeilMatrix constant(AlgebraPtr alg, std::size_t rows, std::size_t cols, std::span<const Rational> values) {
    if (values.size() != rows * cols) throw PreconditionError("entry count does not match the shape");
    WeilMatrix out(std::move(alg), rows, cols);
    for (std::size_t k = 0; k < values.size(); ++k) out.entries_[k] = WeilElement(out.alg_, values[k]);
    return out;
  }

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return alg_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] const std::vector<WeilElement>& entries() const noexcept { return entries_; }

  [[nodiscard]] const WeilElement& operator()(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }
  WeilElement& at(std::size_t r, std::size_t c) { return entries_.at(r * cols_ + c); }

  /// Entry-wise image under `f`; the result lives in `target`.
  template <class F>
  [[nodiscard]] WeilMatrix map(const AlgebraPtr& target, F&& f) const {
    WeilMatrix out(target, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = f(entries_[k]);
    return out;
  }

  [[nodiscard]] WeilMatrix substituted(const Substitution& s) const {
    return map(s.target(), [&](const WeilElement& e) { return s(e); });
  }

  WeilMatrix& operator+=(const WeilMatrix& o) {
    check_shape(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  WeilMatrix& operator-=(const WeilMatrix& o) {
    check_shape(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  friend WeilMatrix operator+(WeilMatrix a, const WeilMatrix& b) { return a += b; }
  friend WeilMatrix operator-(WeilMatrix a, const WeilMatrix& b) { return a -= b; }

  friend WeilMatrix operator*(const WeilElement& s, WeilMatrix a) {
    for (auto& e : a.entries_) e = s * e;
    return a;
  }
  friend WeilMatrix operator*(const Rational& s, WeilMatrix a) {
    for (auto& e : a.entries_) e *= s;
    return a;
  }

  friend WeilMatrix operator*(const WeilMatrix& a, const WeilMatrix& b) {
    require_same(a.alg_, b.alg_);
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
    WeilMatrix out(a.alg_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& lhs = a(i, k);
        if (lhs.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += lhs * b(k, j);
      }
    return out;
  }

  friend bool operator==(const WeilMatrix& a, const WeilMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  [[nodiscard]] bool is_identity() const { return square() && *this == identity(alg_, rows_); }

  [[nodiscard]] std::vector<Rational> constant_term() const {
    std::vector<Rational> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.constant());
    return out;
  }

  [[nodiscard]] WeilElement trace() const {
    if (!square()) throw PreconditionError("trace of a non-square matrix");
    WeilElement t(alg_);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Cofactor expansion; sizes here never exceed 3.
  [[nodiscard]] WeilElement determinant() const {
    if (!square()) throw PreconditionError("determinant of a non-square matrix");
    if (rows_ == 0) return WeilElement(alg_, 1);
    if (rows_ == 1) return entries_[0];
    WeilElement det(alg_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(0, c).is_zero()) continue;
      WeilMatrix minor(alg_, rows_ - 1, cols_ - 1);
      for (std::size_t r = 1; r < rows_; ++r)
        for (std::size_t k = 0, t = 0; k < cols_; ++k)
          if (k != c) minor.at(r - 1, t++) = (*this)(r, k);
      WeilElement term = (*this)(0, c) * minor.determinant();
      if (c % 2 == 0)
        det += term;
      else
        det -= term;
    }
    return det;
  }

  /// M^{-1} = sum_k (-M0^{-1} N)^k M0^{-1}, finite because N is nilpotent.
  [[nodiscard]] WeilMatrix inverse() const {
    if (!square()) throw PreconditionError("inverse of a non-square matrix");
    const auto c0 = constant_term();
    const auto inv0 = constant(alg_, rows_, cols_, detail::rational_inverse(c0, rows_));
    WeilMatrix nil = *this - constant(alg_, rows_, cols_, c0);
    const WeilMatrix q = Rational(-1) * (inv0 * nil);
    WeilMatrix sum = identity(alg_, rows_);
    WeilMatrix power = identity(alg_, rows_);
    for (std::size_t k = 0; k <= alg_->generators(); ++k) {
      power = power * q;
      if (power == WeilMatrix(alg_, rows_, cols_)) break;
      sum += power;
    }
    return sum * inv0;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      out += r ? "; " : "";
      for (std::size_t c = 0; c < cols_; ++c) out += (c ? ", " : "") + (*this)(r, c).to_string();
    }
    return out + "]";
  }

 private:
  void check_shape(const WeilMatrix& o) const {
    require_same(alg_, o.alg_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix shape mismatch");
  }

  AlgebraPtr alg_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<WeilElement> entries_;
};

}  // namespace sdg
