#pragma once

// Exact linear algebra: dense matrices over a field and incremental echelon
// forms of polynomial spans.

#include "quadgb/polynomial.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace quadgb {

template <Field F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Gauss-Jordan elimination in place; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t p = row;
      while (p < rows_ && field_.is_zero((*this)(p, col))) ++p;
      if (p == rows_) continue;
      swap_rows(p, row);
      auto inv = field_.inv((*this)(row, col));
      for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) = field_.mul((*this)(row, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row || field_.is_zero((*this)(i, col))) continue;
        auto c = (*this)(i, col);
        for (std::size_t j = col; j < cols_; ++j)
          if (!field_.is_zero((*this)(row, j))) (*this)(i, j) = field_.sub((*this)(i, j), field_.mul(c, (*this)(row, j)));
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m(*this);
    return m.rref().size();
  }

  /// Basis of {v : M v = 0}.
  std::vector<std::vector<value_type>> kernel() const {
    Matrix m(*this);
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<value_type>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<value_type> v(cols_, field_.zero());
      v[free] = field_.one();
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = field_.neg(m(r, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) return std::nullopt;
    Matrix aug(field_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = field_.one();
    }
    auto pivots = aug.rref();
    if (pivots.size() < rows_ || pivots.back() >= cols_) return std::nullopt;
    Matrix inv(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (field_.is_zero((*this)(i, k))) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = field_.add(r(i, j), field_.mul((*this)(i, k), o(k, j)));
      }
    return r;
  }

  /// A solution of M x = b, if one exists.
  std::optional<std::vector<value_type>> solve(const std::vector<value_type>& b) const {
    Matrix aug(field_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b.at(i);
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<value_type> x(cols_, field_.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
    return x;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

  F field_;
  std::size_t rows_, cols_;
  std::vector<value_type> data_;
};

/// Incremental echelon form of a span of dense coordinate vectors.
template <Field F>
class DenseEchelon {
 public:
  using value_type = typename F::value_type;
  using Vector = std::vector<value_type>;

  DenseEchelon(F field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  Vector reduce(Vector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto c = v[pivots_[r]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!field_.is_zero(rows_[r][j])) v[j] = field_.sub(v[j], field_.mul(c, rows_[r][j]));
    }
    return v;
  }

  bool contains(const Vector& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [&](const value_type& x) { return field_.is_zero(x); });
  }

  /// Adds v to the span; returns false when v was already in it.
  bool insert(const Vector& v) {
    if (v.size() != dim_) throw std::invalid_argument("echelon: vector has the wrong length");
    auto r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && field_.is_zero(r[p])) ++p;
    if (p == dim_) return false;
    auto inv = field_.inv(r[p]);
    for (auto& x : r) x = field_.mul(x, inv);
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  F field_;
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Row echelon form of a span of polynomials, pivoting on leading monomials.
template <Field F>
class SparseEchelon {
 public:
  explicit SparseEchelon(RingPtr<F> ring) : ring_(std::move(ring)) {}

  /// Reduces the leading term until it is not a pivot; zero means p is in the span.
  Polynomial<F> top_reduce(Polynomial<F> p) const {
    while (!p.is_zero()) {
      auto it = rows_.find(p.leading_monomial());
      if (it == rows_.end()) break;
      p = p.sub_mul(p.leading_coeff(), Monomial(ring_->nvars()), it->second);
    }
    return p;
  }

  /// Canonical representative of p modulo the span: no term is a pivot.
  Polynomial<F> reduce(const Polynomial<F>& p) const {
    Polynomial<F> rest = p;
    std::vector<Term<F>> out;
    while (!rest.is_zero()) {
      auto it = rows_.find(rest.leading_monomial());
      if (it == rows_.end()) out.push_back(rest.pop_leading());
      else rest = rest.sub_mul(rest.leading_coeff(), Monomial(ring_->nvars()), it->second);
    }
    return Polynomial<F>::from_sorted(ring_, std::move(out));
  }

  bool contains(const Polynomial<F>& p) const { return top_reduce(p).is_zero(); }

  /// Adds p to the span; returns false when p was already in it.
  bool insert(const Polynomial<F>& p) {
    auto r = top_reduce(p);
    if (r.is_zero()) return false;
    auto lm = r.leading_monomial();
    rows_.emplace(std::move(lm), r.monic());
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(const Monomial& m) const { return rows_.count(m) != 0; }
  std::vector<Monomial> pivots() const {
    std::vector<Monomial> v;
    for (const auto& [m, _] : rows_) v.push_back(m);
    return v;
  }

 private:
  RingPtr<F> ring_;
  std::unordered_map<Monomial, Polynomial<F>, MonomialHash> rows_;
};

}  // namespace quadgb
