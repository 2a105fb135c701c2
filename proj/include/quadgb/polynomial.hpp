#pragma once

// Polynomial rings over a field and sparse polynomials in them.

#include "quadgb/field.hpp"
#include "quadgb/monomial.hpp"
#include "quadgb/order.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadgb {

/// k[x_1..x_r] with a bound monomial order and optional variable blocks
/// (block sizes r_1..r_s summing to r) for multigraded work.
template <Field F>
class Ring {
 public:
  Ring(F field, std::vector<std::string> names, MonomialOrder order, std::vector<std::size_t> blocks = {})
      : field_(std::move(field)), names_(std::move(names)),
        order_(std::make_shared<const MonomialOrder>(std::move(order))), blocks_(std::move(blocks)) {
    if (order_->nvars() != names_.size()) throw std::invalid_argument("order and variable list disagree on the number of variables");
    if (blocks_.empty()) blocks_ = {names_.size()};
    if (std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0}) != names_.size())
      throw std::invalid_argument("block sizes must sum to the number of variables");
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return *order_; }
  std::shared_ptr<const MonomialOrder> order_ptr() const { return order_; }
  const std::vector<std::size_t>& blocks() const { return blocks_; }

  /// Per-block degrees of m.
  std::vector<Exponent> multidegree(const Monomial& m) const {
    std::vector<Exponent> d;
    std::size_t start = 0;
    for (std::size_t b : blocks_) {
      d.push_back(m.partial_degree(start, start + b));
      start += b;
    }
    return d;
  }

  /// Same field, variables and blocks, different order.
  std::shared_ptr<const Ring> with_order(MonomialOrder order) const {
    return std::make_shared<const Ring>(field_, names_, std::move(order), blocks_);
  }

  std::string monomial_string(const Monomial& m) const {
    if (m.is_one()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += names_[i];
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

  std::string header() const {
    std::string s = "ring " + field_.name() + "[";
    for (std::size_t i = 0; i < names_.size(); ++i) s += (i ? "," : "") + names_[i];
    return s + "] order " + order_->name() + ";";
  }

 private:
  F field_;
  std::vector<std::string> names_;
  std::shared_ptr<const MonomialOrder> order_;
  std::vector<std::size_t> blocks_;
};

template <Field F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <Field F>
RingPtr<F> make_ring(F field, std::vector<std::string> names, MonomialOrder order, std::vector<std::size_t> blocks = {}) {
  return std::make_shared<const Ring<F>>(std::move(field), std::move(names), std::move(order), std::move(blocks));
}

/// Default names x1..xn.
inline std::vector<std::string> indexed_names(const std::string& stem, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

template <Field F>
struct Term {
  typename F::value_type coeff;
  Monomial mono;
};

template <Field F>
class Polynomial {
 public:
  using value_type = typename F::value_type;
  using TermT = Term<F>;

  Polynomial() = default;
  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  /// Builds a canonical polynomial from arbitrary terms (any order, repeats
  /// and zero coefficients allowed).
  static Polynomial from_terms(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    const auto& ord = p.ring_->order();
    for (const auto& t : terms)
      if (t.mono.size() != p.ring_->nvars()) throw std::invalid_argument("term has the wrong number of variables");
    std::sort(terms.begin(), terms.end(), [&](const TermT& a, const TermT& b) { return ord.greater(a.mono, b.mono); });
    const F& k = p.ring_->field();
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = k.add(p.terms_.back().coeff, t.coeff);
        if (k.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      } else if (!k.is_zero(t.coeff)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// Trusts the caller: terms already strictly descending with nonzero
  /// coefficients.
  static Polynomial from_sorted(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  static Polynomial constant(RingPtr<F> ring, value_type c) {
    std::size_t n = ring->nvars();
    return from_terms(std::move(ring), {TermT{std::move(c), Monomial(n)}});
  }
  static Polynomial monomial(RingPtr<F> ring, const Monomial& m, value_type c) {
    return from_terms(std::move(ring), {TermT{std::move(c), m}});
  }
  static Polynomial monomial(RingPtr<F> ring, const Monomial& m) {
    auto one = ring->field().one();
    return monomial(std::move(ring), m, one);
  }
  static Polynomial variable(RingPtr<F> ring, std::size_t i) {
    auto m = Monomial::variable(ring->nvars(), i);
    return monomial(std::move(ring), m);
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  const std::vector<TermT>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Removes the leading term and returns it.
  TermT pop_leading() {
    TermT t = leading_term();
    terms_.erase(terms_.begin());
    return t;
  }

  const TermT& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
    return terms_.front();
  }
  const Monomial& leading_monomial() const { return leading_term().mono; }
  const value_type& leading_coeff() const { return leading_term().coeff; }

  /// Largest total degree of a term; -1 for zero.
  Exponent degree() const {
    Exponent d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const TermT& t) { return t.mono.degree() == terms_.front().mono.degree(); });
  }

  /// Coefficient of m, zero if absent.
  value_type coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return field().zero();
  }

  Polynomial operator+(const Polynomial& o) const { return combine(o, false); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, true); }
  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_ring(o);
    if (is_zero() || o.is_zero()) return Polynomial(ring_);
    if (o.size() == 1) return mul_term(o.terms_[0].coeff, o.terms_[0].mono);
    if (size() == 1) return o.mul_term(terms_[0].coeff, terms_[0].mono);
    std::vector<TermT> prod;
    prod.reserve(size() * o.size());
    const F& k = field();
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) prod.push_back(TermT{k.mul(a.coeff, b.coeff), a.mono * b.mono});
    return from_terms(ring_, std::move(prod));
  }

  Polynomial scaled(const value_type& c) const {
    const F& k = field();
    if (k.is_zero(c)) return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = k.mul(t.coeff, c);
    return r;
  }

  /// c * m * this; multiplication by a term preserves the term order.
  Polynomial mul_term(const value_type& c, const Monomial& m) const {
    const F& k = field();
    Polynomial r(ring_);
    if (k.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(TermT{k.mul(t.coeff, c), t.mono * m});
    return r;
  }

  /// this - c * m * g in a single merge pass.
  Polynomial sub_mul(const value_type& c, const Monomial& m, const Polynomial& g) const {
    check_ring(g);
    const F& k = field();
    const auto& ord = ring_->order();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      Monomial gm = g.terms_[j].mono * m;
      if (i == terms_.size()) {
        r.terms_.push_back(TermT{k.neg(k.mul(c, g.terms_[j].coeff)), std::move(gm)});
        ++j;
        continue;
      }
      auto cmp = ord.compare(terms_[i].mono, gm);
      if (cmp == std::strong_ordering::greater) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp == std::strong_ordering::less) {
        r.terms_.push_back(TermT{k.neg(k.mul(c, g.terms_[j].coeff)), std::move(gm)});
        ++j;
      } else {
        auto v = k.sub(terms_[i].coeff, k.mul(c, g.terms_[j].coeff));
        if (!k.is_zero(v)) r.terms_.push_back(TermT{std::move(v), std::move(gm)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, field().one());
    Polynomial b = *this;
    while (e) {
      if (e & 1u) r = r * b;
      e >>= 1u;
      if (e) b = b * b;
    }
    return r;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(field().inv(leading_coeff()));
  }

  /// Re-sorts the terms under another ring with the same variables (used
  /// when changing the monomial order).
  Polynomial in_ring(RingPtr<F> other) const {
    if (other->nvars() != ring_->nvars()) throw std::invalid_argument("in_ring: variable count mismatch");
    return from_terms(std::move(other), terms_);
  }

  /// Homogeneous component of total degree t.
  Polynomial homogeneous_part(Exponent t) const {
    Polynomial r(ring_);
    for (const auto& t2 : terms_)
      if (t2.mono.degree() == t) r.terms_.push_back(t2);
    return r;
  }

  bool operator==(const Polynomial& o) const {
    if (ring_ != o.ring_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != o.terms_[i].mono || !field().equal(terms_[i].coeff, o.terms_[i].coeff)) return false;
    return true;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    const F& k = field();
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      bool neg = k.prints_negative(t.coeff);
      auto c = neg ? k.neg(t.coeff) : t.coeff;
      if (i == 0) s += neg ? "-" : "";
      else s += neg ? " - " : " + ";
      bool unit = k.equal(c, k.one());
      if (t.mono.is_one()) s += k.to_string(c);
      else if (unit) s += ring_->monomial_string(t.mono);
      else s += k.to_string(c) + "*" + ring_->monomial_string(t.mono);
    }
    return s;
  }

 private:
  void check_ring(const Polynomial& o) const {
    if (ring_ != o.ring_) throw std::invalid_argument("polynomials belong to different rings");
  }

  Polynomial combine(const Polynomial& o, bool subtract) const {
    check_ring(o);
    const F& k = field();
    const auto& ord = ring_->order();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    auto other = [&](std::size_t idx) { return subtract ? k.neg(o.terms_[idx].coeff) : o.terms_[idx].coeff; };
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) r.terms_.push_back(terms_[i++]);
      else if (i == terms_.size()) { r.terms_.push_back(TermT{other(j), o.terms_[j].mono}); ++j; }
      else {
        auto cmp = ord.compare(terms_[i].mono, o.terms_[j].mono);
        if (cmp == std::strong_ordering::greater) r.terms_.push_back(terms_[i++]);
        else if (cmp == std::strong_ordering::less) { r.terms_.push_back(TermT{other(j), o.terms_[j].mono}); ++j; }
        else {
          auto v = k.add(terms_[i].coeff, other(j));
          if (!k.is_zero(v)) r.terms_.push_back(TermT{std::move(v), terms_[i].mono});
          ++i;
          ++j;
        }
      }
    }
    return r;
  }

  RingPtr<F> ring_;
  std::vector<TermT> terms_;
};

/// Linear substitution x_i -> images[i] of every variable; `images` live in
/// the target ring.
template <Field F>
Polynomial<F> substitute(const Polynomial<F>& p, const std::vector<Polynomial<F>>& images, const RingPtr<F>& target) {
  if (images.size() != p.ring()->nvars()) throw std::invalid_argument("substitute: one image per variable required");
  std::vector<std::vector<Polynomial<F>>> powers(images.size());
  auto power = [&](std::size_t i, Exponent e) -> const Polynomial<F>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial<F>::constant(target, target->field().one()));
    while (static_cast<Exponent>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
    return cache[static_cast<std::size_t>(e)];
  };
  Polynomial<F> acc(target);
  for (const auto& t : p.terms()) {
    Polynomial<F> term = Polynomial<F>::constant(target, t.coeff);
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (t.mono[i] != 0) term = term * power(i, t.mono[i]);
    acc = acc + term;
  }
  return acc;
}

}  // namespace quadgb
