#pragma once

// Exponent vectors and the combinatorics on them.

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadgb {

using Exponent = std::int32_t;

/// Degrees stay far below this; products beyond it are treated as overflow.
inline constexpr Exponent kMaxExponent = 1 << 24;

class Monomial {
 public:
  using Storage = boost::container::small_vector<Exponent, 8>;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> e) : exps_(e.begin(), e.end()) { recompute(); }
  explicit Monomial(std::span<const Exponent> e) : exps_(e.begin(), e.end()) { recompute(); }
  explicit Monomial(const std::vector<Exponent>& e) : exps_(e.begin(), e.end()) { recompute(); }

  static Monomial variable(std::size_t nvars, std::size_t i, Exponent power = 1) {
    Monomial m(nvars);
    m.exps_.at(i) = power;
    m.degree_ = power;
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }
  std::span<const Exponent> exponents() const { return {exps_.data(), exps_.size()}; }
  std::vector<Exponent> to_vector() const { return {exps_.begin(), exps_.end()}; }

  void set(std::size_t i, Exponent e) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    degree_ += e - exps_.at(i);
    exps_[i] = e;
  }

  /// Index of the last variable dividing the monomial; -1 for the monomial 1.
  int max_index() const {
    for (int i = static_cast<int>(exps_.size()) - 1; i >= 0; --i)
      if (exps_[i] != 0) return i;
    return -1;
  }

  /// Index of the first variable dividing the monomial; -1 for the monomial 1.
  int min_index() const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  bool divides(const Monomial& other) const {
    check_size(other);
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    check_size(other);
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      r.exps_[i] += other.exps_[i];
      if (r.exps_[i] > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    }
    r.degree_ += other.degree_;
    return r;
  }

  /// Exact quotient; the divisor must divide.
  Monomial operator/(const Monomial& other) const {
    check_size(other);
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      r.exps_[i] -= other.exps_[i];
      if (r.exps_[i] < 0) throw std::invalid_argument("monomial division is not exact");
    }
    r.degree_ -= other.degree_;
    return r;
  }

  Monomial lcm(const Monomial& other) const {
    check_size(other);
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    r.recompute();
    return r;
  }

  Monomial gcd(const Monomial& other) const {
    check_size(other);
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::min(exps_[i], other.exps_[i]);
    r.recompute();
    return r;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
  }

  /// Degree restricted to the variables [begin, end).
  Exponent partial_degree(std::size_t begin, std::size_t end) const {
    Exponent s = 0;
    for (std::size_t i = begin; i < end; ++i) s += exps_[i];
    return s;
  }

  bool operator==(const Monomial& o) const { return degree_ == o.degree_ && exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
  /// Plain lexicographic comparison of exponent vectors, for use as a map key.
  bool operator<(const Monomial& o) const { return exps_ < o.exps_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (Exponent e : exps_) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
    return h;
  }

 private:
  void recompute() {
    degree_ = 0;
    for (Exponent e : exps_) {
      if (e < 0) throw std::invalid_argument("negative exponent");
      degree_ += e;
    }
  }
  void check_size(const Monomial& other) const {
    if (other.exps_.size() != exps_.size()) throw std::invalid_argument("monomials live in different rings");
  }

  Storage exps_;
  Exponent degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Calls `fn` on every exponent vector of total degree `degree` in `nvars`
/// variables, in decreasing lexicographic order.
inline void for_each_monomial(std::size_t nvars, Exponent degree, const std::function<void(const Monomial&)>& fn) {
  if (degree < 0) return;
  if (nvars == 0) {
    if (degree == 0) fn(Monomial(0));
    return;
  }
  std::vector<Exponent> e(nvars, 0);
  e[0] = degree;
  while (true) {
    fn(Monomial(e));
    // next composition in decreasing lex order
    std::size_t last = nvars - 1;
    if (e[0] == degree && nvars == 1) return;
    // find rightmost nonzero position before the last
    int i = static_cast<int>(last) - 1;
    while (i >= 0 && e[static_cast<std::size_t>(i)] == 0) --i;
    if (i < 0) return;
    Exponent tail = e[last];
    e[last] = 0;
    e[static_cast<std::size_t>(i)] -= 1;
    e[static_cast<std::size_t>(i) + 1] = tail + 1;
  }
}

inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, Exponent degree) {
  std::vector<Monomial> out;
  for_each_monomial(nvars, degree, [&](const Monomial& m) { out.push_back(m); });
  return out;
}

/// Number of monomials of degree t in n variables, C(n + t - 1, t).
inline std::uint64_t count_monomials(std::size_t nvars, std::int64_t degree) {
  if (degree < 0) return 0;
  if (nvars == 0) return degree == 0 ? 1 : 0;
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= degree; ++i) r = r * (nvars - 1 + static_cast<std::uint64_t>(i)) / static_cast<std::uint64_t>(i);
  return r;
}

/// All divisors of m (including 1 and m).
inline std::vector<Monomial> divisors(const Monomial& m) {
  std::vector<Monomial> out{Monomial(m.size())};
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<Monomial> next;
    for (const auto& d : out)
      for (Exponent e = 0; e <= m[i]; ++e) {
        Monomial t(d);
        t.set(i, e);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

/// Removes every monomial divisible by another one and sorts the result by
/// (degree, decreasing lex exponent vector).
inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return b < a;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& h) { return h.divides(g); });
    if (!redundant) out.push_back(g);
  }
  return out;
}

}  // namespace quadgb
