#pragma once

// Monomial ideals: membership, stability and its variants, Borel-fixedness,
// colon ideals in monomial quotient rings, Hilbert functions.

#include "quadgb/polynomial.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace quadgb {

class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : nvars_(nvars) {
    for (const auto& g : gens)
      if (g.size() != nvars) throw std::invalid_argument("monomial ideal: generator has the wrong number of variables");
    gens_ = minimalize(std::move(gens));
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Monomial>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return !gens_.empty() && gens_.front().is_one(); }

  bool contains(const Monomial& m) const {
    for (const auto& g : gens_)
      if (g.divides(m)) return true;
    return false;
  }
  bool contains(const MonomialIdeal& o) const {
    return std::all_of(o.gens_.begin(), o.gens_.end(), [&](const Monomial& m) { return contains(m); });
  }

  /// Largest degree of a minimal generator; nullopt for the zero ideal.
  std::optional<Exponent> delta() const {
    if (gens_.empty()) return std::nullopt;
    Exponent d = 0;
    for (const auto& g : gens_) d = std::max(d, g.degree());
    return d;
  }

  /// Number of minimal generators of each degree.
  std::vector<std::size_t> degree_profile() const {
    std::vector<std::size_t> p;
    for (const auto& g : gens_) {
      if (p.size() <= static_cast<std::size_t>(g.degree())) p.resize(g.degree() + 1, 0);
      ++p[g.degree()];
    }
    return p;
  }

  MonomialIdeal operator+(const MonomialIdeal& o) const {
    auto g = gens_;
    g.insert(g.end(), o.gens_.begin(), o.gens_.end());
    return MonomialIdeal(nvars_, std::move(g));
  }

  /// Colon ideal (I : m), generated by lcm(g, m) / m.
  MonomialIdeal colon(const Monomial& m) const {
    std::vector<Monomial> g;
    for (const auto& h : gens_) g.push_back(h.lcm(m) / m);
    return MonomialIdeal(nvars_, std::move(g));
  }

  /// All monomials of I in degree t.
  std::vector<Monomial> monomials_in_degree(Exponent t) const {
    std::vector<Monomial> out;
    for_each_monomial(nvars_, t, [&](const Monomial& m) {
      if (contains(m)) out.push_back(m);
    });
    return out;
  }

  /// The ideal generated by I_t.
  MonomialIdeal truncation(Exponent t) const { return MonomialIdeal(nvars_, monomials_in_degree(t)); }

  bool operator==(const MonomialIdeal& o) const { return nvars_ == o.nvars_ && gens_ == o.gens_; }

  std::string to_string(const std::vector<std::string>& names) const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) s += ", ";
      s += monomial_to_string(gens_[i], names);
    }
    return s + ")";
  }

  static std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
    if (m.is_one()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += names.at(i);
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<Monomial> gens_;
};

/// Number of monomials of degree t outside I.
inline std::uint64_t hilbert_function(const MonomialIdeal& I, Exponent t) {
  if (t < 0) return 0;
  std::uint64_t total = count_monomials(I.nvars(), t);
  std::uint64_t inside = 0;
  // enumerate only when I has generators of degree <= t
  bool any = std::any_of(I.gens().begin(), I.gens().end(), [&](const Monomial& g) { return g.degree() <= t; });
  if (!any) return total;
  for_each_monomial(I.nvars(), t, [&](const Monomial& m) {
    if (I.contains(m)) ++inside;
  });
  return total - inside;
}

/// Krull dimension of S/I: the largest set of variables containing the
/// support of no generator.
inline std::size_t krull_dimension(const MonomialIdeal& I) {
  const std::size_t n = I.nvars();
  if (n > 20) throw std::invalid_argument("krull_dimension: too many variables");
  if (I.is_unit()) return 0;
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool free = std::none_of(I.gens().begin(), I.gens().end(), [&](const Monomial& g) {
      for (std::size_t i = 0; i < n; ++i)
        if (g[i] != 0 && !(mask & (1u << i))) return false;
      return true;
    });
    if (free) best = size;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Stability

/// (x_j / x_k)^s m.
inline Monomial exchange(const Monomial& m, std::size_t j, std::size_t k, Exponent s = 1) {
  Monomial r(m);
  r.set(k, m[k] - s);
  r.set(j, m[j] + s);
  return r;
}

struct StabilityWitness {
  Monomial m;         // offending generator
  std::size_t j = 0;  // 0-based target variable
  Monomial image;     // (x_j / x_max(m)) m, not in I
};

/// First violation of combinatorial stability among the minimal generators,
/// or nullopt when I is stable.
inline std::optional<StabilityWitness> stability_violation(const MonomialIdeal& I) {
  for (const auto& m : I.gens()) {
    int k = m.max_index();
    for (int j = 0; j < k; ++j) {
      auto im = exchange(m, static_cast<std::size_t>(j), static_cast<std::size_t>(k));
      if (!I.contains(im)) return StabilityWitness{m, static_cast<std::size_t>(j), im};
    }
  }
  return std::nullopt;
}

inline bool is_stable(const MonomialIdeal& I) { return !stability_violation(I).has_value(); }

/// The ideal generated by every (x_j / x_max(m)) m with m in I and
/// j <= max(m): one round of exchange moves.
inline MonomialIdeal stabilization_step(const MonomialIdeal& I) {
  std::vector<Monomial> g = I.gens();
  for (const auto& m : I.gens()) {
    int k = m.max_index();
    for (int j = 0; j < k; ++j) g.push_back(exchange(m, static_cast<std::size_t>(j), static_cast<std::size_t>(k)));
  }
  return MonomialIdeal(I.nvars(), std::move(g));
}

/// Smallest stable ideal containing I: exchange moves iterated to a fixpoint.
inline MonomialIdeal stabilization(const MonomialIdeal& I) {
  MonomialIdeal cur = I;
  while (true) {
    MonomialIdeal next = stabilization_step(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

/// Every monomial forced into a stable ideal of k[x_begin..x_end) that
/// contains m (m supported in that block).
inline std::vector<Monomial> stable_closure(const Monomial& m, std::size_t begin, std::size_t end) {
  std::set<Monomial> seen{m};
  std::vector<Monomial> stack{m};
  while (!stack.empty()) {
    Monomial u = stack.back();
    stack.pop_back();
    int k = -1;
    for (std::size_t i = end; i-- > begin;)
      if (u[i] != 0) {
        k = static_cast<int>(i);
        break;
      }
    for (int j = static_cast<int>(begin); j < k; ++j) {
      auto v = exchange(u, static_cast<std::size_t>(j), static_cast<std::size_t>(k));
      if (seen.insert(v).second) stack.push_back(v);
    }
  }
  return {seen.begin(), seen.end()};
}

/// Stability in each block of variables independently: for each generator
/// m = m_1...m_s (m_b in block b), every product of monomials taken one from
/// each stable closure of m_b lies in I.
inline bool is_multigraded_stable(const MonomialIdeal& I, const std::vector<std::size_t>& blocks) {
  for (const auto& m : I.gens()) {
    std::vector<Monomial> products{Monomial(I.nvars())};
    std::size_t start = 0;
    for (std::size_t b : blocks) {
      Monomial part(I.nvars());
      for (std::size_t i = start; i < start + b; ++i) part.set(i, m[i]);
      auto closure = stable_closure(part, start, start + b);
      std::vector<Monomial> next;
      for (const auto& p : products)
        for (const auto& c : closure) next.push_back(p * c);
      products = std::move(next);
      start += b;
    }
    for (const auto& p : products)
      if (!I.contains(p)) return false;
  }
  return true;
}

/// q-combinatorial stability: for each generator m and j < max(m) some
/// s in [1, q] with (x_j / x_max(m))^s m in I.
inline bool is_q_stable(const MonomialIdeal& I, Exponent q) {
  if (q < 1) throw std::invalid_argument("is_q_stable: q must be positive");
  for (const auto& m : I.gens()) {
    int k = m.max_index();
    for (int j = 0; j < k; ++j) {
      bool ok = false;
      for (Exponent s = 1; s <= std::min(q, m[static_cast<std::size_t>(k)]) && !ok; ++s)
        ok = I.contains(exchange(m, static_cast<std::size_t>(j), static_cast<std::size_t>(k), s));
      if (!ok) return false;
    }
  }
  return true;
}

/// Smallest q <= delta(I) with I q-stable; nullopt if there is none.
inline std::optional<Exponent> min_q(const MonomialIdeal& I) {
  auto d = I.delta();
  if (!d) return 1;
  for (Exponent q = 1; q <= std::max<Exponent>(*d, 1); ++q)
    if (is_q_stable(I, q)) return q;
  return std::nullopt;
}

/// Smallest power of p that is at least q (q-stability is monotone in q).
inline std::uint64_t least_power_at_least(std::uint64_t p, std::uint64_t q) {
  std::uint64_t v = 1;
  while (v < q) v *= p;
  return v;
}

// ---------------------------------------------------------------------------
// Borel-fixedness

namespace detail {
template <Field F>
bool borel_fixed_over(const MonomialIdeal& I, const F& field) {
  const std::size_t r = I.nvars();
  auto names = indexed_names("x", r);
  names.push_back("t");
  auto ring = make_ring(field, names, MonomialOrder::grevlex(r + 1));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      std::vector<Polynomial<F>> images;
      for (std::size_t v = 0; v < r; ++v) images.push_back(Polynomial<F>::variable(ring, v));
      images.push_back(Polynomial<F>::variable(ring, r));
      images[j] = images[j] + Polynomial<F>::variable(ring, r) * Polynomial<F>::variable(ring, i);
      for (const auto& g : I.gens()) {
        Monomial lifted(r + 1);
        for (std::size_t v = 0; v < r; ++v) lifted.set(v, g[v]);
        auto image = substitute(Polynomial<F>::monomial(ring, lifted), images, ring);
        for (const auto& term : image.terms()) {
          Monomial m(r);
          for (std::size_t v = 0; v < r; ++v) m.set(v, term.mono[v]);
          if (!I.contains(m)) return false;
        }
      }
    }
  return true;
}
}  // namespace detail

/// Invariance under x_j -> x_j + t x_i for all i < j, in characteristic p
/// (p = 0 for the rationals), checked on the expanded image of each generator.
inline bool is_borel_fixed(const MonomialIdeal& I, std::uint64_t characteristic) {
  if (characteristic == 0) return detail::borel_fixed_over(I, RationalField());
  return detail::borel_fixed_over(I, PrimeField(static_cast<std::uint32_t>(characteristic)));
}

// ---------------------------------------------------------------------------
// Colon ideals in A = S/I

/// ((m_1, ..., m_{s-1}) :_A m_s) for A = S/I, as the minimal monomials of the
/// colon that are nonzero in A. Each generator is lcm(v, m_s)/m_s for v a
/// prior monomial or a generator of I.
inline MonomialIdeal colon_in_quotient(const MonomialIdeal& I, const std::vector<Monomial>& prior, const Monomial& ms) {
  std::vector<Monomial> g;
  for (const auto& v : prior) g.push_back(v.lcm(ms) / ms);
  for (const auto& v : I.gens()) g.push_back(v.lcm(ms) / ms);
  auto minimal = minimalize(std::move(g));
  std::vector<Monomial> kept;
  for (auto& u : minimal)
    if (!I.contains(u)) kept.push_back(std::move(u));
  return MonomialIdeal(I.nvars(), std::move(kept));
}

}  // namespace quadgb
