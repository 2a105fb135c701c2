#pragma once

// Buchberger's algorithm with the Gebauer-Moeller criteria, normal forms,
// minimal generators and coordinate changes.

#include "quadgb/linalg.hpp"
#include "quadgb/monomial_ideal.hpp"

#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

namespace quadgb {

template <Field F>
struct Ideal {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> gens;

  bool is_homogeneous() const {
    return std::all_of(gens.begin(), gens.end(), [](const Polynomial<F>& g) { return g.is_homogeneous(); });
  }
};

template <Field F>
struct GroebnerBasis {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> elements;  // reduced, monic, ascending leading monomials
  std::optional<Exponent> truncated_at; // elements valid only up to this degree

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> v;
    for (const auto& g : elements) v.push_back(g.leading_monomial());
    return v;
  }
  MonomialIdeal initial_ideal() const { return MonomialIdeal(ring->nvars(), leading_monomials()); }
  std::optional<Exponent> delta() const { return initial_ideal().delta(); }
};

/// Full reduction of f modulo polynomials with the given (monic) leading terms.
template <Field F>
Polynomial<F> normal_form(const Polynomial<F>& f, const std::vector<Polynomial<F>>& G) {
  for (const auto& g : G)
    if (g.ring() != f.ring()) throw std::invalid_argument("normal_form: basis and polynomial live in different rings");
  const F& k = f.field();
  Polynomial<F> p = f;
  std::vector<Term<F>> rem;
  while (!p.is_zero()) {
    const auto& lt = p.leading_term();
    const Polynomial<F>* div = nullptr;
    for (const auto& g : G)
      if (g.leading_monomial().divides(lt.mono)) {
        div = &g;
        break;
      }
    if (!div) {
      rem.push_back(p.pop_leading());
      continue;
    }
    auto c = k.mul(lt.coeff, k.inv(div->leading_coeff()));
    p = p.sub_mul(c, lt.mono / div->leading_monomial(), *div);
  }
  return Polynomial<F>::from_sorted(f.ring(), std::move(rem));
}

template <Field F>
Polynomial<F> normal_form(const Polynomial<F>& f, const GroebnerBasis<F>& G) {
  return normal_form(f, G.elements);
}

template <Field F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g) {
  const F& k = f.field();
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  auto a = f.mul_term(k.inv(f.leading_coeff()), l / f.leading_monomial());
  return a.sub_mul(k.inv(g.leading_coeff()), l / g.leading_monomial(), g);
}

struct BuchbergerOptions {
  /// For homogeneous input under a graded order: ignore everything above
  /// this degree; the result is a Groebner basis up to that degree.
  std::optional<Exponent> truncate_degree;
};

namespace detail {

template <Field F>
class BuchbergerState {
 public:
  explicit BuchbergerState(RingPtr<F> ring) : ring_(std::move(ring)) {}

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  void add(Polynomial<F> h) {
    h = h.monic();
    const std::size_t hi = polys_.size();
    const Monomial lh = h.leading_monomial();
    polys_.push_back(std::move(h));
    active_.push_back(true);

    // Gebauer-Moeller update
    std::vector<Pair> C;
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g]) C.push_back(Pair{g, hi, polys_[g].leading_monomial().lcm(lh)});
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const auto& p = C[a];
      bool coprime = polys_[p.i].leading_monomial().coprime(lh);
      auto dominated = [&](const Pair& q) { return q.lcm.divides(p.lcm); };
      bool keep = coprime || (std::none_of(C.begin() + static_cast<std::ptrdiff_t>(a) + 1, C.end(), dominated) &&
                              std::none_of(D.begin(), D.end(), dominated));
      if (keep) D.push_back(p);
    }
    std::vector<Pair> E;
    for (auto& p : D)
      if (!polys_[p.i].leading_monomial().coprime(lh)) E.push_back(std::move(p));
    std::vector<Pair> B;
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && polys_[p.i].leading_monomial().lcm(lh) != p.lcm &&
                  polys_[p.j].leading_monomial().lcm(lh) != p.lcm;
      if (!drop) B.push_back(std::move(p));
    }
    for (auto& p : E) B.push_back(std::move(p));
    pairs_ = std::move(B);
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && lh.divides(polys_[g].leading_monomial())) active_[g] = false;
  }

  /// Removes and returns the pair with the smallest lcm (degree first, then
  /// the monomial order, then indices).
  std::optional<Pair> next_pair(std::optional<Exponent> cap) {
    const auto& ord = ring_->order();
    std::optional<std::size_t> best;
    for (std::size_t a = 0; a < pairs_.size(); ++a) {
      if (cap && pairs_[a].lcm.degree() > *cap) continue;
      if (!best) {
        best = a;
        continue;
      }
      const auto& p = pairs_[a];
      const auto& q = pairs_[*best];
      if (p.lcm.degree() != q.lcm.degree()) {
        if (p.lcm.degree() < q.lcm.degree()) best = a;
        continue;
      }
      auto c = ord.compare(p.lcm, q.lcm);
      if (c == std::strong_ordering::less || (c == std::strong_ordering::equal && std::tie(p.i, p.j) < std::tie(q.i, q.j)))
        best = a;
    }
    if (!best) return std::nullopt;
    Pair p = pairs_[*best];
    pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(*best));
    return p;
  }

  std::vector<Polynomial<F>> active_polys() const {
    std::vector<Polynomial<F>> v;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) v.push_back(polys_[i]);
    return v;
  }

  const Polynomial<F>& poly(std::size_t i) const { return polys_[i]; }

 private:
  RingPtr<F> ring_;
  std::vector<Polynomial<F>> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

}  // namespace detail

/// Reduces each element's tail against the others and sorts by leading
/// monomial; input must be a minimal Groebner basis.
template <Field F>
std::vector<Polynomial<F>> interreduce(std::vector<Polynomial<F>> G) {
  if (G.empty()) return G;
  const auto& ord = G.front().ring()->order();
  std::sort(G.begin(), G.end(), [&](const Polynomial<F>& a, const Polynomial<F>& b) {
    return ord.less(a.leading_monomial(), b.leading_monomial());
  });
  for (std::size_t i = 0; i < G.size(); ++i) {
    std::vector<Polynomial<F>> others;
    for (std::size_t j = 0; j < G.size(); ++j)
      if (j != i) others.push_back(G[j]);
    auto lt = G[i].leading_term();
    Polynomial<F> tail = G[i];
    tail.pop_leading();
    auto reduced = normal_form(tail, others);
    G[i] = Polynomial<F>::monomial(G[i].ring(), lt.mono, lt.coeff) + reduced;
    G[i] = G[i].monic();
  }
  return G;
}

template <Field F>
GroebnerBasis<F> buchberger(const RingPtr<F>& ring, const std::vector<Polynomial<F>>& gens, const BuchbergerOptions& opt = {}) {
  for (const auto& g : gens)
    if (g.ring() != ring) throw std::invalid_argument("buchberger: generator from a different ring");
  if (opt.truncate_degree && !ring->order().is_graded())
    throw std::invalid_argument("buchberger: degree truncation needs a graded order");
  detail::BuchbergerState<F> st(ring);
  std::vector<Polynomial<F>> inputs;
  for (const auto& g : gens)
    if (!g.is_zero()) inputs.push_back(g);
  std::stable_sort(inputs.begin(), inputs.end(), [&](const Polynomial<F>& a, const Polynomial<F>& b) {
    return ring->order().less(a.leading_monomial(), b.leading_monomial());
  });
  for (const auto& g : inputs) {
    if (opt.truncate_degree && g.degree() > *opt.truncate_degree) continue;
    auto h = normal_form(g, st.active_polys());
    if (!h.is_zero()) st.add(std::move(h));
  }
  while (auto p = st.next_pair(opt.truncate_degree)) {
    auto s = s_polynomial(st.poly(p->i), st.poly(p->j));
    auto h = normal_form(s, st.active_polys());
    if (!h.is_zero()) st.add(std::move(h));
  }
  GroebnerBasis<F> G{ring, interreduce(st.active_polys()), opt.truncate_degree};
  return G;
}

template <Field F>
GroebnerBasis<F> buchberger(const std::vector<Polynomial<F>>& gens, const BuchbergerOptions& opt = {}) {
  if (gens.empty()) throw std::invalid_argument("buchberger: empty generator list; pass the ring explicitly");
  return buchberger(gens.front().ring(), gens, opt);
}

template <Field F>
GroebnerBasis<F> buchberger(const Ideal<F>& I, const BuchbergerOptions& opt = {}) {
  return buchberger(I.ring, I.gens, opt);
}

/// True when every S-polynomial of G reduces to zero.
template <Field F>
bool is_groebner_basis(const std::vector<Polynomial<F>>& G) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j)
      if (!normal_form(s_polynomial(G[i], G[j]), G).is_zero()) return false;
  return true;
}

/// Minimal homogeneous generators by graded linear algebra: an input of
/// degree t is kept when it is not in the span of S_{t - deg g} g over the
/// generators g already kept.
template <Field F>
std::vector<Polynomial<F>> minimal_generators(const std::vector<Polynomial<F>>& gens) {
  std::vector<Polynomial<F>> in;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw std::invalid_argument("minimal_generators: generator is not homogeneous");
    in.push_back(g);
  }
  std::stable_sort(in.begin(), in.end(), [](const auto& a, const auto& b) { return a.degree() < b.degree(); });
  std::vector<Polynomial<F>> kept;
  std::size_t i = 0;
  while (i < in.size()) {
    Exponent t = in[i].degree();
    const auto& ring = in[i].ring();
    SparseEchelon<F> span(ring);
    for (const auto& g : kept)
      for_each_monomial(ring->nvars(), t - g.degree(), [&](const Monomial& m) { span.insert(g.mul_term(ring->field().one(), m)); });
    for (; i < in.size() && in[i].degree() == t; ++i)
      if (span.insert(in[i])) kept.push_back(in[i]);
  }
  return kept;
}

template <Field F>
std::optional<Exponent> delta(const std::vector<Polynomial<F>>& gens) {
  auto m = minimal_generators(gens);
  if (m.empty()) return std::nullopt;
  Exponent d = 0;
  for (const auto& g : m) d = std::max(d, g.degree());
  return d;
}

/// Substitutes x_i -> sum_j g(i, j) x_j in every generator.
template <Field F>
std::vector<Polynomial<F>> change_coordinates(const std::vector<Polynomial<F>>& gens, const RingPtr<F>& ring, const Matrix<F>& g) {
  const std::size_t r = ring->nvars();
  if (g.rows() != r || g.cols() != r) throw std::invalid_argument("change_coordinates: matrix size does not match the ring");
  if (g.rank() < r) throw std::invalid_argument("change_coordinates: singular matrix");
  std::vector<Polynomial<F>> images;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Term<F>> t;
    for (std::size_t j = 0; j < r; ++j) t.push_back(Term<F>{g(i, j), Monomial::variable(r, j)});
    images.push_back(Polynomial<F>::from_terms(ring, std::move(t)));
  }
  std::vector<Polynomial<F>> out;
  for (const auto& f : gens) out.push_back(substitute(f, images, ring));
  return out;
}

/// Random invertible matrix (rejection sampling on the rank).
template <Field F>
Matrix<F> random_invertible(const F& field, std::size_t n, std::mt19937_64& rng, bool upper_triangular = false) {
  while (true) {
    Matrix<F> m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (upper_triangular && j < i) continue;
        m(i, j) = field.random(rng);
      }
    if (m.rank() == n) return m;
  }
}

/// dim_k (S/I)_t for t = 0..max_degree from a Groebner basis valid up to max_degree.
template <Field F>
std::vector<std::uint64_t> hilbert_function(const GroebnerBasis<F>& G, Exponent max_degree) {
  if (G.truncated_at && *G.truncated_at < max_degree) throw std::invalid_argument("hilbert_function: basis truncated below the requested degree");
  auto in = G.initial_ideal();
  std::vector<std::uint64_t> h;
  for (Exponent t = 0; t <= max_degree; ++t) h.push_back(hilbert_function(in, t));
  return h;
}

}  // namespace quadgb
