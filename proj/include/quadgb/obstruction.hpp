#pragma once

// Low-rank quadrics in an ideal: ranks of quadratic forms, searches for
// low-rank members and subspaces, the rank condition that a quadratic
// initial ideal forces, and the dimension count for generic complete
// intersections of quadrics.

#include "quadgb/groebner.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace quadgb {

/// A homogeneous quadric (or zero) in k[x_1..x_r].
template <Field F>
class QuadraticForm {
 public:
  using value_type = typename F::value_type;

  explicit QuadraticForm(Polynomial<F> p) : poly_(std::move(p)) {
    for (const auto& t : poly_.terms())
      if (t.mono.degree() != 2) throw std::invalid_argument("quadratic form: every term must have degree 2");
  }

  const Polynomial<F>& polynomial() const { return poly_; }
  const F& field() const { return poly_.field(); }
  std::size_t nvars() const { return poly_.ring()->nvars(); }
  bool is_zero() const { return poly_.is_zero(); }

  /// Coefficient of x_i x_j (i <= j).
  value_type coeff(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    Monomial m(nvars());
    m.set(i, 1);
    m.set(j, m[j] + 1);
    return poly_.coefficient(m);
  }

  /// The symmetric matrix G with Q(x) = x^T G x. Needs char k != 2.
  Matrix<F> gram() const {
    const F& k = field();
    if (k.characteristic() == 2) throw std::domain_error("gram matrix: characteristic 2");
    const auto half = k.inv(k.from_int(2));
    const std::size_t r = nvars();
    Matrix<F> G(k, r, r);
    for (std::size_t i = 0; i < r; ++i) {
      G(i, i) = coeff(i, i);
      for (std::size_t j = i + 1; j < r; ++j) G(i, j) = G(j, i) = k.mul(coeff(i, j), half);
    }
    return G;
  }

 private:
  Polynomial<F> poly_;
};

namespace detail {

/// Rank over GF(2): r minus the dimension of the directions Q does not depend
/// on, i.e. vectors v in the radical of the polar form with Q(v) = 0.
template <Field F>
std::size_t rank_char2(const QuadraticForm<F>& Q) {
  const F& k = Q.field();
  const std::size_t r = Q.nvars();
  Matrix<F> B(k, r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (i != j) B(i, j) = Q.coeff(i, j);
  auto radical = B.kernel();
  bool q_nonzero = false;
  for (const auto& v : radical) {
    auto s = k.zero();
    for (const auto& t : Q.polynomial().terms()) {
      auto c = t.coeff;
      for (std::size_t i = 0; i < r; ++i)
        if (t.mono[i] != 0) c = k.mul(c, v[i]);
      s = k.add(s, c);
    }
    if (!k.is_zero(s)) q_nonzero = true;
  }
  return r - (radical.size() - (q_nonzero ? 1 : 0));
}

}  // namespace detail

/// Rank of a quadratic form: Gram rank in odd characteristic and over Q; over
/// GF(2) the least number of variables the form needs after a linear change.
template <Field F>
std::size_t rank_of_quadric(const QuadraticForm<F>& Q) {
  const std::uint64_t p = Q.field().characteristic();
  if (p != 2) return Q.gram().rank();
  return detail::rank_char2(Q);
}

/// Least number of variables Q involves over all invertible linear changes of
/// coordinates, by exhausting GL_r(GF(p)). Small cases only.
template <Field F>
std::size_t polynomial_rank_exhaustive(const QuadraticForm<F>& Q) {
  const F& k = Q.field();
  const std::uint64_t p = k.characteristic();
  const std::size_t r = Q.nvars();
  if (p == 0) throw std::invalid_argument("exhaustive rank: needs a finite field");
  double count = 1;
  for (std::size_t i = 0; i < r * r; ++i) count *= static_cast<double>(p);
  if (r > 3 || count > double(1u << 20)) throw std::invalid_argument("exhaustive rank: search space too large");
  const auto& R = Q.polynomial().ring();
  std::size_t best = r;
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(count); ++idx) {
    std::uint64_t x = idx;
    Matrix<F> g(k, r, r);
    for (std::size_t s = 0; s < r * r; ++s) {
      g(s / r, s % r) = k.from_int(static_cast<long>(x % p));
      x /= p;
    }
    if (g.rank() < r) continue;
    auto image = change_coordinates(std::vector<Polynomial<F>>{Q.polynomial()}, R, g).front();
    std::vector<bool> used(r, false);
    for (const auto& t : image.terms())
      for (std::size_t i = 0; i < r; ++i)
        if (t.mono[i] != 0) used[i] = true;
    best = std::min<std::size_t>(best, std::count(used.begin(), used.end(), true));
  }
  return best;
}

/// Linearly independent quadrics in one ring.
template <Field F>
class QuadricSpace {
 public:
  using value_type = typename F::value_type;

  QuadricSpace(RingPtr<F> ring, std::vector<Polynomial<F>> basis) : ring_(std::move(ring)) {
    SparseEchelon<F> span(ring_);
    for (auto& q : basis) {
      QuadraticForm<F> form(q);
      if (q.is_zero() || !span.insert(q)) throw std::invalid_argument("quadric space: basis is linearly dependent");
      forms_.push_back(std::move(form));
    }
  }

  const RingPtr<F>& ring() const { return ring_; }
  std::size_t dim() const { return forms_.size(); }
  std::size_t nvars() const { return ring_->nvars(); }
  const std::vector<QuadraticForm<F>>& basis() const { return forms_; }

  Polynomial<F> combination(const std::vector<value_type>& c) const {
    if (c.size() != dim()) throw std::invalid_argument("quadric space: wrong number of coefficients");
    Polynomial<F> p(ring_);
    for (std::size_t i = 0; i < dim(); ++i)
      if (!ring_->field().is_zero(c[i])) p = p + forms_[i].polynomial().scaled(c[i]);
    return p;
  }

 private:
  RingPtr<F> ring_;
  std::vector<QuadraticForm<F>> forms_;
};

/// Degree-2 part of the ideal generated by gens, as a quadric space.
template <Field F>
QuadricSpace<F> quadrics_in(const RingPtr<F>& ring, const std::vector<Polynomial<F>>& gens) {
  SparseEchelon<F> span(ring);
  std::vector<Polynomial<F>> basis;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw std::invalid_argument("quadrics: generators must be homogeneous");
    if (g.degree() > 2) continue;
    for_each_monomial(ring->nvars(), 2 - g.degree(), [&](const Monomial& m) {
      auto q = g.mul_term(ring->field().one(), m);
      if (span.insert(q)) basis.push_back(q);
    });
  }
  return QuadricSpace<F>(ring, std::move(basis));
}

// ---------------------------------------------------------------------------
// The locus of low-rank members

/// The (b+1)-minors of the generic member sum c_i Q_i define the members of
/// rank <= b inside P(W).
template <Field F>
struct RankLocus {
  RingPtr<F> coeff_ring;                // k[c_1..c_dim]
  std::vector<Polynomial<F>> equations; // the minors
  GroebnerBasis<F> basis;
  long projective_dim = -1;             // -1: empty over the algebraic closure
  std::optional<std::uint64_t> degree;  // when the locus is finite
};

namespace detail {

/// Determinant of a square matrix of polynomials by expansion over column subsets.
template <Field F>
Polynomial<F> poly_det(const std::vector<std::vector<Polynomial<F>>>& M, const RingPtr<F>& ring) {
  const std::size_t k = M.size();
  std::vector<Polynomial<F>> dp(std::size_t{1} << k, Polynomial<F>(ring));
  dp[0] = Polynomial<F>::constant(ring, ring->field().one());
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (dp[mask].is_zero()) continue;
    const std::size_t row = static_cast<std::size_t>(__builtin_popcount(mask));
    if (row == k) continue;
    for (std::size_t c = 0; c < k; ++c) {
      if (mask & (1u << c)) continue;
      if (M[row][c].is_zero()) continue;
      // sign from the number of used columns to the right of c
      const int above = __builtin_popcount(mask >> (c + 1));
      auto term = dp[mask] * M[row][c];
      dp[mask | (1u << c)] = (above % 2) ? dp[mask | (1u << c)] - term : dp[mask | (1u << c)] + term;
    }
  }
  return dp[(1u << k) - 1];
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

/// Exact description of the members of W of rank <= b. Needs char k != 2.
template <Field F>
RankLocus<F> rank_locus(const QuadricSpace<F>& W, std::size_t b) {
  const F& k = W.ring()->field();
  if (k.characteristic() == 2) throw std::domain_error("rank locus: characteristic 2");
  const std::size_t D = W.dim(), r = W.nvars();
  RankLocus<F> L;
  L.coeff_ring = make_ring(k, indexed_names("c", D), MonomialOrder::grevlex(D));
  if (D == 0) {
    L.basis = buchberger(L.coeff_ring, std::vector<Polynomial<F>>{});
    return L;
  }
  std::vector<Matrix<F>> grams;
  for (const auto& q : W.basis()) grams.push_back(q.gram());
  std::vector<std::vector<Polynomial<F>>> G(r, std::vector<Polynomial<F>>(r, Polynomial<F>(L.coeff_ring)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Term<F>> t;
      for (std::size_t s = 0; s < D; ++s) t.push_back({grams[s](i, j), Monomial::variable(D, s)});
      G[i][j] = Polynomial<F>::from_terms(L.coeff_ring, std::move(t));
    }
  if (b < r) {
    for (const auto& rows : detail::subsets(r, b + 1))
      for (const auto& cols : detail::subsets(r, b + 1)) {
        std::vector<std::vector<Polynomial<F>>> minor;
        for (auto i : rows) {
          minor.emplace_back();
          for (auto j : cols) minor.back().push_back(G[i][j]);
        }
        auto d = detail::poly_det(minor, L.coeff_ring);
        if (!d.is_zero()) L.equations.push_back(std::move(d));
      }
  }
  L.basis = buchberger(L.coeff_ring, L.equations);
  auto in = L.basis.initial_ideal();
  L.projective_dim = in.is_unit() ? -1 : static_cast<long>(krull_dimension(in)) - 1;
  if (L.projective_dim == 0 && D <= 6) {
    // constant Hilbert function past the Taylor bound
    Exponent t = static_cast<Exponent>(D) * in.delta().value_or(1);
    L.degree = hilbert_function(in, t);
  }
  return L;
}

// ---------------------------------------------------------------------------
// Searches

struct SearchOptions {
  std::size_t max_candidates = 200000;
  long height = 2;  // integer coefficients in [-height, height] over Q
};

/// Outcome of a search for an m-dimensional subspace of W whose members all
/// have rank <= b.
template <Field F>
struct LowRankSearch {
  using value_type = typename F::value_type;
  enum class Status { Witness, None, NoneFound };

  Status status = Status::NoneFound;
  std::size_t m = 1, rank_bound = 0;
  std::vector<Polynomial<F>> witness;                    // basis of the subspace
  std::vector<std::vector<value_type>> coefficients;     // in terms of W's basis
  std::size_t witness_rank = 0;                          // max rank over the witness span
  bool witness_certified = false;                        // holds over the algebraic closure
  bool exhaustive = false;                               // every k-rational candidate was tried
  std::size_t candidates = 0;
  std::optional<long> locus_dim;
  std::optional<std::uint64_t> locus_degree;
  std::string regime;
};

namespace detail {

template <Field F>
std::size_t rank_of_polynomial(const Polynomial<F>& p) {
  return rank_of_quadric(QuadraticForm<F>(p));
}

/// Checks that every member of span(P) has rank <= b. Returns the largest rank
/// seen and whether the check covers the algebraic closure.
template <Field F>
std::pair<std::size_t, bool> span_rank(const std::vector<Polynomial<F>>& P, std::size_t b, std::size_t& evaluations) {
  const F& k = P.front().field();
  const std::size_t m = P.size();
  if (m == 1) {
    ++evaluations;
    return {rank_of_polynomial(P.front()), k.characteristic() != 2};
  }
  // A minor of degree b+1 vanishing on a grid with b+2 values per axis is zero.
  const std::uint64_t p = k.characteristic();
  const std::size_t g = (p == 0 || p >= b + 2) ? b + 2 : static_cast<std::size_t>(p);
  const bool full = g == b + 2 && p != 2;
  std::size_t worst = 0;
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    std::size_t i = 0;
    while (i < m && idx[i] == g - 1) idx[i++] = 0;
    if (i == m) break;
    ++idx[i];
    Polynomial<F> q(P.front().ring());
    for (std::size_t s = 0; s < m; ++s)
      if (idx[s]) q = q + P[s].scaled(k.from_int(static_cast<long>(idx[s])));
    ++evaluations;
    worst = std::max(worst, rank_of_polynomial(q));
    if (worst > b) break;
  }
  return {worst, full};
}

}  // namespace detail

/// Looks for an m-dimensional subspace of W all of whose members have rank
/// <= b. Candidates are reduced row echelon coefficient matrices with entries
/// in GF(p) (all of k) or in [-height, height] over Q. Over odd characteristic
/// and Q the exact rank locus is computed first; an empty locus, or one of
/// dimension below m - 1, proves that no subspace exists even over the
/// algebraic closure.
template <Field F>
LowRankSearch<F> low_rank_subspace_search(const QuadricSpace<F>& W, std::size_t m, std::size_t b, const SearchOptions& opt = {}) {
  using value_type = typename F::value_type;
  using Result = LowRankSearch<F>;
  const F& k = W.ring()->field();
  const std::uint64_t p = k.characteristic();
  const std::size_t D = W.dim();
  Result out;
  out.m = m;
  out.rank_bound = b;
  if (m == 0) throw std::invalid_argument("low-rank search: m must be positive");
  if (D < m) {
    out.status = Result::Status::None;
    out.exhaustive = true;
    out.regime = "space too small";
    return out;
  }
  if (p != 2) {
    auto L = rank_locus(W, b);
    out.locus_dim = L.projective_dim;
    out.locus_degree = L.degree;
    if (L.projective_dim < static_cast<long>(m) - 1) {
      out.status = Result::Status::None;
      out.regime = "exact rank locus";
      return out;
    }
  }
  // alphabet in order of size: 0, 1, -1, 2, -2, ... over Q and 0, 1, .., p-1 over GF(p)
  std::vector<value_type> alphabet{k.zero()};
  if (p == 0) {
    for (long v = 1; v <= opt.height; ++v) {
      alphabet.push_back(k.from_int(v));
      alphabet.push_back(k.from_int(-v));
    }
  } else {
    for (std::uint64_t v = 1; v < p; ++v) alphabet.push_back(k.from_int(static_cast<long>(v)));
  }
  out.regime = p == 0 ? "integer coefficients of height " + std::to_string(opt.height) : "exhaustive over " + k.name();
  const auto pivot_sets = detail::subsets(D, m);
  std::size_t evaluations = 0;
  bool budget_hit = false;
  // Level L uses the first L alphabet entries and at least one entry L-1, so
  // sparse small combinations come first.
  for (std::size_t level = 1; level <= alphabet.size() && !budget_hit; ++level) {
    for (const auto& pivots : pivot_sets) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = pivots[i] + 1; j < D; ++j)
          if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free.push_back({i, j});
      if (level > 1 && free.empty()) continue;
      std::vector<std::size_t> idx(free.size(), 0);
      // next index vector in [0, level)^f containing the value level-1
      auto advance = [&] {
        while (true) {
          std::size_t f = 0;
          while (f < idx.size() && idx[f] == level - 1) idx[f++] = 0;
          if (f == idx.size()) return false;
          ++idx[f];
          if (std::find(idx.begin(), idx.end(), level - 1) != idx.end()) return true;
        }
      };
      if (level > 1 && !advance()) continue;
      while (true) {
        if (out.candidates >= opt.max_candidates) {
          budget_hit = true;
          break;
        }
        ++out.candidates;
        std::vector<std::vector<value_type>> rows(m, std::vector<value_type>(D, k.zero()));
        for (std::size_t i = 0; i < m; ++i) rows[i][pivots[i]] = k.one();
        for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = alphabet[idx[f]];
        std::vector<Polynomial<F>> P;
        for (const auto& c : rows) P.push_back(W.combination(c));
        auto [rank, full] = detail::span_rank(P, b, evaluations);
        if (rank <= b) {
          out.status = Result::Status::Witness;
          out.witness = std::move(P);
          out.coefficients = std::move(rows);
          out.witness_rank = rank;
          out.witness_certified = full;
          return out;
        }
        if (level == 1 || !advance()) break;
      }
      if (budget_hit) break;
    }
  }
  out.exhaustive = p != 0 && !budget_hit;
  // Over a finite field of odd characteristic an exhausted search rules out
  // every k-rational subspace.
  out.status = (out.exhaustive && p != 2) ? Result::Status::None : Result::Status::NoneFound;
  if (budget_hit) out.regime += ", budget exhausted";
  return out;
}

template <Field F>
LowRankSearch<F> low_rank_member_search(const QuadricSpace<F>& W, std::size_t b, const SearchOptions& opt = {}) {
  return low_rank_subspace_search(W, 1, b, opt);
}

// ---------------------------------------------------------------------------
// Reduction modulo a prime

inline PrimeField::value_type reduce_coefficient(const RationalField&, const mpq_class& c, const PrimeField& target) {
  return target.from_rational(c);
}

inline PrimeField::value_type reduce_coefficient(const PrimeField& source, PrimeField::value_type c, const PrimeField& target) {
  if (source.prime() != target.prime()) throw std::invalid_argument("cannot reduce GF(" + std::to_string(source.prime()) + ") coefficients to " + target.name());
  return c;
}

template <Field F>
std::vector<Polynomial<PrimeField>> reduce_mod(const std::vector<Polynomial<F>>& gens, const RingPtr<F>& ring, std::uint32_t q) {
  PrimeField target(q);
  auto R = make_ring(target, ring->names(), ring->order(), ring->blocks());
  std::vector<Polynomial<PrimeField>> out;
  for (const auto& g : gens) {
    std::vector<Term<PrimeField>> t;
    for (const auto& term : g.terms()) t.push_back({reduce_coefficient(ring->field(), term.coeff, target), term.mono});
    out.push_back(Polynomial<PrimeField>::from_terms(R, std::move(t)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The rank condition

struct SearchMode {
  enum class Kind { Exact, FiniteField } kind = Kind::Exact;
  std::uint32_t q = 0;

  static SearchMode exact() { return {}; }
  static SearchMode finite_field(std::uint32_t q) { return {Kind::FiniteField, q}; }
  /// "exact" or "gf:q".
  static SearchMode parse(const std::string& s) {
    if (s == "exact") return exact();
    if (s.rfind("gf:", 0) == 0) {
      std::size_t used = 0;
      unsigned long q = 0;
      try {
        q = std::stoul(s.substr(3), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == s.size() - 3 && used > 0 && is_prime(q) && q < (1ul << 31)) return finite_field(static_cast<std::uint32_t>(q));
    }
    throw std::invalid_argument("search mode must be 'exact' or 'gf:<prime>', got '" + s + "'");
  }
  std::string name() const { return kind == Kind::Exact ? "exact" : "gf:" + std::to_string(q); }
};

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

struct RankCheck {
  std::size_t m = 0, rank_bound = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::vector<std::string> witness;  // printed basis of the subspace found
  std::size_t witness_rank = 0;
  std::size_t candidates = 0;
  std::optional<long> locus_dim;
};

struct NecessaryCondition {
  std::size_t r = 0, n = 0, codim = 0;  // dim S, dim S/I, codim I
  std::size_t quadrics = 0;             // dim I_2
  std::optional<Exponent> generator_degree;
  std::vector<RankCheck> checks;
  std::string mode;
  /// Obstructed: some check failed definitively, so I has no quadratic initial
  /// ideal in any coordinates and for any order.
  enum class Outcome { Obstructed, Passed, Inconclusive } outcome = Outcome::Inconclusive;
  std::optional<std::size_t> failing_m;  // 0 when a minimal generator has degree > 2
};

inline std::string to_string(NecessaryCondition::Outcome o) {
  switch (o) {
    case NecessaryCondition::Outcome::Obstructed: return "obstructed";
    case NecessaryCondition::Outcome::Passed: return "passed";
    default: return "inconclusive";
  }
}

namespace detail {

template <Field K>
RankCheck run_rank_check(const QuadricSpace<K>& W, std::size_t m, std::size_t b, bool certifies, const SearchOptions& opt) {
  RankCheck c;
  c.m = m;
  c.rank_bound = b;
  auto s = low_rank_subspace_search(W, m, b, opt);
  c.candidates = s.candidates;
  c.locus_dim = s.locus_dim;
  using S = typename LowRankSearch<K>::Status;
  if (s.status == S::Witness) {
    for (const auto& q : s.witness) c.witness.push_back(q.to_string());
    c.witness_rank = s.witness_rank;
    c.verdict = certifies && s.witness_certified ? Verdict::Pass : Verdict::Inconclusive;
    c.reason = "subspace found (" + s.regime + ")";
    if (c.verdict != Verdict::Pass) c.reason += "; evidence only";
  } else if (s.status == S::None && certifies) {
    c.verdict = Verdict::Fail;
    c.reason = "none exists (" + s.regime + ")";
  } else {
    c.verdict = Verdict::Inconclusive;
    c.reason = "none found (" + s.regime + "); evidence only";
  }
  return c;
}

}  // namespace detail

/// For m = 1..codim(I): does I_2 contain an m-dimensional space of quadrics of
/// rank <= 2(n+m) - 1, n = dim S/I? Every ideal with a quadratic initial ideal
/// (in some coordinates, for some order) passes all of them.
template <Field F>
NecessaryCondition obstruction_necessary_condition(const std::vector<Polynomial<F>>& gens, const SearchMode& mode = {}, const SearchOptions& opt = {}) {
  if (gens.empty()) throw std::invalid_argument("obstruction: empty generator list needs a ring");
  const auto& ring = gens.front().ring();
  for (const auto& g : gens)
    if (!g.is_homogeneous()) throw std::invalid_argument("obstruction: generators must be homogeneous");
  NecessaryCondition out;
  out.mode = mode.name();
  out.r = ring->nvars();
  auto G = buchberger(ring, gens);
  auto in = G.initial_ideal();
  out.n = in.is_unit() ? 0 : krull_dimension(in);
  out.codim = out.r - out.n;
  out.generator_degree = delta(gens);
  auto W = quadrics_in(ring, gens);
  out.quadrics = W.dim();
  if (out.generator_degree && *out.generator_degree > 2) {
    out.outcome = NecessaryCondition::Outcome::Obstructed;
    out.failing_m = 0;
    return out;
  }
  bool all_pass = true;
  for (std::size_t m = 1; m <= out.codim; ++m) {
    const std::size_t b = 2 * (out.n + m) - 1;
    RankCheck c;
    if (W.dim() < m) {
      c.m = m;
      c.rank_bound = b;
      c.verdict = Verdict::Fail;
      c.reason = "I_2 has dimension " + std::to_string(W.dim());
    } else if (b >= out.r) {
      c.m = m;
      c.rank_bound = b;
      c.verdict = Verdict::Pass;
      c.reason = "bound at least the number of variables";
      for (std::size_t i = 0; i < m; ++i) c.witness.push_back(W.basis()[i].polynomial().to_string());
      c.witness_rank = out.r;
    } else if (mode.kind == SearchMode::Kind::Exact) {
      c = detail::run_rank_check(W, m, b, true, opt);
    } else {
      auto Gq = reduce_mod(gens, ring, mode.q);
      auto Wq = quadrics_in(Gq.front().ring(), Gq);
      bool same_field = ring->field().characteristic() == mode.q;
      c = detail::run_rank_check(Wq, m, b, same_field, opt);
    }
    if (c.verdict == Verdict::Fail && !out.failing_m) out.failing_m = m;
    if (c.verdict != Verdict::Pass) all_pass = false;
    out.checks.push_back(std::move(c));
  }
  if (out.failing_m) out.outcome = NecessaryCondition::Outcome::Obstructed;
  else if (all_pass) out.outcome = NecessaryCondition::Outcome::Passed;
  return out;
}

// ---------------------------------------------------------------------------
// Dimension count

struct DimensionCount {
  mpq_class dim_Q;      // upper bound for the ideals with a quadratic initial ideal
  mpq_class dim_Gr;     // Grassmannian of e-dimensional subspaces of S^2 V
  mpq_class threshold;  // (e-1)(e-2)/6
  bool obstructed = false;          // n < threshold
  bool formula_agrees = false;      // (dim_Q < dim_Gr) == obstructed
};

/// dim V = e + n: dim_Q = e(n + (e+n)(e+n+1)/2 - (e+1)(e+2)/6) against
/// dim_Gr = e((e+n)(e+n+1)/2 - e).
inline DimensionCount dimension_count(long n, long e) {
  if (n < 0 || e < 1) throw std::invalid_argument("dimension count: need n >= 0 and e >= 1");
  const mpq_class N(n), E(e);
  const mpq_class sym2 = (E + N) * (E + N + 1) / 2;
  DimensionCount d;
  d.dim_Q = E * (N + sym2 - (E + 1) * (E + 2) / 6);
  d.dim_Gr = E * (sym2 - E);
  d.threshold = (E - 1) * (E - 2) / 6;
  d.dim_Q.canonicalize();
  d.dim_Gr.canonicalize();
  d.threshold.canonicalize();
  d.obstructed = N < d.threshold;
  d.formula_agrees = (d.dim_Q < d.dim_Gr) == d.obstructed;
  return d;
}

}  // namespace quadgb
