#pragma once

// The Groebner fan of a homogeneous ideal in fixed coordinates: every
// distinct initial ideal with an integer weight vector that certifies it,
// found by flipping across the facets of Groebner cones.

#include "quadgb/groebner.hpp"
#include "quadgb/lp.hpp"

#include <chrono>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>
#include <set>

namespace quadgb {

struct FanCell {
  std::vector<std::int64_t> weight_vector;  // interior point of the cone, positive entries
  MonomialIdeal initial_ideal;
  std::vector<std::size_t> degree_profile;  // number of minimal generators in each degree
  std::size_t basis_size = 0;
  std::size_t facets = 0;
  bool verified = false;                    // recomputation under weight_vector reproduces initial_ideal
};

struct FanOptions {
  std::size_t max_cells = 10000;
  double max_seconds = 60;
  unsigned threads = 0;  // 0: QGB_THREADS or 1
};

struct GroebnerFan {
  std::vector<FanCell> cells;  // sorted by initial ideal
  bool complete = true;
  std::string note;
  std::size_t flips = 0;
};

namespace detail {

using IntVec = std::vector<std::int64_t>;

inline IntVec primitive(IntVec v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

/// Integer vector in the direction of a rational one.
inline IntVec integerize(const std::vector<mpq_class>& w) {
  mpz_class l = 1;
  for (const auto& q : w) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& q : w) {
    z.push_back(q.get_num() * (l / q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  IntVec out;
  for (auto& x : z) {
    if (g > 1) x /= g;
    if (!x.fits_slong_p()) throw std::overflow_error("fan: weight vector entry too large");
    out.push_back(x.get_si());
  }
  return out;
}

/// Moves w along (1,..,1), which every cone of a homogeneous ideal contains
/// in its lineality space, until its smallest entry is 1; then divides by the gcd.
inline IntVec make_positive(IntVec w) {
  if (w.empty()) return w;
  const std::int64_t shift = 1 - *std::min_element(w.begin(), w.end());
  for (auto& x : w) x += shift;
  std::int64_t g = 0;
  for (auto x : w) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : w) x /= g;
  return w;
}

inline std::int64_t dot(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Inequalities w.(lead - tail) >= 0 of the closed cone of a reduced basis.
template <Field F>
std::vector<IntVec> cone_inequalities(const GroebnerBasis<F>& G) {
  std::set<IntVec> out;
  for (const auto& g : G.elements) {
    const auto& a = g.leading_monomial();
    for (std::size_t t = 1; t < g.terms().size(); ++t) {
      const auto& b = g.terms()[t].mono;
      IntVec v(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) v[i] = static_cast<std::int64_t>(a[i]) - b[i];
      out.insert(primitive(std::move(v)));
    }
  }
  return {out.begin(), out.end()};
}

/// A point with u.w >= 1 for every u in `strict` and v.w = 0 when `on` is given.
inline std::optional<std::vector<mpq_class>> cone_point(std::size_t n, const std::vector<IntVec>& strict, const IntVec* on) {
  lp::Problem P(n);
  P.free.assign(n, true);
  for (const auto& u : strict) {
    if (on && &u == on) continue;
    P.add(std::vector<mpq_class>(u.begin(), u.end()), lp::Relation::GreaterEqual, 1);
  }
  if (on) P.add(std::vector<mpq_class>(on->begin(), on->end()), lp::Relation::Equal, 0);
  auto r = lp::solve(P);
  if (r.status == lp::Status::Infeasible) return std::nullopt;
  return r.x;
}

struct Facet {
  IntVec normal;
  IntVec point;  // relative interior point of the facet
};

template <Field F>
struct ConeData {
  GroebnerBasis<F> basis;
  MonomialIdeal initial;
  std::vector<IntVec> inequalities;
};

template <Field F>
ConeData<F> cone_of(const std::vector<Polynomial<F>>& gens, const RingPtr<F>& R) {
  std::vector<Polynomial<F>> moved;
  for (const auto& g : gens) moved.push_back(g.in_ring(R));
  ConeData<F> c{buchberger(R, moved), MonomialIdeal(R->nvars(), {}), {}};
  c.initial = c.basis.initial_ideal();
  c.inequalities = cone_inequalities(c.basis);
  return c;
}

inline std::vector<Monomial> canonical_key(const MonomialIdeal& I) {
  auto g = I.gens();
  std::sort(g.begin(), g.end());
  return g;
}

inline unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("QGB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace detail

/// Every distinct initial ideal of the homogeneous ideal generated by gens,
/// within the given coordinates.
template <Field F>
GroebnerFan groebner_fan(const std::vector<Polynomial<F>>& gens, const FanOptions& opt = {}) {
  using namespace detail;
  if (gens.empty()) throw std::invalid_argument("fan: empty generator list");
  const auto& base = gens.front().ring();
  const std::size_t n = base->nvars();
  for (const auto& g : gens)
    if (!g.is_homogeneous()) throw std::invalid_argument("fan: generators must be homogeneous");
  const auto start = std::chrono::steady_clock::now();
  const unsigned threads = thread_count(opt.threads);
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  GroebnerFan fan;
  std::set<std::vector<Monomial>> seen;
  std::vector<ConeData<F>> level{cone_of(gens, base->with_order(MonomialOrder::grevlex(n)))};
  seen.insert(canonical_key(level.front().initial));

  while (!level.empty()) {
    std::vector<std::pair<IntVec, IntVec>> flips;  // (facet point, facet normal)
    for (auto& c : level) {
      FanCell cell;
      cell.initial_ideal = c.initial;
      cell.degree_profile = c.initial.degree_profile();
      cell.basis_size = c.basis.elements.size();
      auto interior = cone_point(n, c.inequalities, nullptr);
      if (!interior) throw std::logic_error("fan: Groebner cone has empty interior");
      cell.weight_vector = make_positive(integerize(*interior));
      for (const auto& v : c.inequalities) {
        auto p = cone_point(n, c.inequalities, &v);
        if (!p) continue;
        ++cell.facets;
        flips.push_back({integerize(*p), v});
      }
      auto check = cone_of(gens, base->with_order(MonomialOrder::weight(n, {cell.weight_vector})));
      cell.verified = check.initial.gens() == c.initial.gens() || canonical_key(check.initial) == canonical_key(c.initial);
      fan.cells.push_back(std::move(cell));
    }
    // Just across a facet with relative interior point p and inner normal v
    // the order refines p first and then -v.
    auto flip = [&](const std::pair<IntVec, IntVec>& f) {
      IntVec minus(f.second.size());
      for (std::size_t i = 0; i < minus.size(); ++i) minus[i] = -f.second[i];
      return cone_of(gens, base->with_order(MonomialOrder::weight(n, {f.first, minus})));
    };
    std::vector<ConeData<F>> results;
    for (std::size_t s = 0; s < flips.size(); s += threads) {
      if (elapsed() > opt.max_seconds) break;
      std::vector<std::future<ConeData<F>>> batch;
      for (std::size_t t = s; t < std::min(flips.size(), s + threads); ++t)
        batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, flip, std::cref(flips[t])));
      for (auto& b : batch) results.push_back(b.get());
      fan.flips += batch.size();
    }
    if (results.size() < flips.size()) {
      fan.complete = false;
      fan.note = "time budget exhausted";
      break;
    }
    std::vector<ConeData<F>> next;
    for (auto& c : results) {
      if (!seen.insert(canonical_key(c.initial)).second) continue;
      if (fan.cells.size() + next.size() >= opt.max_cells) {
        fan.complete = false;
        fan.note = "cell budget exhausted";
        break;
      }
      next.push_back(std::move(c));
    }
    if (!fan.complete) {
      level = std::move(next);
      for (auto& c : level) {
        FanCell cell;
        cell.initial_ideal = c.initial;
        cell.degree_profile = c.initial.degree_profile();
        cell.basis_size = c.basis.elements.size();
        if (auto p = cone_point(n, c.inequalities, nullptr)) cell.weight_vector = make_positive(integerize(*p));
        fan.cells.push_back(std::move(cell));
      }
      break;
    }
    level = std::move(next);
  }
  std::sort(fan.cells.begin(), fan.cells.end(), [](const FanCell& a, const FanCell& b) {
    return canonical_key(a.initial_ideal) < canonical_key(b.initial_ideal);
  });
  return fan;
}

struct DeltaEstimate {
  Exponent value = 0;  // min over cells of the largest generator degree
  bool partial = false;
  std::size_t cells = 0;
};

/// Upper bound for the least generator degree of an initial ideal over all
/// coordinates and orders, from the orders available in fixed coordinates.
inline DeltaEstimate delta_within_coordinates(const GroebnerFan& fan) {
  if (fan.cells.empty()) throw std::invalid_argument("delta: empty fan");
  DeltaEstimate d;
  d.partial = !fan.complete;
  d.cells = fan.cells.size();
  d.value = std::numeric_limits<Exponent>::max();
  for (const auto& c : fan.cells) d.value = std::min(d.value, c.initial_ideal.delta().value_or(0));
  return d;
}

template <Field F>
DeltaEstimate delta_within_coordinates(const std::vector<Polynomial<F>>& gens, const FanOptions& opt = {}) {
  return delta_within_coordinates(groebner_fan(gens, opt));
}

/// Variables y_ij (i <= j) of a generic symmetric r x r matrix and its 2 x 2 minors.
template <Field F>
std::vector<Polynomial<F>> symmetric_minors(const F& field, std::size_t r) {
  if (r < 2) throw std::invalid_argument("symmetric minors: need r >= 2");
  std::vector<std::string> names;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      index[{i, j}] = names.size();
      names.push_back("y" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  auto R = make_ring(field, names, MonomialOrder::grevlex(names.size()));
  auto y = [&](std::size_t i, std::size_t j) { return Polynomial<F>::variable(R, index.at({std::min(i, j), std::max(i, j)})); };
  SparseEchelon<F> span(R);
  std::vector<Polynomial<F>> out;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = i + 1; k < r; ++k)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t l = j + 1; l < r; ++l) {
          auto m = y(i, j) * y(k, l) - y(i, l) * y(k, j);
          if (!m.is_zero() && span.insert(m)) out.push_back(m);
        }
  return out;
}

}  // namespace quadgb
