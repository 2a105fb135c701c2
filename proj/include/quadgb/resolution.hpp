#pragma once

// Graded free resolutions over quotients A = S/J by slice linear algebra:
// minimal resolutions, Betti tables, rate, and the filtration resolution of
// monomial modules with weight bounds.

#include "quadgb/groebner.hpp"

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <unordered_map>

namespace quadgb {

enum class Grading { Coarse, Fine };

/// Coarse degrees have one entry; fine degrees are exponent vectors.
using Degree = std::vector<Exponent>;

namespace detail {

inline Exponent total(const Degree& d) { return std::accumulate(d.begin(), d.end(), Exponent{0}); }

inline bool degree_leq(const Degree& a, const Degree& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Degree degree_sub(const Degree& a, const Degree& b) {
  Degree d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

inline Degree degree_add(const Degree& a, const Degree& b) {
  Degree d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] + b[i];
  return d;
}

inline Degree degree_max(const Degree& a, const Degree& b) {
  Degree d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::max(a[i], b[i]);
  return d;
}

/// Degrees of total t, restricted to a box when one is given.
inline std::vector<Degree> degrees_of_total(std::size_t nvars, Grading g, Exponent t, const std::optional<Degree>& box) {
  if (g == Grading::Coarse) return {Degree{t}};
  std::vector<Degree> out;
  for_each_monomial(nvars, t, [&](const Monomial& m) {
    auto v = m.to_vector();
    if (!box || degree_leq(v, *box)) out.push_back(std::move(v));
  });
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// A = S/J with normal forms from a reduced Groebner basis of J.
template <Field F>
class QuotientRing {
 public:
  QuotientRing(RingPtr<F> ring, const std::vector<Polynomial<F>>& relations)
      : ring_(ring), gb_(buchberger(ring, relations)), initial_(gb_.initial_ideal()) {
    for (const auto& g : relations)
      if (!g.is_homogeneous()) throw std::invalid_argument("quotient ring: relations must be homogeneous");
    monomial_ = std::all_of(gb_.elements.begin(), gb_.elements.end(), [](const Polynomial<F>& g) { return g.size() == 1; });
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  std::size_t nvars() const { return ring_->nvars(); }
  const GroebnerBasis<F>& basis() const { return gb_; }
  const MonomialIdeal& initial() const { return initial_; }
  bool is_monomial() const { return monomial_; }

  Polynomial<F> reduce(const Polynomial<F>& p) const {
    if (!monomial_) return normal_form(p, gb_);
    std::vector<Term<F>> keep;
    for (const auto& t : p.terms())
      if (!initial_.contains(t.mono)) keep.push_back(t);
    return Polynomial<F>::from_sorted(ring_, std::move(keep));
  }

  const std::vector<Monomial>& standard_monomials(Exponent t) const {
    auto it = standard_.find(t);
    if (it != standard_.end()) return it->second;
    std::vector<Monomial> v;
    if (t >= 0)
      for_each_monomial(nvars(), t, [&](const Monomial& m) {
        if (!initial_.contains(m)) v.push_back(m);
      });
    return standard_.emplace(t, std::move(v)).first->second;
  }

  Degree degree_of(const Monomial& m, Grading g) const {
    if (g == Grading::Coarse) return {m.degree()};
    return m.to_vector();
  }

 private:
  RingPtr<F> ring_;
  GroebnerBasis<F> gb_;
  MonomialIdeal initial_;
  bool monomial_ = false;
  mutable std::map<Exponent, std::vector<Monomial>> standard_;
};

/// A homogeneous element of a free module, one polynomial per basis vector.
template <Field F>
struct ModuleElement {
  Degree degree;
  std::vector<Polynomial<F>> comps;
};

namespace detail {

template <Field F>
std::vector<Polynomial<F>> times(const QuotientRing<F>& A, const std::vector<Polynomial<F>>& comps, const Monomial& m) {
  std::vector<Polynomial<F>> out;
  out.reserve(comps.size());
  for (const auto& c : comps) out.push_back(A.reduce(c.mul_term(A.field().one(), m)));
  return out;
}

/// The degree-D piece of a free A-module, with coordinates (generator, standard monomial).
template <Field F>
class Slice {
 public:
  using value_type = typename F::value_type;
  using Vector = std::vector<value_type>;

  Slice(const QuotientRing<F>& A, const std::vector<Degree>& gen_degrees, const Degree& D, Grading g)
      : A_(&A), index_(gen_degrees.size()) {
    for (std::size_t j = 0; j < gen_degrees.size(); ++j) {
      if (!degree_leq(gen_degrees[j], D)) continue;
      auto diff = degree_sub(D, gen_degrees[j]);
      if (g == Grading::Fine) {
        Monomial m(diff);
        if (!A.initial().contains(m)) add(j, m);
      } else {
        for (const auto& m : A.standard_monomials(diff[0])) add(j, m);
      }
    }
  }

  std::size_t size() const { return basis_.size(); }
  const std::vector<std::pair<std::size_t, Monomial>>& basis() const { return basis_; }

  Vector coords(const std::vector<Polynomial<F>>& comps) const {
    const F& k = A_->field();
    Vector v(basis_.size(), k.zero());
    for (std::size_t j = 0; j < comps.size(); ++j)
      for (const auto& t : comps[j].terms()) {
        auto it = index_[j].find(t.mono);
        if (it == index_[j].end()) throw std::logic_error("slice: element is not homogeneous of the slice degree");
        v[it->second] = k.add(v[it->second], t.coeff);
      }
    return v;
  }

  std::vector<Polynomial<F>> element(const Vector& v) const {
    std::vector<std::vector<Term<F>>> terms(index_.size());
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!A_->field().is_zero(v[c])) terms[basis_[c].first].push_back(Term<F>{v[c], basis_[c].second});
    std::vector<Polynomial<F>> out;
    for (auto& t : terms) out.push_back(Polynomial<F>::from_terms(A_->ring(), std::move(t)));
    return out;
  }

 private:
  void add(std::size_t j, const Monomial& m) {
    index_[j].emplace(m, basis_.size());
    basis_.emplace_back(j, m);
  }

  const QuotientRing<F>* A_;
  std::vector<std::pair<std::size_t, Monomial>> basis_;
  std::vector<std::unordered_map<Monomial, std::size_t, MonomialHash>> index_;
};

/// Matrix of the map F_src -> F_tgt at degree D, where images[j] is the image of the j-th generator.
template <Field F>
Matrix<F> slice_matrix(const QuotientRing<F>& A, const Slice<F>& src, const Slice<F>& tgt,
                       const std::vector<std::vector<Polynomial<F>>>& images) {
  Matrix<F> M(A.field(), tgt.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const auto& [j, m] = src.basis()[c];
    auto col = tgt.coords(times(A, images[j], m));
    for (std::size_t r = 0; r < col.size(); ++r) M(r, c) = col[r];
  }
  return M;
}

}  // namespace detail

struct BettiTable {
  enum class Status { Nonzero, ZeroUpToCutoff, Zero };

  std::size_t i_max = 0;
  Exponent j_max = 0;
  std::map<std::pair<std::size_t, Exponent>, std::uint64_t> entries;
  std::map<std::pair<std::size_t, Degree>, std::uint64_t> fine;
  bool complete = false;  // no syzygy can lie beyond the degree cutoff

  std::uint64_t betti(std::size_t i, Exponent j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }

  std::uint64_t rank(std::size_t i) const {
    std::uint64_t s = 0;
    for (const auto& [k, v] : entries)
      if (k.first == i) s += v;
    return s;
  }

  std::optional<Exponent> t(std::size_t i) const {
    std::optional<Exponent> best;
    for (const auto& [k, v] : entries)
      if (k.first == i && v > 0) best = std::max(best.value_or(k.second), k.second);
    return best;
  }

  Status status(std::size_t i) const {
    if (i > i_max) throw std::out_of_range("betti table: homological degree beyond the cutoff");
    if (rank(i) > 0) return Status::Nonzero;
    return complete ? Status::Zero : Status::ZeroUpToCutoff;
  }

  /// Rows j - i, columns i.
  std::string to_string() const {
    Exponent lo = 0, hi = 0;
    bool any = false;
    for (const auto& [k, v] : entries) {
      Exponent row = k.second - static_cast<Exponent>(k.first);
      lo = any ? std::min(lo, row) : row;
      hi = any ? std::max(hi, row) : row;
      any = true;
    }
    std::ostringstream os;
    auto cell = [](std::string s) { return std::string(s.size() < 6 ? 6 - s.size() : 1, ' ') + s; };
    os << "       ";
    for (std::size_t i = 0; i <= i_max; ++i) os << cell(std::to_string(i));
    os << "\ntotal: ";
    for (std::size_t i = 0; i <= i_max; ++i) os << cell(std::to_string(rank(i)));
    os << "\n";
    if (any)
      for (Exponent row = lo; row <= hi; ++row) {
        std::string lab = std::to_string(row) + ":";
        os << std::string(lab.size() < 7 ? 7 - lab.size() : 0, ' ') << lab;
        for (std::size_t i = 0; i <= i_max; ++i) {
          auto b = betti(i, row + static_cast<Exponent>(i));
          os << cell(b ? std::to_string(b) : ".");
        }
        os << "\n";
      }
    return os.str();
  }
};

struct ResolutionOptions {
  std::size_t i_max = 4;
  Exponent j_max = 8;
  Grading grading = Grading::Coarse;
  std::optional<Degree> box;  // fine grading: every syzygy degree lies below it
  bool audit = true;
};

template <Field F>
struct Resolution {
  BettiTable betti;
  std::vector<std::vector<ModuleElement<F>>> maps;  // maps[i]: generators of F_i with their images in F_{i-1}
  bool minimal = true;
  bool exact = true;
  std::vector<std::string> audit_log;
};

template <Field F>
std::vector<Polynomial<F>> residue_field_relations(const RingPtr<F>& ring) {
  std::vector<Polynomial<F>> v;
  for (std::size_t i = 0; i < ring->nvars(); ++i) v.push_back(Polynomial<F>::variable(ring, i));
  return v;
}

/// Minimal graded free resolution of M = A/N, N generated by `relations`.
template <Field F>
Resolution<F> minimal_resolution(const QuotientRing<F>& A, const std::vector<Polynomial<F>>& relations, const ResolutionOptions& opt) {
  using Vector = typename detail::Slice<F>::Vector;
  const F& k = A.field();
  const std::size_t n = A.nvars();
  const Grading g = opt.grading;
  if (g == Grading::Fine) {
    if (!A.is_monomial()) throw std::invalid_argument("fine grading needs a monomial quotient ring");
    for (const auto& r : relations)
      if (r.size() > 1) throw std::invalid_argument("fine grading needs monomial relations");
  }
  std::vector<Polynomial<F>> rels;
  for (const auto& r : relations) {
    if (!r.is_homogeneous()) throw std::invalid_argument("minimal_resolution: relations must be homogeneous");
    auto nf = A.reduce(r);
    if (!nf.is_zero()) rels.push_back(nf);
  }

  Resolution<F> res;
  res.betti.i_max = opt.i_max;
  res.betti.j_max = opt.j_max;
  res.betti.complete = opt.box.has_value();
  res.maps.resize(opt.i_max + 1);
  if (std::any_of(rels.begin(), rels.end(), [](const Polynomial<F>& r) { return r.degree() == 0; })) {
    res.betti.complete = true;
    return res;  // M = 0
  }

  Degree zero = g == Grading::Coarse ? Degree{0} : Degree(n, 0);
  res.maps[0].push_back(ModuleElement<F>{zero, {}});
  auto record = [&](std::size_t i, const Degree& D) {
    ++res.betti.entries[{i, detail::total(D)}];
    if (g == Grading::Fine) ++res.betti.fine[{i, D}];
  };
  record(0, zero);

  std::map<Degree, std::size_t> prev_kernel;
  for (std::size_t i = 0; i <= opt.i_max; ++i) {
    const auto& src_gens = res.maps[i];
    if (src_gens.empty()) break;
    std::vector<Degree> src_deg, tgt_deg;
    std::vector<std::vector<Polynomial<F>>> images;
    for (const auto& e : src_gens) {
      src_deg.push_back(e.degree);
      images.push_back(e.comps);
    }
    if (i > 0)
      for (const auto& e : res.maps[i - 1]) tgt_deg.push_back(e.degree);

    std::vector<ModuleElement<F>> next;
    std::map<Degree, std::size_t> kernel_dims;
    for (Exponent t = 0; t <= opt.j_max; ++t)
      for (const auto& D : detail::degrees_of_total(n, g, t, opt.box)) {
        detail::Slice<F> src(A, src_deg, D, g);
        if (src.size() == 0) continue;
        std::vector<Vector> K;
        if (i == 0) {
          DenseEchelon<F> span(k, src.size());
          for (const auto& r : rels) {
            auto rd = A.degree_of(r.leading_monomial(), g);
            if (!detail::degree_leq(rd, D)) continue;
            auto rest = detail::degree_sub(D, rd);
            std::vector<Monomial> mults;
            if (g == Grading::Fine) mults.push_back(Monomial(rest));
            else mults = A.standard_monomials(rest[0]);
            for (const auto& m : mults) {
              auto v = src.coords({A.reduce(r.mul_term(k.one(), m))});
              if (span.insert(v)) K.push_back(std::move(v));
            }
          }
        } else {
          detail::Slice<F> tgt(A, tgt_deg, D, g);
          auto M = detail::slice_matrix(A, src, tgt, images);
          K = M.kernel();
          if (opt.audit) {
            std::size_t rank = src.size() - K.size();
            auto it = prev_kernel.find(D);
            std::size_t expected = it == prev_kernel.end() ? 0 : it->second;
            if (rank != expected) {
              res.exact = false;
              res.audit_log.push_back("step " + std::to_string(i) + ": image rank " + std::to_string(rank) +
                                      " differs from kernel dimension " + std::to_string(expected) + " in degree " +
                                      std::to_string(detail::total(D)));
            }
          }
        }
        kernel_dims[D] = K.size();
        if (i == opt.i_max || K.empty()) continue;

        DenseEchelon<F> span(k, src.size());
        std::size_t before = next.size();
        for (std::size_t q = 0; q < before; ++q) {
          const auto& gen = next[q];
          if (!detail::degree_leq(gen.degree, D) || gen.degree == D) continue;
          auto rest = detail::degree_sub(D, gen.degree);
          std::vector<Monomial> mults;
          if (g == Grading::Fine) mults.push_back(Monomial(rest));
          else mults = A.standard_monomials(rest[0]);
          for (const auto& m : mults)
            if (!A.initial().contains(m)) span.insert(src.coords(detail::times(A, gen.comps, m)));
        }
        for (const auto& v : K)
          if (span.insert(v)) {
            next.push_back(ModuleElement<F>{D, src.element(v)});
            record(i + 1, D);
          }
      }
    prev_kernel = std::move(kernel_dims);
    if (i == opt.i_max) break;

    if (opt.audit)
      for (const auto& e : next)
        for (std::size_t j = 0; j < e.comps.size(); ++j)
          for (const auto& term : e.comps[j].terms())
            if (term.mono.is_one()) {
              res.minimal = false;
              res.audit_log.push_back("step " + std::to_string(i + 1) + ": unit entry in the differential");
            }
    res.maps[i + 1] = std::move(next);
  }
  return res;
}

/// Resolution of the residue field k = A/(x_1, ..., x_r).
template <Field F>
Resolution<F> resolve_residue_field(const QuotientRing<F>& A, const ResolutionOptions& opt) {
  return minimal_resolution(A, residue_field_relations(A.ring()), opt);
}

struct RateReport {
  std::map<std::size_t, Exponent> t;  // t_i for 2 <= i <= i_max where Tor_i is nonzero
  mpq_class rate_estimate = 0;
  std::size_t koszul_up_to = 0;
  std::size_t i_max = 0;
  bool up_to_cutoff = true;
};

/// Rate data of A from the Betti table of k.
inline RateReport rate_and_koszul(const BettiTable& k_table) {
  RateReport r;
  r.i_max = k_table.i_max;
  r.up_to_cutoff = !(k_table.complete && k_table.rank(k_table.i_max) == 0);
  for (std::size_t i = 2; i <= k_table.i_max; ++i)
    if (auto t = k_table.t(i)) {
      r.t[i] = *t;
      mpq_class q(*t - 1, static_cast<long>(i - 1));
      q.canonicalize();
      if (q > r.rate_estimate) r.rate_estimate = q;
    }
  r.koszul_up_to = k_table.i_max;
  for (std::size_t i = 1; i <= k_table.i_max; ++i) {
    bool linear = true;
    for (const auto& [key, v] : k_table.entries)
      if (key.first == i && v > 0 && key.second != static_cast<Exponent>(i)) linear = false;
    if (!linear) {
      r.koszul_up_to = i - 1;
      break;
    }
  }
  return r;
}

template <Field F>
RateReport rate_and_koszul(const QuotientRing<F>& A, std::size_t i_max, Exponent j_max) {
  ResolutionOptions opt;
  opt.i_max = i_max;
  opt.j_max = j_max;
  opt.grading = A.is_monomial() ? Grading::Fine : Grading::Coarse;
  return rate_and_koszul(resolve_residue_field(A, opt).betti);
}

/// Non-negative rational weights on the variables.
struct WeightFunction {
  std::vector<mpq_class> w;

  static WeightFunction standard(std::size_t n) { return {std::vector<mpq_class>(n, mpq_class(1))}; }

  mpq_class operator()(const Degree& d) const {
    mpq_class s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) s += w.at(i) * d[i];
    return s;
  }
  mpq_class operator()(const Monomial& m) const { return (*this)(m.to_vector()); }
};

/// Multigraded module over a monomial quotient: A/N (cyclic) or the ideal of A generated by monomials.
struct MonomialModule {
  enum class Kind { Cyclic, Ideal };
  Kind kind = Kind::Cyclic;
  std::vector<Monomial> gens;

  static MonomialModule residue_field(std::size_t n) {
    MonomialModule M;
    for (std::size_t i = 0; i < n; ++i) M.gens.push_back(Monomial::variable(n, i));
    return M;
  }
  static MonomialModule quotient(std::vector<Monomial> relations) { return {Kind::Cyclic, std::move(relations)}; }
  static MonomialModule ideal(std::vector<Monomial> generators) { return {Kind::Ideal, std::move(generators)}; }
};

template <Field F>
struct FiltrationResolution {
  std::vector<std::vector<ModuleElement<F>>> maps;  // maps[i]: generators of F_i with images in F_{i-1}
  std::vector<std::vector<MonomialIdeal>> colons;  // colons[i]: the ideals filtering ker(F_i -> F_{i-1})
  std::vector<mpq_class> max_weight;               // per F_i
  std::vector<mpq_class> bound;                    // d, d + e, d + e + f, ...
  mpq_class d = 0, e = 0, f = 0;
  mpq_class later_colon_weight = 0;  // largest weight of a colon generator after the first step
  bool within_bound = true;
  bool exact = true;
  std::vector<std::string> audit_log;
};

/// The resolution built from colon ideals (A g_1 + ... + A g_{l-1} :_A g_l) at every step.
template <Field F>
FiltrationResolution<F> filtration_resolution(const QuotientRing<F>& A, const MonomialModule& M, const WeightFunction& w,
                                              std::size_t i_max) {
  if (!A.is_monomial()) throw std::invalid_argument("filtration_resolution: the ring must be a monomial quotient");
  if (w.w.size() != A.nvars()) throw std::invalid_argument("filtration_resolution: weight vector has the wrong length");
  for (const auto& x : w.w)
    if (sgn(x) < 0) throw std::invalid_argument("filtration_resolution: weights must be non-negative");
  using Vector = typename detail::Slice<F>::Vector;
  const F& k = A.field();
  const std::size_t n = A.nvars();
  const auto& I = A.initial();
  const auto& R = A.ring();
  auto mono = [&](const Monomial& m, typename F::value_type c) { return Polynomial<F>::monomial(R, m, c); };
  auto zero_poly = [&] { return Polynomial<F>(R); };

  FiltrationResolution<F> out;
  // The free module P = A that the generators of an ideal module map into.
  std::vector<Degree> p_deg{Degree(n, 0)};

  std::vector<ModuleElement<F>> level0;
  if (M.kind == MonomialModule::Kind::Cyclic) {
    level0.push_back(ModuleElement<F>{Degree(n, 0), {}});
  } else {
    for (const auto& g : M.gens) level0.push_back(ModuleElement<F>{g.to_vector(), {mono(g, k.one())}});
  }
  out.maps.push_back(level0);
  for (const auto& g : level0) out.d = std::max(out.d, w(g.degree));

  auto degrees_of = [](const std::vector<ModuleElement<F>>& v) {
    std::vector<Degree> d;
    for (const auto& e : v) d.push_back(e.degree);
    return d;
  };

  // Kernel generators of the map whose generator images are hs (elements of a module with degrees tgt).
  std::vector<Degree> boxes;  // boxes[i]: every minimal generator of ker(F_i -> F_{i-1}) lies below it
  auto kernel_step = [&](const std::vector<ModuleElement<F>>& hs, const std::vector<Degree>& tgt,
                         std::vector<MonomialIdeal>& colons) {
    Degree lmax(n, 0);
    for (const auto& q : tgt) {
      lmax = detail::degree_max(lmax, q);
      for (const auto& g : I.gens()) lmax = detail::degree_max(lmax, detail::degree_add(q, g.to_vector()));
    }
    for (const auto& h : hs) lmax = detail::degree_max(lmax, h.degree);
    boxes.push_back(lmax);

    std::vector<ModuleElement<F>> next;
    for (std::size_t l = 0; l < hs.size(); ++l) {
      auto box = detail::degree_sub(lmax, hs[l].degree);
      std::vector<Monomial> found;
      for (Exponent t = 0; t <= detail::total(box); ++t)
        for (const auto& u : detail::degrees_of_total(n, Grading::Fine, t, box)) {
          Monomial um(u);
          if (I.contains(um)) continue;
          if (std::any_of(found.begin(), found.end(), [&](const Monomial& f) { return f.divides(um); })) continue;
          Degree D = detail::degree_add(hs[l].degree, u);
          detail::Slice<F> slice(A, tgt, D, Grading::Fine);
          Vector target = slice.coords(detail::times(A, hs[l].comps, um));
          std::vector<std::size_t> ks;
          std::vector<Vector> cols;
          for (std::size_t q = 0; q < l; ++q) {
            if (!detail::degree_leq(hs[q].degree, D)) continue;
            Monomial mq(detail::degree_sub(D, hs[q].degree));
            if (I.contains(mq)) continue;
            ks.push_back(q);
            cols.push_back(slice.coords(detail::times(A, hs[q].comps, mq)));
          }
          Matrix<F> Mx(k, slice.size(), cols.size());
          for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < slice.size(); ++r) Mx(r, c) = cols[c][r];
          auto sol = Mx.solve(target);
          if (!sol) continue;
          found.push_back(um);
          std::vector<Polynomial<F>> comps(hs.size(), zero_poly());
          comps[l] = mono(um, k.one());
          for (std::size_t c = 0; c < ks.size(); ++c)
            if (!k.is_zero((*sol)[c])) comps[ks[c]] = mono(Monomial(detail::degree_sub(D, hs[ks[c]].degree)), k.neg((*sol)[c]));
          next.push_back(ModuleElement<F>{D, std::move(comps)});
        }
      colons.emplace_back(n, found);
    }
    return next;
  };

  // First kernel: N itself for a cyclic module, colon ideals in P otherwise.
  std::vector<MonomialIdeal> first;
  std::vector<ModuleElement<F>> level1;
  if (M.kind == MonomialModule::Kind::Cyclic) {
    std::vector<Monomial> ns;
    MonomialIdeal N(n, M.gens);
    for (const auto& m : N.gens())
      if (!I.contains(m)) ns.push_back(m);
    first.emplace_back(n, ns);
    Degree box(n, 0);
    for (const auto& m : ns) box = detail::degree_max(box, m.to_vector());
    boxes.push_back(box);
    for (const auto& m : first.back().gens()) level1.push_back(ModuleElement<F>{m.to_vector(), {mono(m, k.one())}});
  } else {
    boxes.push_back(Degree(n, 0));
    level1 = kernel_step(level0, p_deg, first);
  }
  for (const auto& J : first)
    for (const auto& g : J.gens()) out.e = std::max(out.e, w(g));
  out.colons.push_back(first);

  mpq_class proper = 0;
  for (const auto& g : I.gens()) {
    mpq_class least = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] > 0 && (least < 0 || w.w[i] < least)) least = w.w[i];
    proper = std::max(proper, mpq_class(w(g) - least));
  }
  out.f = std::max(out.e, proper);

  if (i_max >= 1) out.maps.push_back(level1);
  for (std::size_t i = 2; i <= i_max; ++i) {
    std::vector<MonomialIdeal> cs;
    auto next = kernel_step(out.maps[i - 1], degrees_of(out.maps[i - 2]), cs);
    for (const auto& J : cs)
      for (const auto& g : J.gens()) out.later_colon_weight = std::max(out.later_colon_weight, w(g));
    out.colons.push_back(std::move(cs));
    out.maps.push_back(std::move(next));
  }

  for (std::size_t i = 0; i < out.maps.size(); ++i) {
    mpq_class mw = 0;
    for (const auto& g : out.maps[i]) mw = std::max(mw, w(g.degree));
    out.max_weight.push_back(mw);
    mpq_class b = out.d;
    if (i >= 1) b += out.e + mpq_class(static_cast<long>(i - 1)) * out.f;
    out.bound.push_back(b);
    if (mw > b) {
      out.within_bound = false;
      out.audit_log.push_back("step " + std::to_string(i) + ": weight " + mw.get_str() + " exceeds " + b.get_str());
    }
  }

  // Exactness: the image of F_{i+1} fills the kernel of F_i -> F_{i-1} in every degree of the box.
  auto kernel_dim = [&](std::size_t i, const Degree& D) -> std::size_t {
    detail::Slice<F> src(A, degrees_of(out.maps[i]), D, Grading::Fine);
    if (i == 0 && M.kind == MonomialModule::Kind::Cyclic) {
      Monomial m(D);
      bool in_n = std::any_of(M.gens.begin(), M.gens.end(), [&](const Monomial& g) { return g.divides(m); });
      return (src.size() && in_n) ? 1 : 0;
    }
    auto tgt = i == 0 ? p_deg : degrees_of(out.maps[i - 1]);
    detail::Slice<F> t(A, tgt, D, Grading::Fine);
    std::vector<std::vector<Polynomial<F>>> images;
    for (const auto& g : out.maps[i]) images.push_back(g.comps);
    return src.size() - detail::slice_matrix(A, src, t, images).rank();
  };
  auto image_rank = [&](std::size_t i, const Degree& D) -> std::size_t {
    detail::Slice<F> src(A, degrees_of(out.maps[i]), D, Grading::Fine);
    detail::Slice<F> t(A, degrees_of(out.maps[i - 1]), D, Grading::Fine);
    std::vector<std::vector<Polynomial<F>>> images;
    for (const auto& g : out.maps[i]) images.push_back(g.comps);
    return detail::slice_matrix(A, src, t, images).rank();
  };
  for (std::size_t i = 0; i + 1 < out.maps.size(); ++i) {
    const auto& box = boxes.at(i);
    for (Exponent t = 0; t <= detail::total(box); ++t)
      for (const auto& D : detail::degrees_of_total(n, Grading::Fine, t, box)) {
        auto kd = kernel_dim(i, D), ir = image_rank(i + 1, D);
        if (kd != ir) {
          out.exact = false;
          out.audit_log.push_back("step " + std::to_string(i + 1) + ": image rank " + std::to_string(ir) +
                                  " differs from kernel dimension " + std::to_string(kd));
        }
      }
  }
  return out;
}

/// The filtration bound on the largest weight of F_i: d for i = 0, d + e + (i - 1) f after.
template <Field F>
mpq_class filtration_bound(const FiltrationResolution<F>& r, std::size_t i) {
  return i == 0 ? r.d : r.d + r.e + mpq_class(static_cast<long>(i - 1)) * r.f;
}

}  // namespace quadgb
