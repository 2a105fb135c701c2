#pragma once

// Veronese and Segre-Veronese rings T: one variable z_m per monomial m of S of
// multidegree (d_1, ..., d_s), the map phi: z_m -> m, the standard-form map
// sigma, and initial ideals of V_d(J) = phi^{-1}(J).

#include "quadgb/groebner.hpp"

#include <unordered_map>

namespace quadgb {

enum class VeroneseOrderKind { Induced, Nu };

template <Field F>
class VeroneseRing {
 public:
  /// Segre-Veronese ring for the blocks of `base` with one degree per block;
  /// a single degree on a multi-block ring means the plain Veronese.
  VeroneseRing(RingPtr<F> base, std::vector<Exponent> degrees, VeroneseOrderKind kind = VeroneseOrderKind::Induced, int nu_cap = -1)
      : base_(std::move(base)), degrees_(std::move(degrees)) {
    blocks_ = degrees_.size() == 1 ? std::vector<std::size_t>{base_->nvars()} : base_->blocks();
    if (blocks_.size() != degrees_.size()) throw std::invalid_argument("one degree per block required");
    for (auto d : degrees_)
      if (d < 1) throw std::invalid_argument("Veronese degree must be positive");
    images_ = monomials_of_multidegree(1);
    const auto& ord = base_->order();
    std::sort(images_.begin(), images_.end(), [&](const Monomial& a, const Monomial& b) { return ord.greater(a, b); });
    std::vector<std::string> names;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      index_.emplace(images_[i], i);
      std::string n = "z";
      for (std::size_t v = 0; v < images_[i].size(); ++v) n += "_" + std::to_string(images_[i][v]);
      names.push_back(n);
    }
    MonomialOrder order = kind == VeroneseOrderKind::Induced
                              ? MonomialOrder::induced(base_->order_ptr(), images_)
                              : MonomialOrder::nu(images_, nu_cap >= 0 ? nu_cap : total_degree());
    ring_ = make_ring(base_->field(), std::move(names), std::move(order));
  }

  const RingPtr<F>& base() const { return base_; }
  const RingPtr<F>& ring() const { return ring_; }
  std::size_t nvars() const { return images_.size(); }
  const std::vector<Monomial>& images() const { return images_; }
  const std::vector<Exponent>& degrees() const { return degrees_; }
  Exponent total_degree() const {
    Exponent s = 0;
    for (auto d : degrees_) s += d;
    return s;
  }

  /// Monomials of S of multidegree (t d_1, ..., t d_s), in decreasing lex order.
  std::vector<Monomial> monomials_of_multidegree(Exponent t) const {
    std::vector<Monomial> out{Monomial(base_->nvars())};
    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      std::vector<Monomial> next;
      auto part = monomials_of_degree(blocks_[b], t * degrees_[b]);
      for (const auto& m : out)
        for (const auto& p : part) {
          Monomial x(m);
          for (std::size_t i = 0; i < blocks_[b]; ++i) x.set(start + i, p[i]);
          next.push_back(std::move(x));
        }
      out = std::move(next);
      start += blocks_[b];
    }
    return out;
  }

  /// dim S_{(t d_1, ..., t d_s)}.
  std::uint64_t expected_dimension(Exponent t) const {
    std::uint64_t p = 1;
    for (std::size_t b = 0; b < blocks_.size(); ++b) p *= count_monomials(blocks_[b], t * degrees_[b]);
    return p;
  }

  /// The t with m of multidegree t (d_1, ..., d_s), if any.
  std::optional<Exponent> veronese_degree(const Monomial& m) const {
    std::optional<Exponent> t;
    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      Exponent e = m.partial_degree(start, start + blocks_[b]);
      if (e % degrees_[b] != 0) return std::nullopt;
      if (t && *t != e / degrees_[b]) return std::nullopt;
      t = e / degrees_[b];
      start += blocks_[b];
    }
    return t;
  }

  Monomial phi(const Monomial& u) const { return MonomialOrder::image(images_, u); }

  Polynomial<F> phi(const Polynomial<F>& p) const {
    std::vector<Term<F>> t;
    for (const auto& term : p.terms()) t.push_back(Term<F>{term.coeff, phi(term.mono)});
    return Polynomial<F>::from_terms(base_, std::move(t));
  }

  std::size_t variable_index(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::invalid_argument("not a variable of the Veronese ring");
    return it->second;
  }

  /// Standard representative: in each block sort the factors by increasing
  /// index and cut them into runs of d_b; the k-th runs together form the
  /// k-th variable.
  Monomial sigma(const Monomial& m) const {
    auto t = veronese_degree(m);
    if (!t) throw std::invalid_argument("sigma: degree is not a multiple of the Veronese degree");
    std::vector<Monomial> chunks(static_cast<std::size_t>(*t), Monomial(base_->nvars()));
    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      std::size_t pos = 0;
      for (std::size_t i = start; i < start + blocks_[b]; ++i)
        for (Exponent k = 0; k < m[i]; ++k, ++pos) {
          auto& c = chunks[pos / static_cast<std::size_t>(degrees_[b])];
          c.set(i, c[i] + 1);
        }
      start += blocks_[b];
    }
    Monomial u(nvars());
    for (const auto& c : chunks) {
      auto i = variable_index(c);
      u.set(i, u[i] + 1);
    }
    return u;
  }

  Polynomial<F> sigma(const Polynomial<F>& p) const {
    std::vector<Term<F>> t;
    for (const auto& term : p.terms()) t.push_back(Term<F>{term.coeff, sigma(term.mono)});
    return Polynomial<F>::from_terms(ring_, std::move(t));
  }

  /// Every binomial u - v of degree 2 with phi(u) = phi(v), u > v.
  std::vector<Polynomial<F>> kernel_generators() const {
    std::map<Monomial, std::vector<Monomial>> fibres;
    for_each_monomial(nvars(), 2, [&](const Monomial& u) { fibres[phi(u)].push_back(u); });
    const auto& ord = ring_->order();
    const F& k = ring_->field();
    std::vector<Polynomial<F>> out;
    for (auto& [img, us] : fibres) {
      std::sort(us.begin(), us.end(), [&](const Monomial& a, const Monomial& b) { return ord.greater(a, b); });
      for (std::size_t i = 0; i < us.size(); ++i)
        for (std::size_t j = i + 1; j < us.size(); ++j)
          out.push_back(Polynomial<F>::from_terms(ring_, {Term<F>{k.one(), us[i]}, Term<F>{k.neg(k.one()), us[j]}}));
    }
    return out;
  }

  /// Leading terms of the kernel binomials. Checks dim (T/in)_t = dim S_{td}
  /// for t <= verify_up_to and throws std::logic_error on a mismatch.
  MonomialIdeal initial_kernel(Exponent verify_up_to = 3) const {
    std::vector<Monomial> lead;
    for (const auto& g : kernel_generators()) lead.push_back(g.leading_monomial());
    MonomialIdeal in(nvars(), std::move(lead));
    for (Exponent t = 0; t <= verify_up_to; ++t)
      if (hilbert_function(in, t) != expected_dimension(t))
        throw std::logic_error("initial kernel fails the Hilbert function identity in degree " + std::to_string(t));
    return in;
  }

  /// Generators of V_d(J): the kernel binomials plus, for each generator g,
  /// sigma of a basis of the span of its monomial multiples of the least
  /// Veronese multidegree above deg g.
  std::vector<Polynomial<F>> vd_generators(const std::vector<Polynomial<F>>& gens) const {
    auto out = kernel_generators();
    const F& k = base_->field();
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      if (g.ring() != base_) throw std::invalid_argument("vd_generators: generator from another ring");
      if (!g.is_homogeneous()) throw std::invalid_argument("vd_generators: generator is not homogeneous");
      auto md = base_->multidegree(g.leading_monomial());
      if (blocks_.size() == 1) md = {g.degree()};
      for (const auto& t : g.terms())
        if ((blocks_.size() == 1 ? std::vector<Exponent>{t.mono.degree()} : base_->multidegree(t.mono)) != md)
          throw std::invalid_argument("vd_generators: generator is not multihomogeneous");
      Exponent t = 1;
      for (std::size_t b = 0; b < blocks_.size(); ++b) t = std::max(t, (md[b] + degrees_[b] - 1) / degrees_[b]);
      // multipliers of multidegree t d_b - md_b in each block
      std::vector<Monomial> mult{Monomial(base_->nvars())};
      std::size_t start = 0;
      for (std::size_t b = 0; b < blocks_.size(); ++b) {
        std::vector<Monomial> next;
        for (const auto& m : mult)
          for_each_monomial(blocks_[b], t * degrees_[b] - md[b], [&](const Monomial& p) {
            Monomial x(m);
            for (std::size_t i = 0; i < blocks_[b]; ++i) x.set(start + i, p[i]);
            next.push_back(std::move(x));
          });
        mult = std::move(next);
        start += blocks_[b];
      }
      SparseEchelon<F> span(base_);
      for (const auto& m : mult) {
        auto p = g.mul_term(k.one(), m);
        if (span.insert(p)) out.push_back(sigma(p));
      }
    }
    return out;
  }

  /// in(V_d(J)) by Buchberger in T.
  MonomialIdeal initial_vd_full(const std::vector<Polynomial<F>>& gens) const {
    return buchberger(ring_, vd_generators(gens)).initial_ideal();
  }

  /// in(V_d(J)) from in(J) alone: in(ker) together with the standard u with
  /// phi(u) in in(J). A minimal such u loses membership when any one of its
  /// variables is removed, which bounds its degree by delta(in(J)).
  MonomialIdeal initial_vd_standard(const MonomialIdeal& inJ) const {
    require_induced();
    auto gens = initial_kernel(0).gens();
    auto d = inJ.delta();
    if (d) {
      for (Exponent t = 1; t <= std::max<Exponent>(*d, 1); ++t)
        for (const auto& m : monomials_of_multidegree(t)) {
          if (!inJ.contains(m)) continue;
          auto u = sigma(m);
          bool minimal = true;
          for (std::size_t i = 0; i < u.size() && minimal; ++i)
            if (u[i] > 0 && inJ.contains(m / images_[i])) minimal = false;
          if (minimal) gens.push_back(u);
        }
    }
    return MonomialIdeal(nvars(), std::move(gens));
  }

  /// Stable in(J) only: in(ker) and sigma of the minimal generators of
  /// in(J) intersected with the image of phi.
  MonomialIdeal initial_vd_fast(const MonomialIdeal& inJ) const {
    require_induced();
    if (blocks_.size() == 1 ? !is_stable(inJ) : !is_multigraded_stable(inJ, blocks_))
      throw std::invalid_argument("initial_vd_fast: in(J) is not combinatorially stable");
    auto gens = initial_kernel(0).gens();
    std::vector<Monomial> candidates;
    for (const auto& g : inJ.gens()) {
      Exponent t = 1;
      std::vector<Exponent> md;
      std::size_t start = 0;
      for (std::size_t b = 0; b < blocks_.size(); ++b) {
        md.push_back(g.partial_degree(start, start + blocks_[b]));
        t = std::max(t, (md[b] + degrees_[b] - 1) / degrees_[b]);
        start += blocks_[b];
      }
      for (const auto& m : monomials_of_multidegree(t))
        if (g.divides(m)) candidates.push_back(m);
    }
    for (const auto& m : minimalize(std::move(candidates))) gens.push_back(sigma(m));
    return MonomialIdeal(nvars(), std::move(gens));
  }

 private:
  void require_induced() const {
    if (!std::holds_alternative<MonomialOrder::Induced>(ring_->order().kind()))
      throw std::invalid_argument("this route needs the induced order on T");
  }

  RingPtr<F> base_;
  std::vector<Exponent> degrees_;
  std::vector<std::size_t> blocks_;
  std::vector<Monomial> images_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  RingPtr<F> ring_;
};

}  // namespace quadgb
