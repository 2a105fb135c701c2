#pragma once

// Castelnuovo-Mumford regularity: exact values from minimal resolutions, the
// Bayer-Stillman criterion with certificates, and stability-based bounds.

#include "quadgb/resolution.hpp"

#include <map>

namespace quadgb {

struct RegularityFromResolution {
  Exponent reg = 0;
  BettiTable betti;  // of S/I
};

/// reg(I) = max over i >= 1 of t_i(S/I) - i + 1, from the fine-graded minimal resolution.
template <Field F = PrimeField>
RegularityFromResolution regularity_resolution(const MonomialIdeal& I, const F& field = PrimeField(32003)) {
  if (I.is_zero()) throw std::invalid_argument("regularity: the zero ideal has no regularity");
  const std::size_t n = I.nvars();
  auto R = make_ring(field, indexed_names("x", n), MonomialOrder::grevlex(n));
  QuotientRing<F> S(R, {});
  Monomial lcm(n);
  std::vector<Polynomial<F>> gens;
  for (const auto& g : I.gens()) {
    lcm = lcm.lcm(g);
    gens.push_back(Polynomial<F>::monomial(R, g));
  }
  ResolutionOptions opt;
  opt.grading = Grading::Fine;
  opt.box = lcm.to_vector();
  opt.i_max = n;
  opt.j_max = lcm.degree();
  opt.audit = false;
  RegularityFromResolution out;
  out.betti = minimal_resolution(S, gens, opt).betti;
  out.reg = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (auto t = out.betti.t(i)) out.reg = std::max(out.reg, *t - static_cast<Exponent>(i) + 1);
  return out;
}

/// reg(I) for a homogeneous ideal from a coarse minimal resolution of S/I, cut off
/// above the Taylor bound of its initial ideal.
template <Field F>
RegularityFromResolution regularity_resolution(const std::vector<Polynomial<F>>& gens) {
  if (gens.empty()) throw std::invalid_argument("regularity: the zero ideal has no regularity");
  const auto& R = gens.front().ring();
  auto G = buchberger(R, gens);
  auto d = G.delta();
  if (!d) throw std::invalid_argument("regularity: the zero ideal has no regularity");
  const std::size_t n = R->nvars();
  QuotientRing<F> S(R, {});
  ResolutionOptions opt;
  opt.i_max = n;
  opt.j_max = static_cast<Exponent>(n) * *d - static_cast<Exponent>(n) + 1 + static_cast<Exponent>(n);
  opt.audit = false;
  RegularityFromResolution out;
  out.betti = minimal_resolution(S, gens, opt).betti;
  out.betti.complete = true;
  for (std::size_t i = 1; i <= n; ++i)
    if (auto t = out.betti.t(i)) out.reg = std::max(out.reg, *t - static_cast<Exponent>(i) + 1);
  return out;
}

/// One slice equality of condition 2a: ((I, h_1..h_{i-1}) : h_i)_e against (I, h_1..h_{i-1})_e.
struct ColonCheck {
  std::size_t i = 0;
  std::uint64_t ideal_dim = 0;
  std::uint64_t colon_dim = 0;
};

template <Field F>
struct BayerStillmanCertificate {
  Exponent e = 0;
  std::size_t j = 0;
  std::vector<Polynomial<F>> forms;  // h_1, ..., h_j
  std::vector<ColonCheck> colon_checks;
  std::uint64_t final_dim = 0;    // dim (I, h_1..h_j)_e
  std::uint64_t ambient_dim = 0;  // dim S_e
};

template <Field F>
struct BayerStillmanResult {
  bool regular = false;
  std::optional<BayerStillmanCertificate<F>> certificate;
  std::size_t trials_run = 0;
  bool coordinate_forms = false;
};

struct BayerStillmanOptions {
  std::size_t trials = 3;
  bool coordinate_forms = false;  // h_i = x_r, x_{r-1}, ...; valid for Borel-fixed ideals
};

namespace detail {

/// dim of the span of all degree-t multiples of the generators in k[x_1..x_n].
template <Field F>
std::uint64_t ideal_slice_dim(const F& field, const std::vector<std::vector<Term<F>>>& gens, std::size_t n, Exponent t) {
  auto mons = monomials_of_degree(n, t);
  if (mons.empty()) return 0;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t c = 0; c < mons.size(); ++c) index.emplace(mons[c], c);
  DenseEchelon<F> span(field, mons.size());
  for (const auto& g : gens) {
    if (g.empty()) continue;
    Exponent dg = g.front().mono.degree();
    if (dg > t) continue;
    for_each_monomial(n, t - dg, [&](const Monomial& m) {
      if (span.rank() == mons.size()) return;
      std::vector<typename F::value_type> v(mons.size(), field.zero());
      for (const auto& term : g) v[index.at(term.mono * m)] = term.coeff;
      span.insert(v);
    });
  }
  return span.rank();
}

/// Terms of p after setting every variable from index n on to zero.
template <Field F>
std::vector<Term<F>> restrict_to_first(const Polynomial<F>& p, std::size_t n) {
  std::vector<Term<F>> out;
  for (const auto& t : p.terms()) {
    bool keep = true;
    for (std::size_t v = n; v < t.mono.size(); ++v)
      if (t.mono[v] != 0) keep = false;
    if (!keep) continue;
    Monomial m(n);
    for (std::size_t v = 0; v < n; ++v) m.set(v, t.mono[v]);
    out.push_back(Term<F>{t.coeff, m});
  }
  return out;
}

/// Conditions 2a/2b for the forms x_r, x_{r-1}, ... applied to gens; hf(i, t)
/// is dim (S / (I, x_{r-i+2}, ..., x_r))_t.
template <Field F, class HF>
std::optional<BayerStillmanCertificate<F>> check_last_variables(std::size_t r, Exponent e, HF&& hf) {
  BayerStillmanCertificate<F> cert;
  cert.e = e;
  cert.ambient_dim = count_monomials(r, e);
  for (std::size_t i = 1; i <= r + 1; ++i) {
    auto here_e = hf(i, e);
    if (here_e == 0) {
      cert.j = i - 1;
      cert.final_dim = cert.ambient_dim;
      return cert;
    }
    // kernel of multiplication by h_i from degree e to e + 1, from the exact sequence
    // 0 -> ker -> (S/J)_e -> (S/J)_{e+1} -> (S/(J, h_i))_{e+1} -> 0
    std::int64_t ker = static_cast<std::int64_t>(here_e) - static_cast<std::int64_t>(hf(i, e + 1)) +
                       static_cast<std::int64_t>(hf(i + 1, e + 1));
    ColonCheck c;
    c.i = i;
    c.ideal_dim = cert.ambient_dim - here_e;
    c.colon_dim = c.ideal_dim + static_cast<std::uint64_t>(ker);
    cert.colon_checks.push_back(c);
    if (ker != 0) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Tests whether I is e-regular with the Bayer-Stillman criterion.
template <Field F>
BayerStillmanResult<F> bayer_stillman_e_regular(const std::vector<Polynomial<F>>& gens, Exponent e, std::mt19937_64& rng,
                                                const BayerStillmanOptions& opt = {}) {
  if (gens.empty()) throw std::invalid_argument("bayer_stillman: the zero ideal has no regularity");
  const auto& R = gens.front().ring();
  const F& k = R->field();
  const std::size_t r = R->nvars();
  for (const auto& g : gens) {
    if (!g.is_homogeneous()) throw std::invalid_argument("bayer_stillman: generators must be homogeneous");
    if (g.degree() > e) throw std::invalid_argument("bayer_stillman: generators must have degree at most e");
  }
  BayerStillmanResult<F> res;
  res.coordinate_forms = opt.coordinate_forms;
  std::size_t trials = opt.coordinate_forms ? 1 : std::max<std::size_t>(opt.trials, 1);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++res.trials_run;
    auto g = opt.coordinate_forms ? Matrix<F>::identity(k, r) : random_invertible(k, r, rng);
    auto moved = opt.coordinate_forms ? gens : change_coordinates(gens, R, g);
    std::map<std::pair<std::size_t, Exponent>, std::uint64_t> cache;
    auto hf = [&](std::size_t i, Exponent t) -> std::uint64_t {
      auto key = std::make_pair(i, t);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
      std::size_t n = r + 1 - i;
      std::vector<std::vector<Term<F>>> restricted;
      for (const auto& p : moved) restricted.push_back(detail::restrict_to_first(p, n));
      auto v = count_monomials(n, t) - detail::ideal_slice_dim(k, restricted, n, t);
      cache.emplace(key, v);
      return v;
    };
    auto cert = detail::check_last_variables<F>(r, e, hf);
    if (!cert) continue;
    // h_i vanishes where the (r - i + 1)-th new coordinate does: a row of g^{-1}
    auto inv = *g.inverse();
    for (std::size_t i = 1; i <= cert->j; ++i) {
      std::vector<Term<F>> t;
      for (std::size_t c = 0; c < r; ++c) t.push_back(Term<F>{inv(r - i, c), Monomial::variable(r, c)});
      cert->forms.push_back(Polynomial<F>::from_terms(R, std::move(t)));
    }
    res.regular = true;
    res.certificate = std::move(cert);
    return res;
  }
  return res;
}

/// Bayer-Stillman for a monomial ideal with the forms x_r, x_{r-1}, ... (Borel-fixed ideals).
template <Field F = PrimeField>
BayerStillmanResult<F> bayer_stillman_borel(const MonomialIdeal& I, Exponent e, const F& field = PrimeField(32003)) {
  if (I.is_zero()) throw std::invalid_argument("bayer_stillman: the zero ideal has no regularity");
  if (*I.delta() > e) throw std::invalid_argument("bayer_stillman: generators must have degree at most e");
  const std::size_t r = I.nvars();
  auto hf = [&](std::size_t i, Exponent t) -> std::uint64_t {
    std::size_t n = r + 1 - i;
    std::vector<Monomial> kept;
    for (const auto& g : I.gens())
      if (g.max_index() < static_cast<int>(n)) {
        Monomial m(n);
        for (std::size_t v = 0; v < n; ++v) m.set(v, g[v]);
        kept.push_back(m);
      }
    return hilbert_function(MonomialIdeal(n, kept), t);
  };
  BayerStillmanResult<F> res;
  res.coordinate_forms = true;
  res.trials_run = 1;
  auto cert = detail::check_last_variables<F>(r, e, hf);
  if (!cert) return res;
  auto R = make_ring(field, indexed_names("x", r), MonomialOrder::grevlex(r));
  for (std::size_t i = 1; i <= cert->j; ++i) cert->forms.push_back(Polynomial<F>::variable(R, r - i));
  res.regular = true;
  res.certificate = std::move(cert);
  return res;
}

/// Smallest e >= delta(I) passing the criterion, scanning up to e_max.
template <Field F>
std::optional<BayerStillmanCertificate<F>> bayer_stillman_regularity(const std::vector<Polynomial<F>>& gens, Exponent e_max,
                                                                     std::mt19937_64& rng, const BayerStillmanOptions& opt = {}) {
  auto d = delta(gens);
  if (!d) throw std::invalid_argument("bayer_stillman: the zero ideal has no regularity");
  for (Exponent e = *d; e <= e_max; ++e) {
    auto r = bayer_stillman_e_regular(gens, e, rng, opt);
    if (r.regular) return r.certificate;
  }
  return std::nullopt;
}

/// Whether the slice I_e is stable; for Borel-fixed I this decides e-regularity.
inline bool reg_stab_check(const MonomialIdeal& I, Exponent e, std::uint64_t characteristic) {
  if (I.is_zero()) throw std::invalid_argument("reg_stab_check: the zero ideal has no regularity");
  if (e < *I.delta()) throw std::invalid_argument("reg_stab_check: e must be at least the generator degree");
  if (!is_borel_fixed(I, characteristic)) throw std::invalid_argument("reg_stab_check: the ideal is not Borel-fixed");
  return is_stable(I.truncation(e));
}

struct StabilityBound {
  Exponent e = 0;      // delta of the initial ideal
  Exponent q = 0;      // least q with q-stability
  Exponent bound = 0;  // e + (r - 1)(q - 1)
  Exponent taylor = 0; // r e - r + 1
};

/// Bounds from a generic initial ideal: q-stability and the Taylor complex.
inline StabilityBound q_stability_reg_bound(const MonomialIdeal& in) {
  if (in.is_zero()) throw std::invalid_argument("q_stability_reg_bound: the zero ideal has no regularity");
  StabilityBound b;
  auto r = static_cast<Exponent>(in.nvars());
  b.e = *in.delta();
  b.q = *min_q(in);
  b.bound = b.e + (r - 1) * (b.q - 1);
  b.taylor = r * b.e - r + 1;
  return b;
}

template <Field F>
struct GenericInitialIdeal {
  MonomialIdeal ideal;
  bool agreement = true;  // every sample gave the same initial ideal
  std::size_t samples = 0;
};

/// in_grevlex(gI) for random g, sampled until `samples` draws are compared.
template <Field F>
GenericInitialIdeal<F> generic_initial_ideal(const std::vector<Polynomial<F>>& gens, std::mt19937_64& rng, std::size_t samples = 3) {
  if (gens.empty()) throw std::invalid_argument("generic_initial_ideal: empty generator list");
  const auto& R0 = gens.front().ring();
  auto R = R0->with_order(MonomialOrder::grevlex(R0->nvars()));
  std::vector<Polynomial<F>> moved0;
  for (const auto& g : gens) moved0.push_back(g.in_ring(R));
  GenericInitialIdeal<F> out;
  std::map<std::vector<Monomial>, std::size_t> seen;
  for (std::size_t s = 0; s < samples; ++s) {
    auto g = random_invertible(R->field(), R->nvars(), rng);
    auto in = buchberger(R, change_coordinates(moved0, R, g)).initial_ideal();
    ++seen[in.gens()];
    if (s == 0) out.ideal = in;
    else if (!(in == out.ideal)) out.agreement = false;
  }
  out.samples = samples;
  if (!out.agreement) {
    auto best = std::max_element(seen.begin(), seen.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    out.ideal = MonomialIdeal(R->nvars(), best->first);
  }
  return out;
}

}  // namespace quadgb
