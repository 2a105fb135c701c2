#pragma once

// Seeded random inputs for property tests and generic-coordinate sampling.

#include "quadgb/monomial_ideal.hpp"
#include "quadgb/polynomial.hpp"

#include <random>

namespace quadgb {

inline Monomial random_monomial(std::size_t nvars, Exponent degree, std::mt19937_64& rng) {
  Monomial m(nvars);
  for (Exponent k = 0; k < degree; ++k) {
    auto i = static_cast<std::size_t>(uniform_below(rng, nvars));
    m.set(i, m[i] + 1);
  }
  return m;
}

/// Monomial ideal with `ngens` random generators of degrees in [lo, hi].
inline MonomialIdeal random_monomial_ideal(std::size_t nvars, std::size_t ngens, Exponent lo, Exponent hi, std::mt19937_64& rng) {
  std::vector<Monomial> g;
  for (std::size_t k = 0; k < ngens; ++k) {
    auto d = lo + static_cast<Exponent>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
    g.push_back(random_monomial(nvars, d, rng));
  }
  return MonomialIdeal(nvars, std::move(g));
}

/// Homogeneous polynomial of the given degree with up to `nterms` random terms.
template <Field F>
Polynomial<F> random_homogeneous(const RingPtr<F>& ring, Exponent degree, std::size_t nterms, std::mt19937_64& rng) {
  std::vector<Term<F>> t;
  for (std::size_t k = 0; k < nterms; ++k) t.push_back(Term<F>{ring->field().random(rng), random_monomial(ring->nvars(), degree, rng)});
  return Polynomial<F>::from_terms(ring, std::move(t));
}

/// Random binomial m1 - c m2 with deg m1 = deg m2 = degree.
template <Field F>
Polynomial<F> random_binomial(const RingPtr<F>& ring, Exponent degree, std::mt19937_64& rng) {
  const F& k = ring->field();
  while (true) {
    auto a = random_monomial(ring->nvars(), degree, rng);
    auto b = random_monomial(ring->nvars(), degree, rng);
    if (a == b) continue;
    auto c = k.random(rng);
    if (k.is_zero(c)) c = k.one();
    return Polynomial<F>::from_terms(ring, {Term<F>{k.one(), a}, Term<F>{k.neg(c), b}});
  }
}

}  // namespace quadgb
