#include "quadgb/random.hpp"
#include "quadgb/regularity.hpp"

#include <catch_amalgamated.hpp>

using namespace quadgb;

namespace {

using GF = PrimeField;
using P = Polynomial<GF>;

std::vector<P> as_polys(const RingPtr<GF>& R, const MonomialIdeal& I) {
  std::vector<P> v;
  for (const auto& g : I.gens()) v.push_back(P::monomial(R, g));
  return v;
}

// Random monomial ideal that is Borel-fixed in characteristic 2: generators are
// products of powers x_i^(2^a), kept only when the ideal passes the check.
MonomialIdeal random_char2_borel(std::size_t n, std::mt19937_64& rng) {
  while (true) {
    std::vector<Monomial> g;
    std::size_t k = 1 + uniform_below(rng, 3);
    for (std::size_t s = 0; s < k; ++s) {
      Monomial m(n);
      for (std::size_t v = 0; v < n; ++v)
        if (uniform_below(rng, 2)) m.set(v, Exponent{1} << uniform_below(rng, 3));
      if (!m.is_one()) g.push_back(m);
    }
    if (g.empty()) continue;
    MonomialIdeal I(n, g);
    if (I.delta() <= 8 && is_borel_fixed(I, 2)) return I;
  }
}

}  // namespace

TEST_CASE("regularity of the characteristic-2 examples") {
  MonomialIdeal I9(2, {{6, 0}, {2, 4}});
  auto r9 = regularity_resolution(I9, PrimeField(2));
  CHECK(r9.reg == 9);
  CHECK(r9.betti.complete);
  MonomialIdeal I16(3, {{6, 0, 0}, {2, 4, 0}, {2, 0, 4}, {0, 8, 0}, {0, 0, 8}});
  CHECK(regularity_resolution(I16, PrimeField(2)).reg == 16);
  CHECK(regularity_resolution(I16).reg == 16);
  for (Exponent e = 1; e <= 6; ++e) CHECK(regularity_resolution(MonomialIdeal(3, {Monomial::variable(3, 1, e)})).reg == e);
  CHECK_THROWS_AS(regularity_resolution(MonomialIdeal(2, {})), std::invalid_argument);
}

TEST_CASE("stable ideals have regularity equal to their generator degree") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 2);
    auto I = stabilization(random_monomial_ideal(n, 1 + uniform_below(rng, 3), 1, 4, rng));
    REQUIRE(is_stable(I));
    CHECK(regularity_resolution(I).reg == *I.delta());
  }
}

TEST_CASE("regularity sandwich between delta and the Taylor bound") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 3);
    auto I = random_monomial_ideal(n, 1 + uniform_below(rng, 4), 1, 4, rng);
    auto reg = regularity_resolution(I).reg;
    auto d = *I.delta();
    CHECK(d <= reg);
    CHECK(reg <= static_cast<Exponent>(n) * d - static_cast<Exponent>(n) + 1);
  }
}

TEST_CASE("Bayer-Stillman with coordinate forms on Borel-fixed ideals") {
  MonomialIdeal I(2, {{6, 0}, {2, 4}});
  REQUIRE(is_borel_fixed(I, 2));
  auto yes = bayer_stillman_borel(I, 9, PrimeField(2));
  CHECK(yes.regular);
  REQUIRE(yes.certificate);
  CHECK(yes.certificate->final_dim == yes.certificate->ambient_dim);
  for (const auto& c : yes.certificate->colon_checks) CHECK(c.colon_dim == c.ideal_dim);
  CHECK(yes.certificate->forms.size() == yes.certificate->j);
  CHECK(!bayer_stillman_borel(I, 8, PrimeField(2)).regular);
  CHECK(reg_stab_check(I, 9, 2));
  CHECK(!reg_stab_check(I, 6, 2));
  CHECK_THROWS_AS(reg_stab_check(I, 5, 2), std::invalid_argument);
  CHECK_THROWS_AS(reg_stab_check(I, 9, 3), std::invalid_argument);
  CHECK(reg_stab_check(MonomialIdeal(3, {{4, 0, 0}}), 4, 0));

  // the maximal ideal is 1-regular
  auto R = make_ring(GF(32003), indexed_names("x", 3), MonomialOrder::grevlex(3));
  std::mt19937_64 rng(41);
  auto m = bayer_stillman_e_regular(residue_field_relations(R), 1, rng);
  CHECK(m.regular);
  CHECK(m.certificate->j == 0);
}

TEST_CASE("Bayer-Stillman with random forms matches the resolution on monomial ideals") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 2);
    auto I = random_monomial_ideal(n, 2 + uniform_below(rng, 2), 1, n == 2 ? 5 : 3, rng);
    auto reg = regularity_resolution(I).reg;
    auto R = make_ring(GF(32003), indexed_names("x", n), MonomialOrder::grevlex(n));
    auto gens = as_polys(R, I);
    auto at = bayer_stillman_e_regular(gens, reg, rng);
    CHECK(at.regular);
    if (at.certificate) {
      // the forms are linear and the recorded slices certify both conditions
      for (const auto& h : at.certificate->forms) CHECK(h.degree() == 1);
      for (const auto& c : at.certificate->colon_checks) CHECK(c.colon_dim == c.ideal_dim);
    }
    if (reg - 1 >= *I.delta()) CHECK(!bayer_stillman_e_regular(gens, reg - 1, rng).regular);
  }
}

TEST_CASE("stable slices decide regularity of Borel-fixed ideals in characteristic 2") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 2);
    auto I = random_char2_borel(n, rng);
    auto reg = regularity_resolution(I, PrimeField(2)).reg;
    for (Exponent e = reg - 1; e <= reg + 1; ++e) {
      if (e < *I.delta()) continue;
      bool bs = bayer_stillman_borel(I, e, PrimeField(2)).regular;
      CHECK(reg_stab_check(I, e, 2) == bs);
      CHECK(bs == (e >= reg));
    }
  }
}

TEST_CASE("q-stability bounds") {
  MonomialIdeal I16(3, {{6, 0, 0}, {2, 4, 0}, {2, 0, 4}, {0, 8, 0}, {0, 0, 8}});
  auto b = q_stability_reg_bound(I16);
  CHECK(b.q == 8);
  CHECK(b.e == 8);
  CHECK(b.bound == 22);
  CHECK(b.taylor == 22);
  CHECK(regularity_resolution(I16).reg <= b.bound);
  // q = 1 collapses the bound to the generator degree
  auto S = stabilization(MonomialIdeal(3, {{1, 1, 1}, {0, 3, 0}}));
  auto s = q_stability_reg_bound(S);
  CHECK(s.q == 1);
  CHECK(s.bound == s.e);
  CHECK(regularity_resolution(S).reg == s.bound);
}

TEST_CASE("over the rationals the generic initial ideal has the regularity of I") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 4; ++trial) {
    auto R = make_ring(RationalField(), indexed_names("x", 3), MonomialOrder::grevlex(3));
    std::vector<Polynomial<RationalField>> gens{random_homogeneous(R, 2, 3, rng), random_homogeneous(R, 2, 3, rng)};
    if (trial % 2) gens.push_back(random_homogeneous(R, 3, 2, rng));
    auto gin = generic_initial_ideal(gens, rng);
    CHECK(gin.agreement);
    auto b = q_stability_reg_bound(gin.ideal);
    CHECK(b.q == 1);
    auto reg = regularity_resolution(gens).reg;
    CHECK(reg == b.e);
    CHECK(*delta(gens) <= reg);
  }
}
