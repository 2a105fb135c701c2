#include "quadgb/parse.hpp"
#include "quadgb/random.hpp"
#include "quadgb/resolution.hpp"
#include "quadgb/veronese.hpp"

#include <catch_amalgamated.hpp>

using namespace quadgb;

namespace {

using GF = PrimeField;
using P = Polynomial<GF>;

RingPtr<GF> gf_ring(std::size_t n, std::uint32_t p = 32003) {
  return make_ring(GF(p), indexed_names("x", n), MonomialOrder::grevlex(n));
}

std::vector<P> monomials_as_polys(const RingPtr<GF>& R, const std::vector<Monomial>& ms) {
  std::vector<P> v;
  for (const auto& m : ms) v.push_back(P::monomial(R, m));
  return v;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Euler characteristic of a resolution of k against the Hilbert function of A:
// sum_i (-1)^i sum_j beta_ij HF_A(t - j) = [t == 0], exact for t <= i_max.
template <Field F>
void check_euler_characteristic(const QuotientRing<F>& A, const BettiTable& b, Exponent up_to) {
  for (Exponent t = 0; t <= up_to; ++t) {
    std::int64_t s = 0;
    for (const auto& [key, v] : b.entries) {
      if (key.second > t) continue;
      auto h = static_cast<std::int64_t>(A.standard_monomials(t - key.second).size());
      s += (key.first % 2 ? -1 : 1) * static_cast<std::int64_t>(v) * h;
    }
    CHECK(s == (t == 0 ? 1 : 0));
  }
}

}  // namespace

TEST_CASE("the residue field over a polynomial ring has the Koszul resolution") {
  for (std::size_t r = 1; r <= 4; ++r) {
    auto R = gf_ring(r);
    QuotientRing<GF> S(R, {});
    for (auto g : {Grading::Coarse, Grading::Fine}) {
      ResolutionOptions opt;
      opt.i_max = r + 1;
      opt.j_max = static_cast<Exponent>(r + 2);
      opt.grading = g;
      auto res = resolve_residue_field(S, opt);
      CHECK(res.exact);
      CHECK(res.minimal);
      for (std::size_t i = 0; i <= r + 1; ++i) {
        CHECK(res.betti.rank(i) == binomial(r, i));
        CHECK(res.betti.betti(i, static_cast<Exponent>(i)) == binomial(r, i));
      }
      CHECK(res.betti.status(r + 1) == BettiTable::Status::ZeroUpToCutoff);
      auto rate = rate_and_koszul(res.betti);
      CHECK(rate.koszul_up_to == r + 1);
      if (r >= 2) CHECK(rate.rate_estimate == 1);
    }
  }
}

TEST_CASE("k over k[x]/(x^3) has a periodic resolution") {
  auto R = gf_ring(1);
  QuotientRing<GF> A(R, {P::monomial(R, Monomial{3})});
  for (auto g : {Grading::Coarse, Grading::Fine}) {
    ResolutionOptions opt;
    opt.i_max = 6;
    opt.j_max = 12;
    opt.grading = g;
    auto res = resolve_residue_field(A, opt);
    // kernels alternate between (x^2) and (x): degrees grow by 2, then 1
    std::vector<Exponent> expect{0, 1, 3, 4, 6, 7, 9};
    for (std::size_t i = 0; i <= 6; ++i) {
      CHECK(res.betti.rank(i) == 1);
      CHECK(res.betti.t(i) == expect[i]);
    }
    CHECK(res.exact);
    CHECK(res.minimal);
    check_euler_characteristic(A, res.betti, 6);
    // differentials are x, x^2, x, x^2, ...
    for (std::size_t i = 1; i <= 6; ++i) {
      REQUIRE(res.maps[i].size() == 1);
      CHECK(res.maps[i][0].comps.at(0).leading_monomial().degree() == (i % 2 ? 1 : 2));
    }
    auto rate = rate_and_koszul(res.betti);
    CHECK(rate.koszul_up_to == 1);
    CHECK(rate.rate_estimate == 2);
  }
}

TEST_CASE("Tor_3 of the residue field of the degree-3 Veronese quotient in characteristic 2") {
  auto in = parse_input("ring GF(2)[y0,y1,y2,y3] order grevlex; ideal (y0^2, y0*y2 - y1^2, y0*y3 - y1*y2, y1*y3, y2^2);");
  auto R = in.make_ring(PrimeField(2));
  QuotientRing<GF> A(R, in.generators(R));
  ResolutionOptions opt;
  opt.i_max = 4;
  opt.j_max = 6;
  auto res = resolve_residue_field(A, opt);
  CHECK(res.exact);
  CHECK(res.minimal);
  CHECK(res.betti.betti(3, 3) == 26);
  CHECK(res.betti.betti(3, 4) == 2);
  CHECK(res.betti.rank(3) == 28);
  CHECK(res.betti.t(3) == 4);
  // Tor_1 and Tor_2 are linear: 4 variables, then C(4,2) + 5 quadrics
  CHECK(res.betti.betti(1, 1) == 4);
  CHECK(res.betti.rank(1) == 4);
  CHECK(res.betti.betti(2, 2) == 11);
  CHECK(res.betti.rank(2) == 11);
  check_euler_characteristic(A, res.betti, 4);
  auto rate = rate_and_koszul(res.betti);
  CHECK(rate.koszul_up_to == 2);
  CHECK(rate.rate_estimate > 1);
  CHECK(rate.up_to_cutoff);
}

TEST_CASE("resolutions of monomial quotients of S") {
  auto R = gf_ring(2, 2);
  QuotientRing<GF> S(R, {});
  ResolutionOptions opt;
  opt.grading = Grading::Fine;
  opt.box = Degree{6, 4};
  opt.i_max = 2;
  opt.j_max = 10;
  auto res = minimal_resolution(S, monomials_as_polys(R, {{6, 0}, {2, 4}}), opt);
  CHECK(res.betti.betti(1, 6) == 2);
  CHECK(res.betti.betti(2, 10) == 1);
  CHECK(res.betti.rank(2) == 1);
  CHECK(res.betti.complete);

  // Betti numbers against the Hilbert function of S/I through the Euler characteristic,
  // and fine against coarse grading
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 2);
    auto I = random_monomial_ideal(n, 2 + uniform_below(rng, 3), 1, 4, rng);
    auto Rn = gf_ring(n);
    QuotientRing<GF> Sn(Rn, {});
    Monomial lcm(n);
    for (const auto& g : I.gens()) lcm = lcm.lcm(g);
    ResolutionOptions fine;
    fine.grading = Grading::Fine;
    fine.box = lcm.to_vector();
    fine.i_max = n;
    fine.j_max = lcm.degree();
    auto rf = minimal_resolution(Sn, monomials_as_polys(Rn, I.gens()), fine);
    ResolutionOptions coarse = fine;
    coarse.grading = Grading::Coarse;
    coarse.box.reset();
    auto rc = minimal_resolution(Sn, monomials_as_polys(Rn, I.gens()), coarse);
    CHECK(rf.betti.entries == rc.betti.entries);
    CHECK(rf.exact);
    CHECK(rf.minimal);
    CHECK(rc.exact);
    CHECK(rf.betti.rank(1) == I.gens().size());
    for (Exponent t = 0; t <= lcm.degree() + 2; ++t) {
      std::int64_t s = 0;
      for (const auto& [key, v] : rf.betti.entries)
        if (key.second <= t) s += (key.first % 2 ? -1 : 1) * static_cast<std::int64_t>(v * binomial(static_cast<std::uint64_t>(t - key.second) + n - 1, n - 1));
      CHECK(s == static_cast<std::int64_t>(hilbert_function(I, t)));
    }
  }
}

TEST_CASE("a Veronese quotient with quadratic initial ideal is Koszul up to the cutoff") {
  for (Exponent d : {2, 3}) {
    auto base = gf_ring(2);
    VeroneseRing<GF> V(base, {d});
    auto in = V.initial_kernel();
    REQUIRE(in.delta().value_or(2) <= 2);
    QuotientRing<GF> A(V.ring(), monomials_as_polys(V.ring(), in.gens()));
    auto rate = rate_and_koszul(A, 4, 6);
    CHECK(rate.koszul_up_to == 4);
    CHECK(rate.rate_estimate <= 1);
  }
}

TEST_CASE("filtration resolution of k over k[x]/(x^f)") {
  for (Exponent f = 2; f <= 5; ++f) {
    auto R = gf_ring(1);
    QuotientRing<GF> A(R, {P::monomial(R, Monomial{f})});
    auto fr = filtration_resolution(A, MonomialModule::residue_field(1), WeightFunction::standard(1), 4);
    CHECK(fr.exact);
    CHECK(fr.within_bound);
    CHECK(fr.d == 0);
    CHECK(fr.e == 1);
    CHECK(fr.f == std::max<Exponent>(1, f - 1));
    for (std::size_t i = 1; i <= 4; ++i) CHECK(fr.bound[i] == 1 + static_cast<long>(i - 1) * std::max<Exponent>(1, f - 1));
    // the colon construction is minimal here: 0, 1, f, f + 1, 2f
    std::vector<long> expect{0, 1, f, f + 1, 2 * f};
    for (std::size_t i = 0; i <= 4; ++i) CHECK(fr.max_weight[i] == expect[i]);
  }
}

TEST_CASE("filtration resolution of k over S is linear") {
  auto R = gf_ring(3);
  QuotientRing<GF> S(R, {});
  auto fr = filtration_resolution(S, MonomialModule::residue_field(3), WeightFunction::standard(3), 3);
  CHECK(fr.exact);
  for (std::size_t i = 0; i <= 3; ++i) CHECK(fr.maps[i].size() == binomial(3, i));
  for (std::size_t i = 0; i <= 3; ++i)
    for (const auto& g : fr.maps[i]) CHECK(detail::total(g.degree) == static_cast<Exponent>(i));
}

TEST_CASE("first colon ideals of a monomial ideal module match colon_in_quotient") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 2);
    auto I = random_monomial_ideal(n, 2, 2, 4, rng);
    auto R = gf_ring(n);
    QuotientRing<GF> A(R, monomials_as_polys(R, I.gens()));
    std::vector<Monomial> gens;
    for (int k = 0; k < 3; ++k) {
      auto m = random_monomial(n, 1 + static_cast<Exponent>(uniform_below(rng, 2)), rng);
      if (!I.contains(m)) gens.push_back(m);
    }
    auto fr = filtration_resolution(A, MonomialModule::ideal(gens), WeightFunction::standard(n), 2);
    CHECK(fr.exact);
    CHECK(fr.within_bound);
    REQUIRE(fr.colons.at(0).size() == gens.size());
    for (std::size_t l = 0; l < gens.size(); ++l) {
      std::vector<Monomial> prior(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(l));
      auto expect = colon_in_quotient(I, prior, gens[l]);
      // generators that survive in A
      std::vector<Monomial> live;
      for (const auto& g : expect.gens())
        if (!I.contains(g)) live.push_back(g);
      CHECK(fr.colons[0][l] == MonomialIdeal(n, live));
    }
  }
}

TEST_CASE("filtration bound on random monomial quotients") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 2);
    auto I = random_monomial_ideal(n, 2 + uniform_below(rng, 2), 2, 3, rng);
    auto N = random_monomial_ideal(n, 1 + uniform_below(rng, 2), 1, 2, rng);
    auto R = gf_ring(n);
    QuotientRing<GF> A(R, monomials_as_polys(R, I.gens()));
    WeightFunction w;
    for (std::size_t i = 0; i < n; ++i) w.w.push_back(mpq_class(1 + static_cast<long>(uniform_below(rng, 3)), 1 + static_cast<long>(uniform_below(rng, 2))));
    const std::size_t i_max = 3;
    auto fr = filtration_resolution(A, MonomialModule::quotient(N.gens()), w, i_max);
    CHECK(fr.exact);
    CHECK(fr.within_bound);
    CHECK(fr.later_colon_weight <= fr.f);

    // the minimal resolution is a summand: its multidegrees occur among the constructed ones
    Exponent top = 0;
    for (const auto& step : fr.maps)
      for (const auto& g : step) top = std::max(top, detail::total(g.degree));
    ResolutionOptions opt;
    opt.grading = Grading::Fine;
    opt.i_max = i_max;
    opt.j_max = top;
    auto minimal = minimal_resolution(A, monomials_as_polys(R, N.gens()), opt);
    CHECK(minimal.exact);
    for (const auto& [key, count] : minimal.betti.fine) {
      std::uint64_t built = 0;
      for (const auto& g : fr.maps[key.first]) built += g.degree == key.second;
      CHECK(count <= built);
      CHECK(w(key.second) <= fr.bound[key.first]);
    }
  }
}
