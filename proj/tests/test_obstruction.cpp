#include "quadgb/obstruction.hpp"
#include "quadgb/random.hpp"
#include "quadgb/veronese.hpp"

#include <catch_amalgamated.hpp>

using namespace quadgb;

namespace {

template <Field F>
RingPtr<F> xyz(const F& k, std::size_t n = 3) {
  std::vector<std::string> names{"x", "y", "z", "w"};
  names.resize(n);
  return make_ring(k, names, MonomialOrder::grevlex(n));
}

template <Field F>
Polynomial<F> var(const RingPtr<F>& R, std::size_t i) {
  return Polynomial<F>::variable(R, i);
}

template <Field F>
std::size_t rank(const Polynomial<F>& p) {
  return rank_of_quadric(QuadraticForm<F>(p));
}

// Every quadric in r variables over GF(p), coefficient by coefficient.
std::vector<Polynomial<PrimeField>> all_quadrics(const RingPtr<PrimeField>& R) {
  auto mons = monomials_of_degree(R->nvars(), 2);
  const std::uint32_t p = R->field().prime();
  std::vector<Polynomial<PrimeField>> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < mons.size(); ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Term<PrimeField>> t;
    std::uint64_t x = idx;
    for (const auto& m : mons) {
      t.push_back({static_cast<std::uint32_t>(x % p), m});
      x /= p;
    }
    out.push_back(Polynomial<PrimeField>::from_terms(R, t));
  }
  return out;
}

// Number of points of P^1(GF(p)) where a(x^2 - y^2) + b xy has rank 1.
std::size_t square_members_of_pencil(std::uint32_t p) {
  PrimeField k(p);
  auto R = xyz(k, 2);
  auto x = var(R, 0), y = var(R, 1);
  auto Q1 = x * x - y * y, Q2 = x * y;
  std::size_t count = rank(Q2) == 1;
  for (std::uint32_t b = 0; b < p; ++b)
    if (rank(Q1 + Q2.scaled(b)) == 1) ++count;
  return count;
}

}  // namespace

TEST_CASE("ranks of small quadrics") {
  auto R = xyz(RationalField());
  auto x = var(R, 0), y = var(R, 1), z = var(R, 2);
  CHECK(rank(x * x) == 1);
  CHECK(rank(x * y) == 2);
  CHECK(rank(x * (x + y)) == 2);
  CHECK(rank(Polynomial<RationalField>(R)) == 0);
  CHECK(rank(x * x + y * y + z * z) == 3);
  CHECK(rank((x + y + z) * (x + y + z)) == 1);
  auto G = QuadraticForm<RationalField>(x * y).gram();
  CHECK(G(0, 1) == mpq_class(1, 2));
  CHECK(G(1, 0) == mpq_class(1, 2));
  CHECK_THROWS_AS(QuadraticForm<RationalField>(x * y * z), std::invalid_argument);
  CHECK_THROWS_AS(QuadraticForm<RationalField>(x + y), std::invalid_argument);

  auto T = xyz(PrimeField(2));
  auto a = var(T, 0), b = var(T, 1), c = var(T, 2);
  CHECK(rank(a * a + b * b) == 1);
  CHECK(rank(a * b) == 2);
  CHECK(rank(a * a + a * b + b * b) == 2);
  CHECK(rank(a * a + b * c) == 3);
  CHECK_THROWS_AS(QuadraticForm<PrimeField>(a * b).gram(), std::domain_error);
}

TEST_CASE("rank agrees with the least number of variables after a coordinate change") {
  SECTION("GF(2), every quadric in three variables") {
    auto R = xyz(PrimeField(2));
    for (const auto& q : all_quadrics(R)) CHECK(rank(q) == polynomial_rank_exhaustive(QuadraticForm<PrimeField>(q)));
  }
  SECTION("GF(3) and GF(5), every binary quadric") {
    for (std::uint32_t p : {3u, 5u}) {
      auto R = xyz(PrimeField(p), 2);
      for (const auto& q : all_quadrics(R)) CHECK(rank(q) == polynomial_rank_exhaustive(QuadraticForm<PrimeField>(q)));
    }
  }
  SECTION("GF(3), sampled ternary quadrics") {
    auto R = xyz(PrimeField(3));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
      auto q = random_homogeneous(R, 2, 1 + uniform_below(rng, 4), rng);
      CHECK(rank(q) == polynomial_rank_exhaustive(QuadraticForm<PrimeField>(q)));
    }
  }
}

TEST_CASE("rank is invariant under linear changes of coordinates") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 3);
    RationalField k(4);
    auto R = xyz(k, n);
    // products of random linear forms give every rank from 0 to n
    Polynomial<RationalField> q(R);
    std::size_t pieces = uniform_below(rng, 3);
    for (std::size_t s = 0; s < pieces; ++s) q = q + random_homogeneous(R, 1, n, rng) * random_homogeneous(R, 1, n, rng);
    auto g = random_invertible(k, n, rng);
    auto image = change_coordinates(std::vector<Polynomial<RationalField>>{q}, R, g).front();
    CHECK(rank(q) == rank(image));
    CHECK(rank(q) <= 2 * pieces);
  }
}

TEST_CASE("the three-quadric example contains no square of a linear form") {
  auto R = xyz(RationalField());
  auto x = var(R, 0), y = var(R, 1), z = var(R, 2);
  std::vector<Polynomial<RationalField>> I{x * (x + y), y * (y + z), z * (z + x)};
  QuadricSpace<RationalField> W(R, I);
  auto s = low_rank_member_search(W, 1);
  CHECK(s.status == LowRankSearch<RationalField>::Status::None);
  CHECK(s.locus_dim == -1);

  auto v = obstruction_necessary_condition(I);
  CHECK(v.n == 0);
  CHECK(v.codim == 3);
  CHECK(v.quadrics == 3);
  CHECK(v.outcome == NecessaryCondition::Outcome::Obstructed);
  CHECK(v.failing_m == 1);
  REQUIRE(!v.checks.empty());
  CHECK(v.checks[0].rank_bound == 1);
  CHECK(v.checks[0].verdict == Verdict::Fail);

  // consistent with fixed-coordinate evidence: grevlex is not quadratic
  CHECK(*buchberger(R, I).delta() > 2);
}

TEST_CASE("squares in small quadric spaces") {
  auto R = xyz(RationalField(), 2);
  auto x = var(R, 0), y = var(R, 1);
  QuadricSpace<RationalField> W(R, {x * x, y * y});
  auto s = low_rank_member_search(W, 1);
  REQUIRE(s.status == LowRankSearch<RationalField>::Status::Witness);
  CHECK(s.witness.front() == x * x);
  CHECK(s.witness_rank == 1);
  CHECK(s.witness_certified);
  CHECK_THROWS_AS(QuadricSpace<RationalField>(R, {x * x, x * x.scaled(3)}), std::invalid_argument);

  auto v = obstruction_necessary_condition(std::vector<Polynomial<RationalField>>{x * x, y * y});
  CHECK(v.outcome == NecessaryCondition::Outcome::Passed);
  CHECK(v.checks.front().verdict == Verdict::Pass);
}

TEST_CASE("the pencil x^2 - y^2, xy: squares only over i") {
  // over Q the rank-one locus is two conjugate points and neither is rational
  auto R = xyz(RationalField(), 2);
  auto x = var(R, 0), y = var(R, 1);
  auto s = low_rank_member_search(QuadricSpace<RationalField>(R, {x * x - y * y, x * y}), 1);
  CHECK(s.locus_dim == 0);
  CHECK(s.locus_degree == 2u);
  CHECK(s.status == LowRankSearch<RationalField>::Status::NoneFound);
  CHECK(!s.exhaustive);

  for (std::uint32_t p : {5u, 7u, 13u, 11u}) {
    PrimeField k(p);
    auto S = xyz(k, 2);
    auto a = var(S, 0), b = var(S, 1);
    auto f = low_rank_member_search(QuadricSpace<PrimeField>(S, {a * a - b * b, a * b}), 1);
    const std::size_t points = square_members_of_pencil(p);
    CHECK(points <= *f.locus_degree);
    CHECK(points == (p % 4 == 1 ? 2u : 0u));
    if (points) {
      REQUIRE(f.status == LowRankSearch<PrimeField>::Status::Witness);
      CHECK(rank(f.witness.front()) == 1);
    } else {
      CHECK(f.status == LowRankSearch<PrimeField>::Status::None);
      CHECK(f.exhaustive);
    }
  }
}

TEST_CASE("finite-field mode is evidence for rational ideals") {
  auto R = xyz(RationalField());
  auto x = var(R, 0), y = var(R, 1), z = var(R, 2);
  std::vector<Polynomial<RationalField>> I{x * (x + y), y * (y + z), z * (z + x)};
  auto v5 = obstruction_necessary_condition(I, SearchMode::parse("gf:5"));
  CHECK(v5.mode == "gf:5");
  CHECK(v5.outcome == NecessaryCondition::Outcome::Inconclusive);
  CHECK(v5.checks[0].verdict == Verdict::Inconclusive);

  // over GF(5) itself the exhaustive search is a proof
  auto S = xyz(PrimeField(5));
  auto a = var(S, 0), b = var(S, 1), c = var(S, 2);
  auto w = obstruction_necessary_condition(std::vector<Polynomial<PrimeField>>{a * (a + b), b * (b + c), c * (c + a)}, SearchMode::parse("gf:5"));
  CHECK(w.outcome == NecessaryCondition::Outcome::Obstructed);
  CHECK_THROWS_AS(obstruction_necessary_condition(std::vector<Polynomial<PrimeField>>{a * (a + b), b * (b + c), c * (c + a)}, SearchMode::parse("gf:7")), std::invalid_argument);
  CHECK_THROWS_AS(SearchMode::parse("gf:6"), std::invalid_argument);
  CHECK_THROWS_AS(SearchMode::parse("modular"), std::invalid_argument);
}

TEST_CASE("generic three quadrics in three variables are obstructed") {
  std::mt19937_64 rng(11);
  PrimeField k(32003);
  auto R = xyz(k);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Polynomial<PrimeField>> I;
    for (int s = 0; s < 3; ++s) I.push_back(random_homogeneous(R, 2, 24, rng));
    auto v = obstruction_necessary_condition(I);
    REQUIRE(v.n == 0);
    CHECK(v.outcome == NecessaryCondition::Outcome::Obstructed);
    CHECK(v.failing_m == 1);
    CHECK(*buchberger(R, I).delta() > 2);
  }
}

TEST_CASE("ideals with quadratic initial ideals pass the rank condition") {
  std::mt19937_64 rng(13);
  PrimeField k(32003);
  SECTION("quadratic monomial ideals") {
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t n = 2 + uniform_below(rng, 3);
      auto R = xyz(k, n);
      auto M = random_monomial_ideal(n, 1 + uniform_below(rng, 4), 2, 2, rng);
      std::vector<Polynomial<PrimeField>> I;
      for (const auto& g : M.gens()) I.push_back(Polynomial<PrimeField>::monomial(R, g));
      auto v = obstruction_necessary_condition(I);
      CHECK(v.outcome == NecessaryCondition::Outcome::Passed);
      for (const auto& c : v.checks) CHECK(c.witness_rank <= std::max(c.rank_bound, n));
    }
  }
  SECTION("ideals whose grevlex basis is quadratic") {
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 20; ++trial) {
      std::size_t n = 3 + uniform_below(rng, 2);
      auto R = xyz(k, n);
      std::vector<Polynomial<PrimeField>> I;
      std::size_t g = 1 + uniform_below(rng, 3);
      for (std::size_t s = 0; s < g; ++s)
        I.push_back(uniform_below(rng, 2) ? random_binomial(R, 2, rng) : random_homogeneous(R, 2, 2, rng));
      if (*buchberger(R, I).delta() > 2) continue;
      ++tested;
      CHECK(obstruction_necessary_condition(I).outcome != NecessaryCondition::Outcome::Obstructed);
    }
    CHECK(tested >= 10);
  }
  SECTION("quadratic Veronese kernels") {
    for (std::size_t r = 2; r <= 3; ++r) {
      auto S = xyz(k, r);
      VeroneseRing<PrimeField> V(S, {2});
      auto v = obstruction_necessary_condition(V.kernel_generators());
      CHECK(v.outcome == NecessaryCondition::Outcome::Passed);
    }
  }
}

TEST_CASE("dimension count against the Grassmannian") {
  auto d03 = dimension_count(0, 3);
  CHECK(d03.dim_Q == 8);
  CHECK(d03.dim_Gr == 9);
  CHECK(d03.obstructed);
  CHECK(dimension_count(1, 5).obstructed);
  CHECK(dimension_count(2, 6).obstructed);
  CHECK(!dimension_count(1, 3).obstructed);
  CHECK(dimension_count(1, 3).threshold == mpq_class(1, 3));
  for (long e = 1; e <= 20; ++e)
    for (long n = 0; n <= 50; ++n) {
      auto d = dimension_count(n, e);
      CHECK(d.formula_agrees);
      // 6 (dim_Gr - dim_Q) = e ((e-1)(e-2) - 6n)
      CHECK(6 * (d.dim_Gr - d.dim_Q) == mpq_class(e * ((e - 1) * (e - 2) - 6 * n)));
    }
  CHECK_THROWS_AS(dimension_count(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(dimension_count(-1, 2), std::invalid_argument);
}
