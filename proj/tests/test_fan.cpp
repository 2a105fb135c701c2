#include "quadgb/fan.hpp"
#include "quadgb/obstruction.hpp"
#include "quadgb/random.hpp"
#include "quadgb/veronese.hpp"

#include <catch_amalgamated.hpp>

using namespace quadgb;

namespace {

using GF = PrimeField;
using P = Polynomial<GF>;

RingPtr<GF> ring(std::size_t n) { return make_ring(GF(32003), indexed_names("x", n), MonomialOrder::grevlex(n)); }

std::size_t quadratic_cells(const GroebnerFan& fan) {
  return std::count_if(fan.cells.begin(), fan.cells.end(), [](const FanCell& c) { return c.initial_ideal.delta() == 2; });
}

// Brute force over small weight vectors: the set of initial ideals reached.
std::set<std::vector<Monomial>> sampled_initial_ideals(const std::vector<P>& gens, std::int64_t bound) {
  const auto& R = gens.front().ring();
  const std::size_t n = R->nvars();
  std::set<std::vector<Monomial>> out;
  std::vector<std::int64_t> w(n, 0);
  while (true) {
    auto Rw = R->with_order(MonomialOrder::weight(n, {w}));
    std::vector<P> moved;
    for (const auto& g : gens) moved.push_back(g.in_ring(Rw));
    auto G = buchberger(Rw, moved);
    auto key = G.initial_ideal().gens();
    std::sort(key.begin(), key.end());
    out.insert(key);
    std::size_t i = 0;
    while (i < n && w[i] == bound) w[i++] = 0;
    if (i == n) break;
    ++w[i];
  }
  return out;
}

}  // namespace

TEST_CASE("exact simplex") {
  using lp::Relation;
  // maximize x + y with x + 2y <= 4, 3x + y <= 6: optimum at (8/5, 6/5)
  lp::Problem P(2);
  P.add({1, 2}, Relation::LessEqual, 4);
  P.add({3, 1}, Relation::LessEqual, 6);
  P.c = {1, 1};
  auto r = lp::solve(P);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.x[0] == mpq_class(8, 5));
  CHECK(r.x[1] == mpq_class(6, 5));
  CHECK(r.value == mpq_class(14, 5));

  lp::Problem Q(1);
  Q.add({1}, Relation::GreaterEqual, 2);
  Q.add({1}, Relation::LessEqual, 1);
  CHECK(lp::solve(Q).status == lp::Status::Infeasible);

  lp::Problem U(2);
  U.add({1, -1}, Relation::LessEqual, 1);
  U.c = {1, 0};
  CHECK(lp::solve(U).status == lp::Status::Unbounded);

  // free variables and equalities: x - y = -3, x + y >= 1, minimize x
  lp::Problem V(2);
  V.free = {true, true};
  V.add({1, -1}, Relation::Equal, -3);
  V.add({1, 1}, Relation::GreaterEqual, 1);
  V.c = {-1, 0};
  auto v = lp::solve(V);
  REQUIRE(v.status == lp::Status::Optimal);
  CHECK(v.x[0] == -1);
  CHECK(v.x[1] == 2);

  // redundant equality rows
  lp::Problem W(2);
  W.add({1, 1}, Relation::Equal, 2);
  W.add({2, 2}, Relation::Equal, 4);
  W.c = {1, 0};
  auto w = lp::solve(W);
  REQUIRE(w.status == lp::Status::Optimal);
  CHECK(w.value == 2);
}

TEST_CASE("randomised simplex against vertex enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    // maximize c.x over {x >= 0, A x <= b} in the plane, b > 0
    lp::Problem P(2);
    std::vector<std::array<long, 3>> rows;
    for (int i = 0; i < 3; ++i) {
      std::array<long, 3> r{static_cast<long>(uniform_below(rng, 7)) - 2, static_cast<long>(uniform_below(rng, 7)) - 2, 1 + static_cast<long>(uniform_below(rng, 6))};
      rows.push_back(r);
      P.add({r[0], r[1]}, lp::Relation::LessEqual, r[2]);
    }
    P.c = {static_cast<long>(uniform_below(rng, 5)) - 1, static_cast<long>(uniform_below(rng, 5)) - 1};
    auto res = lp::solve(P);
    // oracle: all intersections of pairs of boundary lines, feasible ones only
    std::vector<std::array<long, 3>> lines = rows;
    lines.push_back({1, 0, 0});
    lines.push_back({0, 1, 0});
    std::optional<mpq_class> best;
    for (std::size_t a = 0; a < lines.size(); ++a)
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        mpq_class det = lines[a][0] * lines[b][1] - lines[a][1] * lines[b][0];
        if (det == 0) continue;
        mpq_class x = (mpq_class(lines[a][2]) * lines[b][1] - mpq_class(lines[a][1]) * lines[b][2]) / det;
        mpq_class y = (mpq_class(lines[a][0]) * lines[b][2] - mpq_class(lines[a][2]) * lines[b][0]) / det;
        if (x < 0 || y < 0) continue;
        bool ok = true;
        for (const auto& r : rows) ok = ok && r[0] * x + r[1] * y <= r[2];
        if (!ok) continue;
        mpq_class val = P.c[0] * x + P.c[1] * y;
        if (!best || val > *best) best = val;
      }
    if (res.status == lp::Status::Optimal) {
      REQUIRE(best);
      CHECK(res.value == *best);
    } else {
      CHECK(res.status == lp::Status::Unbounded);
    }
  }
}

TEST_CASE("fan of the symmetric 2x2 minors") {
  auto gens = symmetric_minors(GF(32003), 3);
  REQUIRE(gens.size() == 6);
  auto fan = groebner_fan(gens);
  CHECK(fan.complete);
  CHECK(fan.cells.size() == 29);
  CHECK(quadratic_cells(fan) == 23);
  for (const auto& c : fan.cells) {
    CHECK(c.verified);
    if (c.initial_ideal.delta() != 2) {
      CHECK(c.initial_ideal.delta() == 3);
      REQUIRE(c.degree_profile.size() >= 4);
      CHECK(c.degree_profile[3] == 1);
    }
    for (Exponent t = 0; t <= 5; ++t) CHECK(hilbert_function(c.initial_ideal, t) == hilbert_function(fan.cells.front().initial_ideal, t));
    for (auto w : c.weight_vector) CHECK(w > 0);
  }
  CHECK(delta_within_coordinates(fan).value == 2);

  // the same ideal as the kernel of the degree-2 Veronese map
  VeroneseRing<GF> V(ring(3), {2});
  auto kfan = groebner_fan(V.kernel_generators());
  CHECK(kfan.cells.size() == 29);
  CHECK(quadratic_cells(kfan) == 23);
}

TEST_CASE("fans of principal and monomial ideals") {
  auto R = ring(2);
  auto x = P::variable(R, 0), y = P::variable(R, 1);
  auto fan = groebner_fan(std::vector<P>{x * x - y * y});
  REQUIRE(fan.cells.size() == 2);
  std::set<std::vector<Monomial>> ins;
  for (const auto& c : fan.cells) ins.insert(c.initial_ideal.gens());
  CHECK(ins == std::set<std::vector<Monomial>>{{Monomial{2, 0}}, {Monomial{0, 2}}});

  // a principal ideal has one cell per vertex of the Newton polytope
  auto R3 = ring(3);
  auto a = P::variable(R3, 0), b = P::variable(R3, 1), c = P::variable(R3, 2);
  CHECK(groebner_fan(std::vector<P>{a * a * b + b * b * c + c * c * a + a * b * c}).cells.size() == 3);

  auto m = groebner_fan(std::vector<P>{a * b * c});
  CHECK(m.cells.size() == 1);
  CHECK(delta_within_coordinates(m).value == 3);
  CHECK_THROWS_AS(groebner_fan(std::vector<P>{a * a - b}), std::invalid_argument);
}

TEST_CASE("fan cells agree with brute force over small weights") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    auto R = ring(3);
    std::vector<P> gens{random_binomial(R, 2, rng), random_homogeneous(R, 2, 3, rng)};
    auto fan = groebner_fan(gens);
    std::set<std::vector<Monomial>> cells;
    for (const auto& c : fan.cells) {
      CHECK(c.verified);
      auto k = c.initial_ideal.gens();
      std::sort(k.begin(), k.end());
      cells.insert(k);
    }
    CHECK(cells.size() == fan.cells.size());
    // every initial ideal reached by a small weight is a cell
    for (const auto& k : sampled_initial_ideals(gens, 4)) CHECK(cells.count(k) == 1);
  }
}

TEST_CASE("cell count is invariant under permuting variables") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    auto R = ring(3);
    std::vector<P> gens{random_binomial(R, 2, rng), random_binomial(R, 2, rng)};
    std::vector<std::size_t> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<P> images;
    for (std::size_t i = 0; i < 3; ++i) images.push_back(P::variable(R, perm[i]));
    std::vector<P> permuted;
    for (const auto& g : gens) permuted.push_back(substitute(g, images, R));
    CHECK(groebner_fan(gens).cells.size() == groebner_fan(permuted).cells.size());
  }
}

TEST_CASE("budgets mark partial fans") {
  auto gens = symmetric_minors(GF(32003), 3);
  FanOptions opt;
  opt.max_cells = 5;
  auto fan = groebner_fan(gens, opt);
  CHECK(!fan.complete);
  CHECK(fan.cells.size() <= 5);
  CHECK(delta_within_coordinates(fan).partial);
  FanOptions two;
  two.threads = 2;
  auto par = groebner_fan(gens, two);
  auto seq = groebner_fan(gens);
  REQUIRE(par.cells.size() == seq.cells.size());
  for (std::size_t i = 0; i < par.cells.size(); ++i) {
    CHECK(par.cells[i].initial_ideal.gens() == seq.cells[i].initial_ideal.gens());
    CHECK(par.cells[i].weight_vector == seq.cells[i].weight_vector);
  }
}

TEST_CASE("obstructed complete intersections have no quadratic cell") {
  std::mt19937_64 rng(23);
  auto R = ring(3);
  int obstructed = 0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<P> gens;
    for (int s = 0; s < 3; ++s) gens.push_back(random_homogeneous(R, 2, 6, rng));
    auto v = obstruction_necessary_condition(gens);
    if (v.outcome != NecessaryCondition::Outcome::Obstructed) continue;
    ++obstructed;
    auto d = delta_within_coordinates(gens);
    CHECK(!d.partial);
    CHECK(d.value > 2);
  }
  CHECK(obstructed > 0);
}
