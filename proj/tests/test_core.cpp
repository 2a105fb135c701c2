#include "quadgb/parse.hpp"
#include "quadgb/random.hpp"

#include <catch_amalgamated.hpp>

using namespace quadgb;

namespace {

// Textbook grevlex: higher degree wins; otherwise a > b iff the last nonzero
// entry of a - b is negative.
bool textbook_grevlex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] - b[i] < 0;
  return false;
}

RingPtr<RationalField> qq_ring(std::vector<std::string> names, MonomialOrder ord) {
  return make_ring(RationalField(), std::move(names), std::move(ord));
}

}  // namespace

TEST_CASE("grevlex matches the textbook definition on all pairs of low degree") {
  for (Exponent d = 1; d <= 3; ++d) {
    auto mons = monomials_of_degree(3, d);
    auto ord = MonomialOrder::grevlex(3);
    for (const auto& a : mons)
      for (const auto& b : mons) {
        auto c = ord.compare(a, b);
        if (a == b) CHECK(c == std::strong_ordering::equal);
        else CHECK((c == std::strong_ordering::greater) == textbook_grevlex_greater(a, b));
      }
  }
}

TEST_CASE("grevlex: y^2 beats xz in k[x,y,z]") {
  auto ord = MonomialOrder::grevlex(3);
  Monomial xz{1, 0, 1}, yy{0, 2, 0};
  CHECK(ord.compare(xz, yy) == std::strong_ordering::less);
  CHECK(!textbook_grevlex_greater(xz, yy));
  auto sorted = monomials_of_degree(3, 2);
  std::sort(sorted.begin(), sorted.end(), [&](const Monomial& a, const Monomial& b) { return ord.greater(a, b); });
  std::vector<Monomial> expect{{2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  CHECK(sorted == expect);
}

TEST_CASE("compare rejects monomials of the wrong length") {
  auto ord = MonomialOrder::lex(2);
  CHECK_THROWS_AS(ord.compare(Monomial{1, 0, 0}, Monomial{1, 0}), std::invalid_argument);
  CHECK(ord.compare(Monomial{1, 2}, Monomial{1, 2}) == std::strong_ordering::equal);
}

TEST_CASE("induced order on T_2 for r = 2") {
  // variables z_{x^2}, z_{xy}, z_{y^2}
  std::vector<Monomial> images{{2, 0}, {1, 1}, {0, 2}};
  auto base = std::make_shared<const MonomialOrder>(MonomialOrder::grevlex(2));
  auto ord = MonomialOrder::induced(base, images);
  Monomial chunked{1, 0, 1}, square{0, 2, 0};
  CHECK(ord.compare(chunked, square) == std::strong_ordering::less);
  // restricted to variables it agrees with the base order
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(ord.compare(Monomial::variable(3, i), Monomial::variable(3, j)) == base->compare(images[i], images[j]));
}

TEST_CASE("nu vectors") {
  CHECK(nu_vector(Monomial{2, 0}, 2) == std::vector<int>{0, 1, 0, 1});
  CHECK(nu_vector(Monomial{1, 1}, 2) == std::vector<int>{0, 0, 1, 1});
  CHECK_THROWS(nu_vector(Monomial{1, 1}, -1));
}

TEST_CASE("nu order on degree-3 monomials of k[x,y] follows the literal definition") {
  auto mons = monomials_of_degree(2, 3);
  auto literal = [](const Monomial& m) {
    std::vector<int> v;
    for (int i = 1; i <= 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        Monomial p = Monomial::variable(2, j, i);
        v.push_back(p.divides(m) ? 0 : 1);
      }
    return v;
  };
  for (const auto& a : mons)
    for (const auto& b : mons) CHECK(compare_nu(a, b, 3) == (literal(a) <=> literal(b)));
  // variable ranking of the nu order on T_3
  auto ord = MonomialOrder::nu(mons, 3);
  for (std::size_t i = 0; i < mons.size(); ++i)
    for (std::size_t j = 0; j < mons.size(); ++j)
      if (i != j) CHECK(ord.greater(Monomial::variable(4, i), Monomial::variable(4, j)) == (literal(mons[i]) > literal(mons[j])));
}

TEST_CASE("order axioms on random triples") {
  std::mt19937_64 rng(7);
  std::vector<Monomial> images;
  for_each_monomial(3, 2, [&](const Monomial& m) { images.push_back(m); });
  auto base = std::make_shared<const MonomialOrder>(MonomialOrder::grevlex(3));
  std::vector<std::pair<MonomialOrder, std::size_t>> orders{
      {MonomialOrder::lex(3), 3},
      {MonomialOrder::grevlex(3), 3},
      {MonomialOrder::weight(3, {{3, 1, 2}, {0, 1, 0}}), 3},
      {MonomialOrder::induced(base, images), images.size()},
      {MonomialOrder::nu(images, 2), images.size()},
  };
  for (const auto& [ord, n] : orders) {
    for (int trial = 0; trial < 300; ++trial) {
      Exponent d = 1 + static_cast<Exponent>(uniform_below(rng, 4));
      auto a = random_monomial(n, d, rng), b = random_monomial(n, d, rng), c = random_monomial(n, d, rng);
      auto m = random_monomial(n, 2, rng);
      auto ab = ord.compare(a, b);
      CHECK((ab == std::strong_ordering::equal) == (a == b));
      CHECK(ord.compare(b, a) == (0 <=> ab));
      if (ord.greater(a, b) && ord.greater(b, c)) CHECK(ord.greater(a, c));
      CHECK(ord.compare(a * m, b * m) == ab);
    }
  }
}

TEST_CASE("polynomial identities") {
  auto R = qq_ring({"x", "y"}, MonomialOrder::grevlex(2));
  auto x = Polynomial<RationalField>::variable(R, 0), y = Polynomial<RationalField>::variable(R, 1);
  CHECK(((x + y) * (x - y)).to_string() == "x^2 - y^2");
  auto R2 = make_ring(PrimeField(2), {"x", "y"}, MonomialOrder::grevlex(2));
  auto X = Polynomial<PrimeField>::variable(R2, 0), Y = Polynomial<PrimeField>::variable(R2, 1);
  CHECK(((X + Y) * (X + Y)).to_string() == "x^2 + y^2");
  CHECK((x - x).is_zero());
  auto S = qq_ring({"x", "y"}, MonomialOrder::lex(2));
  CHECK_THROWS_AS(x + Polynomial<RationalField>::variable(S, 0), std::invalid_argument);
}

TEST_CASE("distributivity against a term-by-term oracle") {
  std::mt19937_64 rng(11);
  auto R = make_ring(PrimeField(32003), indexed_names("x", 3), MonomialOrder::grevlex(3));
  const auto& k = R->field();
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_homogeneous(R, 2, 4, rng), g = random_homogeneous(R, 2, 4, rng), h = random_homogeneous(R, 1, 3, rng);
    CHECK((f + g) * h == f * h + g * h);
    // oracle: accumulate products in a map
    std::map<Monomial, std::uint32_t> acc;
    for (const auto& a : f.terms())
      for (const auto& b : h.terms()) acc[a.mono * b.mono] = k.add(acc[a.mono * b.mono], k.mul(a.coeff, b.coeff));
    auto fh = f * h;
    std::size_t nonzero = 0;
    for (const auto& [m, c] : acc)
      if (c != 0) {
        ++nonzero;
        CHECK(fh.coefficient(m) == c);
      }
    CHECK(fh.size() == nonzero);
    for (std::size_t i = 1; i < fh.size(); ++i) CHECK(R->order().greater(fh.terms()[i - 1].mono, fh.terms()[i].mono));
  }
}

TEST_CASE("field arithmetic invariants") {
  PrimeField k(7);
  CHECK(k.from_int(-1) == 6);
  CHECK(k.mul(k.inv(3), 3) == 1);
  CHECK(k.from_rational(mpq_class(1, 2)) == 4);
  CHECK_THROWS(k.from_rational(mpq_class(1, 7)));
  CHECK_THROWS(PrimeField(8));
  RationalField q;
  auto v = q.from_rational(mpq_class(6, -4));
  CHECK(v.get_num() == -3);
  CHECK(v.get_den() == 2);
}

TEST_CASE("parse and print round trip") {
  const char* inputs[] = {
      "ring GF(2)[a,b] order grevlex; ideal (a^6, a^2*b^4);",
      "ring QQ[x,y,z] order grevlex; ideal (x*(x+y), y*(y+z), z*(z+x));",
      "ring QQ[x,y] order lex; ideal ();",
      "ring GF(32003)[x,y,z] order weight((1,2,3),(0,-1,0)); ideal (x^2 - 1/2*y*z, -3*z^2 + x*y);",
      "ring GF(5)[u,v,w,s] order nu; blocks (2,2); ideal (u*w - v*s);",
  };
  for (const char* text : inputs) {
    auto p = parse_input(text);
    auto printed = with_field(p, [&](auto f) { return p.format(f); });
    auto q = parse_input(printed);
    auto reprinted = with_field(q, [&](auto f) { return q.format(f); });
    CHECK(printed == reprinted);
    CHECK(p.vars == q.vars);
    CHECK(p.gens.size() == q.gens.size());
  }
  auto p = parse_input("ring QQ[x,y,z] order grevlex; ideal (x*(x+y), y*(y+z), z*(z+x));");
  auto R = p.make_ring(RationalField());
  auto g = p.generators(R);
  CHECK(g[0].to_string() == "x^2 + x*y");
  CHECK(g[2].to_string() == "x*z + z^2");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_input("ring QQ[x,y] order grevlex;\nideal (x^2, w);");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
    CHECK(std::string(e.what()).find("unknown variable 'w'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_input("ring QQ[x,y] order grevlex ideal (x);"), ParseError);
  CHECK_THROWS_AS(parse_input("ring GF(4)[x] order lex;"), ParseError);
  CHECK_THROWS_AS(parse_input("ring QQ[x,y] order weight((1,2,3));"), ParseError);
  CHECK_THROWS_AS(parse_input("ring QQ[x,y] order grevlex; ideal (x/y);"), ParseError);
  auto p = parse_input("ring QQ[x,y] order grevlex; ideal (x^2, x + y^2);");
  try {
    p.require_homogeneous();
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 41);
  }
}
