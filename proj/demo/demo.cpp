// A short tour: a Veronese initial ideal, a regularity certificate, a fan and an obstruction.

#include "quadgb/fan.hpp"
#include "quadgb/obstruction.hpp"
#include "quadgb/regularity.hpp"
#include "quadgb/veronese.hpp"

#include <iostream>

using namespace quadgb;

int main() {
  using P = Polynomial<PrimeField>;
  auto S = make_ring(PrimeField(2), {"a", "b"}, MonomialOrder::grevlex(2));
  std::vector<P> I{P::monomial(S, Monomial{6, 0}), P::monomial(S, Monomial{2, 4})};
  std::cout << "I = (a^6, a^2*b^4) over GF(2)\n";
  for (Exponent d = 3; d <= 5; ++d) {
    VeroneseRing<PrimeField> V(S, {d});
    auto in = V.initial_vd_full(I);
    std::cout << "  d = " << d << ": in(V_d(I)) has " << in.gens().size() << " generators, delta " << *in.delta() << "\n";
  }

  auto reg = regularity_resolution(MonomialIdeal(2, {{6, 0}, {2, 4}}), PrimeField(2));
  std::cout << "  reg(I) = " << reg.reg << "\n" << reg.betti.to_string();
  std::mt19937_64 rng(1);
  auto S32003 = make_ring(PrimeField(32003), {"a", "b"}, MonomialOrder::grevlex(2));
  std::vector<P> J{P::monomial(S32003, Monomial{6, 0}), P::monomial(S32003, Monomial{2, 4})};
  if (auto cert = bayer_stillman_regularity(J, 11, rng)) {
    std::cout << "  Bayer-Stillman over GF(32003): e = " << cert->e << " with forms";
    for (const auto& h : cert->forms) std::cout << " " << h.to_string();
    std::cout << "\n";
  }

  auto fan = groebner_fan(symmetric_minors(PrimeField(32003), 3));
  std::size_t quad = 0;
  for (const auto& c : fan.cells) quad += c.initial_ideal.delta() == 2;
  std::cout << "\n2x2 minors of a symmetric 3x3 matrix: " << fan.cells.size() << " initial ideals, " << quad << " quadratic\n";

  RationalField Q;
  auto R = make_ring(Q, std::vector<std::string>{"x", "y", "z"}, MonomialOrder::grevlex(3));
  auto x = Polynomial<RationalField>::variable(R, 0), y = Polynomial<RationalField>::variable(R, 1), z = Polynomial<RationalField>::variable(R, 2);
  auto v = obstruction_necessary_condition(std::vector<Polynomial<RationalField>>{x * (x + y), y * (y + z), z * (z + x)});
  std::cout << "\n(x(x+y), y(y+z), z(z+x)) over QQ: " << to_string(v.outcome) << "\n";
  for (const auto& c : v.checks) std::cout << "  m = " << c.m << ", rank <= " << c.rank_bound << ": " << to_string(c.verdict) << " (" << c.reason << ")\n";

  for (auto [n, e] : std::vector<std::pair<long, long>>{{0, 3}, {1, 5}, {2, 6}}) {
    auto d = dimension_count(n, e);
    std::cout << "  " << e << " generic quadrics in " << n + e << " variables: dim Q = " << d.dim_Q.get_str() << ", dim Gr = " << d.dim_Gr.get_str()
              << (d.obstructed ? ", no quadratic initial ideal\n" : "\n");
  }
  return 0;
}
