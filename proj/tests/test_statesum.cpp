#include <catch_amalgamated.hpp>

#include "a2surf/a2surf.hpp"

using namespace a2surf;

namespace {

LaurentA lp(std::initializer_list<std::pair<int, long long>> terms) {
  LaurentA p;
  for (auto [e, c] : terms) p += LaurentA::monomial(c, e);
  return p;
}

const char* kMarked[] = {"yoshikawa-8_1", "yoshikawa-9_1", "yoshikawa-10_2", "gamma6-vertical",
                         "gamma6-horizontal"};

}  // namespace

TEST_CASE("spun trefoil") {
  Diagram d = load_catalog("yoshikawa-8_1");
  InvariantReport rep = surface_poly(d);
  CHECK(rep.marked_count == 2);
  CHECK(rep.writhe == 0);
  REQUIRE(rep.states.size() == 4);
  const LaurentA A = named_constant(Constant::A);
  const LaurentA right = lp({{12, 1}, {24, 1}, {36, -1}});
  // The two mixed states give the square knot and a two-component unlink.
  SurfacePoly want = SurfacePoly::term(A, 2, 0) + SurfacePoly::term(A, 0, 2) +
                     SurfacePoly::term(right * right.mirror() + A * A, 1, 1);
  CHECK(rep.poly == want);
  CHECK(rep.poly.str() ==
        "(a^-6 + 1 + a^6)*x^0*y^2 + (-a^-24 + a^-12 + 2*a^-6 + 6 + 2*a^6 + a^12 - a^24)*x^1*y^1 + "
        "(a^-6 + 1 + a^6)*x^2*y^0");
  // The invariant sums the per-state brackets.
  SurfacePoly sum;
  for (const auto& r : rep.states) sum += SurfacePoly::term(r.bracket.shifted(8 * rep.writhe), r.x_deg, r.y_deg);
  CHECK(sum == rep.poly);
}

TEST_CASE("closed link diagrams have a constant invariant") {
  for (const char* name : {"trefoil-r", "figure-eight", "hopf-pos"}) {
    Diagram d = load_catalog(name);
    CHECK(invariant(d) == SurfacePoly(normalized_bracket(d)));
  }
}

TEST_CASE("state sum properties") {
  Rng rng(GENERATE(61, 62, 63));
  for (int i = 0; i < 12; ++i) {
    Diagram d = random_marked_diagram(rng, 3, 6);
    const int h = static_cast<int>(marked_vertices(d).size());
    SurfacePoly inv = invariant(d);
    CHECK(inv.homogeneous_degree() == h);
    CHECK(static_cast<int>(state_table(d).size()) == 1 << h);
    CHECK(invariant(mirror(d)) == inv.mirror());
    CHECK(double_bracket(d) == LaurentA::a_pow(-8 * writhe(d)) * inv);
  }
}

TEST_CASE("specializations") {
  const SurfacePoly xmy = SurfacePoly::x() - SurfacePoly::y(), xpy = SurfacePoly::x() + SurfacePoly::y();
  auto check = [&](const Diagram& d) {
    const int h = static_cast<int>(marked_vertices(d).size());
    SurfacePoly inv = invariant(d);
    const int comps = strand_components(state_net(d, State(h, Smoothing::TInf)));
    const long long eps = comps % 2 ? 1 : -1;
    CHECK(quotient_reduce(inv, Modulus::A6P1) == quotient_reduce(LaurentA(eps) * xmy.pow(h), Modulus::A6P1));
    CHECK(quotient_reduce(inv, Modulus::A12P1) == quotient_reduce(xpy.pow(h), Modulus::A12P1));
  };
  for (const char* name : kMarked) check(load_catalog(name));
  Rng rng(GENERATE(71, 72));
  for (int i = 0; i < 15; ++i) check(random_marked_diagram(rng, 3, 6));
  CHECK(specialize(load_catalog("yoshikawa-8_1"), Modulus::A6P1).str() ==
        "(-1)*x^0*y^2 + (2)*x^1*y^1 + (-1)*x^2*y^0");
}

TEST_CASE("Conway state sum") {
  for (const char* name : kMarked) {
    Diagram d = load_catalog(name);
    CHECK(conway_state_sum(d) == specialize(d, Modulus::PHI18));
  }
  Rng rng(81);
  for (int i = 0; i < 20; ++i) {
    Diagram d = random_marked_diagram(rng, 3, 6);
    CHECK(conway_state_sum(d) == specialize(d, Modulus::PHI18));
  }
}

TEST_CASE("evaluation at exp(2 pi i / 18)") {
  ComplexPoly p = p9_star(load_catalog("yoshikawa-8_1"));
  ComplexPoly want{{XY{1, 1}, {4.0, 0.0}}};
  CHECK(complex_poly_close(p, want));
  CHECK_FALSE(complex_poly_close(p, ComplexPoly{{XY{1, 1}, {9.0, 0.0}}}));
}

TEST_CASE("ribbon coefficient") {
  RibbonReport rep = ribbon_analysis(load_catalog("yoshikawa-8_1"));
  REQUIRE(rep.is_ribbon);
  CHECK(rep.n == 1);
  CHECK(rep.pairs.size() == 1);
  CHECK(rep.monomial);
  REQUIRE(rep.c);
  REQUIRE(rep.c_oracle);
  CHECK(*rep.c == *rep.c_oracle);
  // The mixed states are the square knot, (1 + z^2)^2 = 4, and an unlink, 0.
  CHECK(*rep.c == QuotientElem(Modulus::PHI18, 4));
  RibbonReport triv = ribbon_analysis(load_catalog("unknot"));
  REQUIRE(triv.c);
  CHECK(*triv.c == QuotientElem(Modulus::PHI18, 1));
  CHECK(triv.n == 0);
  // The two marked vertices of 10_2 share no bigon.
  CHECK_FALSE(ribbon_analysis(load_catalog("yoshikawa-10_2")).is_ribbon);
}

TEST_CASE("admissibility") {
  for (const char* name : kMarked) {
    AdmissibilityReport r = admissibility(load_catalog(name));
    CHECK(r.verdict != Verdict::No);
  }
  // A crossing-free single vertex: both resolutions are unlinks.
  AdmissibilityReport g = admissibility(load_catalog("gamma6-vertical"));
  CHECK(g.verdict == Verdict::Yes);
  CHECK(g.positive.components == 2);
  CHECK(g.negative.components == 1);
  // The trefoil is not a trivial link.
  CHECK(admissibility(load_catalog("trefoil-r")).verdict == Verdict::No);
}

TEST_CASE("skein relation and kinks on marked diagrams") {
  Rng rng(GENERATE(91, 92));
  const LaurentA u = LaurentA::a_pow(-3) - LaurentA::a_pow(3);
  for (int i = 0; i < 12; ++i) {
    SkeinTriple t = random_skein_triple(rng, 2, 5);
    CHECK(LaurentA::a_pow(-9) * invariant(t.plus) - LaurentA::a_pow(9) * invariant(t.minus) == u * invariant(t.zero));
  }
  for (int i = 0; i < 10; ++i) {
    Diagram d = random_marked_diagram(rng, 2, 4);
    for (bool positive : {true, false}) {
      auto k = random_kink_insertion(rng, d, positive);
      if (!k) continue;
      CHECK(double_bracket(*k) == LaurentA::a_pow(positive ? -8 : 8) * double_bracket(d));
      CHECK(invariant(*k) == invariant(d));
    }
  }
}
