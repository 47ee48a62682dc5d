#include <catch_amalgamated.hpp>

#include "a2surf/a2surf.hpp"

using namespace a2surf;

namespace {

ZPoly zp(std::initializer_list<long long> coeffs) {
  ZPoly p, zk(1);
  for (long long c : coeffs) {
    p = p + zk.scaled(c);
    zk = zk.times_z();
  }
  return p;
}

}  // namespace

TEST_CASE("textbook Conway polynomials") {
  CHECK(conway_poly(load_catalog("unknot")) == zp({1}));
  CHECK(conway_poly(parse_mgd("O 2")) == zp({0}));
  CHECK(conway_poly(load_catalog("hopf-pos")) == zp({0, 1}));
  CHECK(conway_poly(load_catalog("hopf-neg")) == zp({0, -1}));
  CHECK(conway_poly(load_catalog("trefoil-r")) == zp({1, 0, 1}));
  CHECK(conway_poly(load_catalog("figure-eight")) == zp({1, 0, -1}));
  // Connected sums multiply: (1 + z^2)^2.
  CHECK(conway_poly(load_catalog("square-knot")) == zp({1, 0, 2, 0, 1}));
  CHECK(conway_poly(load_catalog("trefoil-r")).str() == "1 + z^2");
}

TEST_CASE("crossing cap") {
  CHECK_THROWS_AS(conway_poly(load_catalog("trefoil-r"), 2), DepthExceeded);
  CHECK_NOTHROW(conway_poly(load_catalog("trefoil-r"), 3));
  CHECK_THROWS(conway_poly(load_catalog("yoshikawa-8_1")));
}

TEST_CASE("skein relation at any crossing") {
  Rng rng(GENERATE(31, 32, 33));
  for (int i = 0; i < 20; ++i) {
    SkeinTriple t = random_skein_triple(rng, 0, 6);
    CHECK(conway_poly(t.plus) - conway_poly(t.minus) == conway_poly(t.zero).times_z());
  }
}

TEST_CASE("parity and mirror symmetry") {
  Rng rng(GENERATE(41, 42));
  for (int i = 0; i < 20; ++i) {
    Diagram d = random_link_diagram(rng, 7);
    ZPoly p = conway_poly(d), q = conway_poly(mirror(d));
    const int c = link_components(d);
    for (size_t k = 0; k < p.coeffs().size(); ++k) {
      if ((static_cast<int>(k) - c + 1) % 2 != 0) CHECK(p.coeff(k) == 0);
      CHECK(q.coeff(k) == (k % 2 ? -p.coeff(k) : p.coeff(k)));
    }
  }
}

TEST_CASE("Conway value equals the bracket at a primitive 18th root") {
  // There a^9 = -1, so the bracket skein relation becomes the Conway one and
  // unlinks vanish with A.
  for (const char* name : {"unknot", "hopf-pos", "hopf-neg", "trefoil-r", "torus-2-4-neg", "figure-eight",
                           "hopf-trefoil-sum", "square-knot"}) {
    Diagram d = load_catalog(name);
    CHECK(conway_in_quotient(d) == quotient_reduce(normalized_bracket(d), Modulus::PHI18));
  }
  Rng rng(51);
  for (int i = 0; i < 25; ++i) {
    Diagram d = random_link_diagram(rng, 7);
    CHECK(conway_in_quotient(d) == quotient_reduce(normalized_bracket(d), Modulus::PHI18));
  }
  CHECK(conway_in_quotient(load_catalog("trefoil-r")) == QuotientElem(Modulus::PHI18, -2));
  CHECK(conway_in_quotient(load_catalog("square-knot")) == QuotientElem(Modulus::PHI18, 4));
}
