#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "a2surf/a2surf.hpp"

using namespace a2surf;

namespace {

// Same diagram with edge labels permuted and vertices listed in reverse.
Diagram relabeled(const Diagram& d, Rng& rng) {
  int top = 0;
  for (const auto& v : d.vertices)
    for (int s : v.slots) top = std::max(top, std::abs(s));
  for (int s : d.boundary) top = std::max(top, std::abs(s));
  std::vector<int> perm(top + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  auto map = [&](int s) { return s > 0 ? perm[s] : -perm[-s]; };
  Diagram out = d;
  for (auto& v : out.vertices)
    for (int& s : v.slots) s = map(s);
  for (int& s : out.boundary) s = map(s);
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

const char* kCatalog[] = {"unknot",       "hopf-neg",       "hopf-pos",        "trefoil-r",
                          "torus-2-4-neg", "figure-eight",   "hopf-trefoil-sum", "square-knot",
                          "yoshikawa-8_1", "yoshikawa-9_1",  "yoshikawa-10_2",  "gamma6-vertical",
                          "gamma6-horizontal", "t7", "t7p", "t8", "t8p"};

}  // namespace

TEST_CASE("free loops only") {
  Diagram d = parse_mgd("O 3\n");
  CHECK(d.vertices.empty());
  CHECK(d.free_loops == 3);
  CHECK(link_components(d) == 3);
  CHECK(writhe(d) == 0);
}

TEST_CASE("comments and blank lines") {
  Diagram d = parse_mgd("# right trefoil\n\nX+ +1 +2 -3 -4  # first\nX+ +4 +3 -5 -6\nX+ +6 +5 -2 -1\n");
  CHECK(d.vertices.size() == 3);
  CHECK(writhe(d) == 3);
  CHECK(writhe(mirror(d)) == -3);
  CHECK(link_components(d) == 1);
}

TEST_CASE("syntax errors carry line numbers") {
  try {
    parse_mgd("O 1\nX+ 1 2\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_mgd("Q +1 -1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_mgd("X+ +1 +2 -3 x\n"), SyntaxError);
}

TEST_CASE("validation") {
  // Two crossings glued into a torus rather than a sphere.
  CHECK_THROWS_AS(validate(parse_mgd("X+ +1 +2 -1 -2\n")), ValidationError);
  // An edge label used only once.
  CHECK_THROWS_AS(validate(parse_mgd("X+ +1 +2 -3 -4\nX+ +4 +3 -5 -6\nX+ +6 +5 -2 -7\n")), ValidationError);
  for (const char* name : kCatalog) CHECK_NOTHROW(validate(load_catalog(name)));
}

TEST_CASE("serialization round trip") {
  for (const char* name : kCatalog) {
    Diagram d = load_catalog(name);
    Diagram e = parse_mgd(serialize_mgd(d));
    CHECK(serialize_mgd(e) == serialize_mgd(d));
    CHECK(writhe(e) == writhe(d));
    CHECK(face_size_multiset(e) == face_size_multiset(d));
    CHECK(canonical_form(e) == canonical_form(d));
    if (!d.is_tangle() && marked_vertices(d).empty()) CHECK(link_components(e) == link_components(d));
  }
}

TEST_CASE("net conversion round trip") {
  Rng rng(GENERATE(1, 2, 3));
  for (int i = 0; i < 20; ++i) {
    Diagram d = random_marked_diagram(rng, 3, 6);
    Diagram e = to_diagram(to_net(d));
    CHECK(canonical_form(e) == canonical_form(d));
    CHECK(writhe(e) == writhe(d));
    CHECK(marked_vertices(e).size() == marked_vertices(d).size());
  }
}

TEST_CASE("euler characteristic of closed diagrams") {
  Rng rng(GENERATE(4, 5));
  for (int i = 0; i < 20; ++i) {
    Diagram d = random_marked_diagram(rng, 3, 6);
    if (d.vertices.empty() || d.free_loops) continue;
    const int v = static_cast<int>(d.vertices.size());
    const int e = 2 * v;  // every vertex is 4-valent
    // Face orbits are counted per component, so each component is a sphere.
    const int f = static_cast<int>(face_orbits(to_net(d)).size());
    CHECK(v - e + f == 2 * static_cast<int>(node_components(to_net(d)).size()));
  }
}

TEST_CASE("canonical form ignores labels") {
  Rng rng(9);
  for (const char* name : kCatalog) {
    Diagram d = load_catalog(name);
    CHECK(canonical_form(relabeled(d, rng)) == canonical_form(d));
  }
  CHECK(canonical_form(load_catalog("trefoil-r")) != canonical_form(mirror(load_catalog("trefoil-r"))));
  CHECK(canonical_form(load_catalog("hopf-pos")) != canonical_form(load_catalog("hopf-neg")));
}

TEST_CASE("mirror is an involution") {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    Diagram d = random_marked_diagram(rng, 2, 6);
    CHECK(canonical_form(mirror(mirror(d))) == canonical_form(d));
    CHECK(writhe(mirror(d)) == -writhe(d));
  }
}

TEST_CASE("state resolution") {
  Diagram d = load_catalog("gamma6-vertical");
  Diagram inf = resolve_state(d, {Smoothing::TInf});
  Diagram zero = resolve_state(d, {Smoothing::TZero});
  CHECK(link_components(inf) == 2);
  CHECK(link_components(zero) == 1);
  Diagram h = load_catalog("gamma6-horizontal");
  CHECK(link_components(resolve_state(h, {Smoothing::TInf})) == 1);
  CHECK(link_components(resolve_state(h, {Smoothing::TZero})) == 2);
}
