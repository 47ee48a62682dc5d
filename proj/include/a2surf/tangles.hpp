#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bracket.hpp"
#include "catalog.hpp"
#include "diagram.hpp"
#include "ring.hpp"
#include "statesum.hpp"

namespace a2surf {

struct BoundaryMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoLabelingFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Boundary position k of t1 meets position 2n-1-k of t2, so t2 sits in the
// outer disk with its boundary read backwards. Directions must be opposite.
inline Diagram glue(const Tangle& t1, const Tangle& t2) {
  if (!t1.is_tangle() || !t2.is_tangle()) throw BoundaryMismatch("glue needs two tangles");
  const size_t m = t1.boundary.size();
  if (t2.boundary.size() != m) throw BoundaryMismatch("boundary sizes differ");
  int shift = 0;
  for (const auto& v : t1.vertices)
    for (int s : v.slots) shift = std::max(shift, std::abs(s));
  for (int s : t1.boundary) shift = std::max(shift, std::abs(s));
  auto lift = [&](int s) { return s > 0 ? s + shift : s - shift; };

  std::map<int, int> parent;
  std::function<int(int)> find = [&](int e) {
    auto it = parent.find(e);
    if (it == parent.end() || it->second == e) return e;
    return it->second = find(it->second);
  };
  for (size_t k = 0; k < m; ++k) {
    int b1 = t1.boundary[k], b2 = lift(t2.boundary[m - 1 - k]);
    if ((b1 > 0) == (b2 > 0))
      throw BoundaryMismatch("boundary position " + std::to_string(k) + " has matching directions");
    int r1 = find(std::abs(b1)), r2 = find(std::abs(b2));
    if (r1 != r2) parent[r1] = r2;
  }

  Diagram d;
  d.free_loops = t1.free_loops + t2.free_loops;
  std::map<int, int> relabel;
  auto label = [&](int s) {
    int r = find(std::abs(s));
    auto [it, fresh] = relabel.emplace(r, static_cast<int>(relabel.size()) + 1);
    return s > 0 ? it->second : -it->second;
  };
  for (const auto& v : t1.vertices) {
    VertexRecord r{v.kind, {}};
    for (int s : v.slots) r.slots.push_back(label(s));
    d.vertices.push_back(std::move(r));
  }
  for (const auto& v : t2.vertices) {
    VertexRecord r{v.kind, {}};
    for (int s : v.slots) r.slots.push_back(label(lift(s)));
    d.vertices.push_back(std::move(r));
  }
  // Classes met only on the boundary are arcs closing into circles.
  std::set<int> roots;
  for (size_t k = 0; k < m; ++k) roots.insert(find(std::abs(t1.boundary[k])));
  for (int r : roots)
    if (!relabel.count(r)) ++d.free_loops;
  return d;
}

// Code of the map rooted at boundary port 0. Source and sink nodes are read
// from the port they are entered by; other nodes in absolute slot order.
inline std::string canonical_code(const Net& net) {
  const int root = net.boundary_node();
  if (root < 0) throw std::invalid_argument("canonical code needs a tangle");
  std::vector<int> idx(net.nodes(), -1), entry(net.nodes(), 0), order{root};
  idx[root] = 0;
  std::ostringstream os;
  for (size_t i = 0; i < order.size(); ++i) {
    int n = order[i], d = net.deg[n];
    os << static_cast<int>(net.kind[n]) << '(';
    for (int k = 0; k < d; ++k) {
      int p = net.first[n] + (entry[n] + k) % d;
      int q = net.link[p], m = net.node_of[q];
      if (idx[m] < 0) {
        idx[m] = static_cast<int>(order.size());
        entry[m] = is_trivalent(net.kind[m]) ? net.slot(q) : 0;
        order.push_back(m);
      }
      os << idx[m] << '.' << (net.slot(q) - entry[m] + net.deg[m]) % net.deg[m] << (net.out[p] ? '>' : '<') << ' ';
    }
    os << ')';
  }
  os << "L" << net.loops << "U" << net.live_count() - static_cast<int>(order.size());
  return os.str();
}

inline std::string canonical_code(const Tangle& t) { return canonical_code(to_net(t)); }

// Faces of the disk picture in which the boundary circle is drawn as a cycle
// through the boundary points. Each face is counted with that length.
struct TilingCensus {
  std::map<int, int> faces;  // size -> count
  int vertices = 0, edges = 0, face_count = 0;
  int boundary_points = 0;
  int weighted = 0;  // T = sum of i * F_{2i}
  bool all_even = true;

  // Sum over faces of (3 - i) F_{2i}; equals n + 3 for an n-tangle.
  int curvature() const {
    int c = 0;
    for (const auto& [s, k] : faces) c += (6 - s) * k;
    return c / 2;
  }
  int expected_curvature() const { return boundary_points / 2 + 3; }
  bool identity_holds() const { return all_even && curvature() == expected_curvature(); }
  bool euler_holds() const { return vertices - edges + face_count + 1 == 2; }
};

inline TilingCensus tiling_census(const Tangle& t) {
  for (const auto& v : t.vertices)
    if (v.kind != VertexKind::TriSource && v.kind != VertexKind::TriSink)
      throw std::invalid_argument("tiling census needs a crossing-free web tangle");
  Net net = to_net(t);
  const int b = net.boundary_node();
  if (b < 0) throw std::invalid_argument("tiling census needs a tangle");
  TilingCensus c;
  c.boundary_points = net.deg[b];
  const int internal = static_cast<int>(t.vertices.size());
  c.vertices = internal + c.boundary_points;
  c.edges = (3 * internal + c.boundary_points) / 2 + c.boundary_points;
  for (const auto& f : face_orbits(net)) {
    int visits = 0;
    for (int p : f) visits += net.node_of[p] == b;
    int size = static_cast<int>(f.size()) + visits;
    ++c.faces[size];
    ++c.face_count;
    if (size % 2) c.all_even = false;
  }
  for (const auto& [s, k] : c.faces) c.weighted += (s / 2) * k;
  return c;
}

// ---------------------------------------------------------------------------
// Non-elliptic webs with boundary, grown from the empty web. Every such web
// has, next to the boundary, an arc, a fork (one vertex on two adjacent
// points) or an H (two adjacent vertices on two adjacent points); undoing it
// leaves a smaller non-elliptic web, so the three insertions reach them all.

namespace detail {

inline int max_label(const Diagram& d) {
  int m = 0;
  for (const auto& v : d.vertices)
    for (int s : v.slots) m = std::max(m, std::abs(s));
  for (int s : d.boundary) m = std::max(m, std::abs(s));
  return m;
}

inline bool non_elliptic(const Net& net) {
  for (const auto& f : face_orbits(net)) {
    bool touches = false;
    for (int p : f) touches = touches || net.kind[net.node_of[p]] == NodeKind::Boundary;
    if (!touches && f.size() < 6) return false;
  }
  return true;
}

inline Diagram insert_arc(const Diagram& d, size_t i, bool first_in) {
  Diagram r = d;
  int e = max_label(d) + 1;
  r.boundary.insert(r.boundary.begin() + static_cast<long>(i), {first_in ? -e : e, first_in ? e : -e});
  return r;
}

// Replaces boundary point i by two points meeting at a new vertex.
inline Diagram insert_fork(const Diagram& d, size_t i) {
  Diagram r = d;
  int e = std::abs(d.boundary[i]), e1 = max_label(d) + 1, e2 = e1 + 1;
  bool sink = d.boundary[i] > 0;
  if (sink) {
    r.vertices.push_back({VertexKind::TriSink, {e1, e2, e}});
    r.boundary[i] = -e1;
    r.boundary.insert(r.boundary.begin() + static_cast<long>(i) + 1, -e2);
  } else {
    r.vertices.push_back({VertexKind::TriSource, {-e1, -e2, -e}});
    r.boundary[i] = e1;
    r.boundary.insert(r.boundary.begin() + static_cast<long>(i) + 1, e2);
  }
  return r;
}

// Puts an H on the antiparallel boundary points i and i+1 (cyclically).
inline std::optional<Diagram> insert_h(const Diagram& d, size_t i) {
  const size_t k = d.boundary.size(), j = (i + 1) % k;
  int bi = d.boundary[i], bj = d.boundary[j];
  if ((bi > 0) == (bj > 0)) return std::nullopt;
  Diagram r = d;
  int ei = std::abs(bi), ej = std::abs(bj);
  int ep = max_label(d) + 1, eq = ep + 1, h = ep + 2;
  if (bi < 0) {
    r.vertices.push_back({VertexKind::TriSource, {-ep, -h, -ei}});
    r.vertices.push_back({VertexKind::TriSink, {eq, ej, h}});
    r.boundary[i] = ep;
    r.boundary[j] = -eq;
  } else {
    r.vertices.push_back({VertexKind::TriSink, {ep, h, ei}});
    r.vertices.push_back({VertexKind::TriSource, {-eq, -ej, -h}});
    r.boundary[i] = -ep;
    r.boundary[j] = eq;
  }
  return r;
}

inline std::string pattern_of(const Diagram& d) {
  std::string s;
  for (int b : d.boundary) s += b < 0 ? 'i' : 'o';
  return s;
}

}  // namespace detail

// All non-elliptic webs without closed components having at most k_max
// boundary points and v_max vertices, keyed by boundary pattern ('i' where
// the boundary emits an edge, 'o' where it receives one).
inline std::map<std::string, std::vector<Tangle>> enumerate_webs(int k_max, int v_max) {
  using Level = std::map<std::string, Diagram>;  // code -> web
  std::map<std::pair<int, int>, Level> level;
  Diagram empty;
  empty.has_boundary = true;
  level[{0, 0}][canonical_code(empty)] = empty;
  auto offer = [&](Level& into, std::optional<Diagram> d) {
    if (!d) return;
    Net net = to_net(*d);
    if (!detail::non_elliptic(net)) return;
    into.emplace(canonical_code(net), std::move(*d));
  };
  for (int v = 0; v <= v_max; ++v)
    for (int k = 0; k <= k_max; ++k) {
      Level& here = level[{k, v}];
      if (k >= 2)
        for (const auto& [c, d] : level[{k - 2, v}])
          for (size_t i = 0; i <= d.boundary.size(); ++i) {
            offer(here, detail::insert_arc(d, i, true));
            offer(here, detail::insert_arc(d, i, false));
          }
      if (k >= 1 && v >= 1)
        for (const auto& [c, d] : level[{k - 1, v - 1}])
          for (size_t i = 0; i < d.boundary.size(); ++i) offer(here, detail::insert_fork(d, i));
      if (v >= 2 && k >= 2)
        for (const auto& [c, d] : level[{k, v - 2}])
          for (size_t i = 0; i < d.boundary.size(); ++i) offer(here, detail::insert_h(d, i));
    }
  std::map<std::string, std::vector<Tangle>> out;
  for (auto& [kv, lv] : level)
    for (auto& [c, d] : lv) out[detail::pattern_of(d)].push_back(to_diagram(to_net(d)));
  return out;
}

// Boundary pattern of an n-tangle read from the bottom right point: the
// bottom row alternates starting with an emitting point for odd n and a
// receiving one for even n, as on the move templates.
inline std::string alternating_pattern(int n) {
  std::string s;
  for (int k = 0; k < 2 * n; ++k) s += (k + n) % 2 ? 'i' : 'o';
  return s;
}

inline int default_vmax(int n) { return n <= 3 ? 8 : 12; }

// Fundamental n-tangles: crossing-free, no closed components, no internal
// bigon or square, up to isomorphism fixing the boundary. Sorted by vertex
// count, then by canonical code.
inline std::vector<Tangle> enumerate_fundamental(int n, int v_max = -1) {
  if (n < 1) throw std::invalid_argument("tangle needs at least one strand");
  if (v_max < 0) v_max = default_vmax(n);
  auto all = enumerate_webs(2 * n, v_max);
  auto it = all.find(alternating_pattern(n));
  std::vector<Tangle> out = it == all.end() ? std::vector<Tangle>{} : it->second;
  std::sort(out.begin(), out.end(), [](const Tangle& a, const Tangle& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return canonical_code(a) < canonical_code(b);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Expansion of a tangle in a basis of fundamental tangles.

namespace detail {

inline void expand_rec(Net net, LaurentA factor, std::map<std::string, LaurentA>& acc) {
  const LaurentA& A = circle_value();
  const LaurentA& B = bigon_value();
  for (;;) {
    if (net.loops) {
      factor *= A.pow(static_cast<unsigned>(net.loops));
      net.loops = 0;
    }
    std::vector<int> bigon, square;
    for (auto& f : face_orbits(net)) {
      if (f.size() == 2 && bigon.empty()) {
        if (trivalent_node(net, f[0]) && trivalent_node(net, f[1]) && net.node_of[f[0]] != net.node_of[f[1]])
          bigon = f;
      } else if (f.size() == 4 && square.empty()) {
        bool ok = true;
        std::set<int> ns;
        for (int p : f) {
          ok = ok && trivalent_node(net, p);
          ns.insert(net.node_of[p]);
        }
        if (ok && ns.size() == 4) square = f;
      }
    }
    if (!bigon.empty()) {
      contract_bigon(net, bigon[0], bigon[1]);
      factor *= B;
      continue;
    }
    if (!square.empty()) {
      int nd[4], ext[4];
      for (int i = 0; i < 4; ++i) nd[i] = net.node_of[square[i]];
      for (int i = 0; i < 4; ++i) ext[i] = square_external(net, nd[i], square[i], net.link[square[(i + 3) % 4]]);
      std::vector<int> dead(nd, nd + 4);
      Net n1 = net, n2 = net;
      splice(n1, dead, {{ext[0], ext[1]}, {ext[2], ext[3]}});
      splice(n2, dead, {{ext[1], ext[2]}, {ext[3], ext[0]}});
      expand_rec(std::move(n1), factor, acc);
      expand_rec(std::move(n2), factor, acc);
      return;
    }
    for (int n = 0; n < net.nodes(); ++n)
      if (net.alive[n] && is_cross(net.kind[n])) {
        for (auto& [c, t] : resolve_crossing(net, n).terms) expand_rec(std::move(t), factor * c, acc);
        return;
      }
    break;
  }
  acc[canonical_code(net)] += factor;
}

}  // namespace detail

// Coefficients, one per basis tangle, of a tangle with crossings and marked
// vertices: each state contributes x^{#TInf} y^{#TZero} times its expansion.
inline std::vector<SurfacePoly> expand_in_basis(const Tangle& t, const std::vector<Tangle>& basis) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < basis.size(); ++i) index[canonical_code(basis[i])] = i;
  std::vector<SurfacePoly> out(basis.size());
  int h = static_cast<int>(marked_vertices(t).size());
  for (const auto& s : all_states(h)) {
    auto [x, y] = state_degrees(s);
    std::map<std::string, LaurentA> acc;
    detail::expand_rec(state_net(t, s), LaurentA(1), acc);
    for (const auto& [code, c] : acc) {
      if (c.is_zero()) continue;
      auto it = index.find(code);
      if (it == index.end()) throw InternalError("expansion reached a web outside the basis");
      out[it->second].add({x, y}, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gram matrices and the labeling search.

using Gram = std::vector<std::vector<LaurentA>>;

inline Gram gram_matrix(const std::vector<Tangle>& a, const std::vector<Tangle>& b) {
  Gram g(a.size(), std::vector<LaurentA>(b.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) g[i][j] = a2_bracket(glue(a[i], b[j]));
  return g;
}

// Polynomial in A and B written like "2AB^2+AB^4".
inline LaurentA parse_ab(const std::string& text) {
  const LaurentA A = named_constant(Constant::A), B = named_constant(Constant::B);
  LaurentA sum;
  std::string t;
  for (char ch : text)
    if (ch != ' ') t += ch;
  size_t i = 0;
  while (i < t.size()) {
    long long coef = 1;
    if (t[i] == '+') ++i;
    if (t[i] == '-') {
      coef = -1;
      ++i;
    }
    if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      size_t used = 0;
      coef *= std::stoll(t.substr(i), &used);
      i += used;
    }
    LaurentA term(coef);
    while (i < t.size() && (t[i] == 'A' || t[i] == 'B')) {
      const LaurentA& base = t[i] == 'A' ? A : B;
      ++i;
      unsigned e = 1;
      if (i < t.size() && t[i] == '^') {
        size_t used = 0;
        e = static_cast<unsigned>(std::stoul(t.substr(i + 1), &used));
        i += used + 1;
      }
      term *= base.pow(e);
    }
    sum += term;
  }
  return sum;
}

struct TableSpec {
  std::string name;
  int labels = 0;
  std::vector<int> rows, cols;
  std::vector<std::vector<LaurentA>> values;  // [row][col]
  int entries() const { return static_cast<int>(rows.size() * cols.size()); }
};

inline TableSpec gram3_spec() {
  TableSpec t;
  t.name = "3-tangle Gram table";
  t.labels = 6;
  t.rows = {3, 4};
  t.cols = {0, 1, 2, 3, 4, 5};
  for (const auto& row : std::vector<std::vector<std::string>>{{"1", "A", "A", "1", "A^2", "B^3"},
                                                             {"1", "A", "A", "A^2", "1", "B^3"}}) {
    std::vector<LaurentA> r;
    for (const auto& s : row) r.push_back(parse_ab(s));
    t.values.push_back(std::move(r));
  }
  return t;
}

inline TableSpec gram4_spec() {
  static const char* rows[23][6] = {
      {"A^3", "A", "AB^3", "AB^3", "B^3", "B^3"},
      {"A^2", "1", "B^3", "AB^3", "B^3", "B^3"},
      {"A^2", "A^2", "AB^3", "AB^3", "AB^3", "AB^3"},
      {"A^2", "1", "AB^3", "B^3", "B^3", "B^3"},
      {"B^4", "B^4", "2B^3+B^5", "2B^3+B^5", "2B^3+B^5", "2B^3+B^5"},
      {"1", "1", "B^3", "B^3", "B^3", "B^3"},
      {"1", "1", "B^3", "B^3", "B^3", "B^3"},
      {"A", "A", "AB^3", "B^3", "B^3", "AB^3"},
      {"A", "A", "AB^3", "B^3", "AB^3", "B^3"},
      {"A", "A", "B^3", "AB^3", "AB^3", "B^3"},
      {"A", "A", "B^3", "AB^3", "B^3", "AB^3"},
      {"A", "A^3", "B^3", "B^3", "AB^3", "AB^3"},
      {"1", "A^2", "B^3", "B^3", "B^3", "AB^3"},
      {"1", "A^2", "B^3", "B^3", "AB^3", "B^3"},
      {"A", "A", "B^3", "B^3", "B^3", "B^3"},
      {"AB^3", "B^3", "2AB^2+AB^4", "2B^4", "2B^4", "2B^4"},
      {"AB^3", "B^3", "2B^4", "2AB^2+AB^4", "2B^4", "2B^4"},
      {"B^3", "AB^3", "2B^4", "2B^4", "2B^4", "2AB^2+AB^4"},
      {"B^3", "AB^3", "2B^4", "2B^4", "2AB^2+AB^4", "2B^4"},
      {"B^3", "B^3", "2B^4", "2B^2+B^4", "2B^4", "2B^2+B^4"},
      {"B^3", "B^3", "2B^2+B^4", "2B^4", "2B^4", "2B^2+B^4"},
      {"B^3", "B^3", "2B^4", "2B^2+B^4", "2B^2+B^4", "2B^4"},
      {"B^3", "B^3", "2B^2+B^4", "2B^4", "2B^2+B^4", "2B^4"},
  };
  TableSpec t;
  t.name = "4-tangle Gram table";
  t.labels = 23;
  t.cols = {0, 11, 15, 16, 17, 18};
  for (int r = 0; r < 23; ++r) {
    t.rows.push_back(r);
    std::vector<LaurentA> v;
    for (int c = 0; c < 6; ++c) v.push_back(parse_ab(rows[r][c]));
    t.values.push_back(std::move(v));
  }
  return t;
}

// A labeling maps label k to the index of an enumerated tangle.
using Labeling = std::vector<int>;

// Every bijection consistent with the table. Labels constrained by the most
// cells are placed first so partial assignments are checked early.
inline std::vector<Labeling> table_labelings(const TableSpec& t, const Gram& gram, size_t cap = 200000) {
  const int L = t.labels;
  if (static_cast<int>(gram.size()) != L) throw NoLabelingFound(t.name + ": basis size differs from the table");
  std::map<std::pair<int, int>, const LaurentA*> cell;
  for (size_t r = 0; r < t.rows.size(); ++r)
    for (size_t c = 0; c < t.cols.size(); ++c) cell[{t.rows[r], t.cols[c]}] = &t.values[r][c];
  std::vector<int> order(t.cols);
  for (int r : t.rows)
    if (std::find(order.begin(), order.end(), r) == order.end()) order.push_back(r);
  for (int k = 0; k < L; ++k)
    if (std::find(order.begin(), order.end(), k) == order.end()) order.push_back(k);

  std::vector<Labeling> found;
  Labeling pi(L, -1);
  std::vector<char> used(L, 0);
  std::function<void(size_t)> dfs = [&](size_t depth) {
    if (found.size() >= cap) return;
    if (depth == order.size()) {
      found.push_back(pi);
      return;
    }
    int k = order[depth];
    for (int cand = 0; cand < L; ++cand) {
      if (used[cand]) continue;
      pi[k] = cand;
      bool ok = true;
      for (size_t e = 0; e <= depth && ok; ++e) {
        int j = order[e];
        if (auto it = cell.find({k, j}); it != cell.end()) ok = gram[cand][pi[j]] == *it->second;
        if (auto it = cell.find({j, k}); ok && it != cell.end()) ok = gram[pi[j]][cand] == *it->second;
      }
      if (ok) {
        used[cand] = 1;
        dfs(depth + 1);
        used[cand] = 0;
      }
      pi[k] = -1;
    }
  };
  dfs(0);
  return found;
}

inline int matched_entries(const TableSpec& t, const Gram& gram, const Labeling& pi) {
  int n = 0;
  for (size_t r = 0; r < t.rows.size(); ++r)
    for (size_t c = 0; c < t.cols.size(); ++c) n += gram[pi[t.rows[r]]][pi[t.cols[c]]] == t.values[r][c];
  return n;
}

// A decomposition requirement: the expansion of `tangle` in the basis must
// give, to the tangle labeled k, the coefficient expected[k] (zero if absent).
struct Decomposition {
  std::string name;
  Tangle tangle;
  std::map<int, SurfacePoly> expected;
};

inline bool decomposition_holds(const std::vector<SurfacePoly>& coeffs, const Decomposition& d,
                                const Labeling& pi) {
  for (size_t label = 0; label < pi.size(); ++label) {
    auto it = d.expected.find(static_cast<int>(label));
    SurfacePoly want = it == d.expected.end() ? SurfacePoly{} : it->second;
    if (!(coeffs[pi[label]] == want)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The Gamma7 and Gamma8 templates and the table reproduction.

struct YoshikawaTemplates {
  Tangle t7, t7p, t8, t8p;
};

inline YoshikawaTemplates load_templates() {
  return {load_catalog("t7"), load_catalog("t7p"), load_catalog("t8"), load_catalog("t8p")};
}

// T8 with both marked vertices smoothed vertically: M1 has a vertical marker
// (TInf), M2 a horizontal one (TZero).
inline Tangle g_tangle(const YoshikawaTemplates& y) { return resolve_state(y.t8, {Smoothing::TInf, Smoothing::TZero}); }
// The same smoothing of T8': M60 has the vertical marker, M70 the horizontal one.
inline Tangle g_star_tangle(const YoshikawaTemplates& y) {
  return resolve_state(y.t8p, {Smoothing::TInf, Smoothing::TZero});
}

// Expansion of g in the labeled basis; star gives the mirror g*.
inline std::map<int, LaurentA> g_expansion(bool star) {
  auto p = [&](int e) { return LaurentA::a_pow(star ? -e : e); };
  std::map<int, LaurentA> m{{0, p(-6)}, {11, p(6)}, {15, -p(-3)}, {16, -p(-3)}, {17, -p(3)}, {18, -p(3)}};
  for (int k : {2, 4, 7, 8, 9, 10}) m[k] = LaurentA(1);
  return m;
}

inline std::map<int, SurfacePoly> states_expected(std::initializer_list<std::pair<int, XY>> terms,
                                                 const std::map<int, LaurentA>& mixed = {}) {
  std::map<int, SurfacePoly> e;
  for (auto [k, xy] : terms) e[k] += SurfacePoly::term(1, xy.first, xy.second);
  for (const auto& [k, c] : mixed) e[k] += SurfacePoly::term(c, 1, 1);
  return e;
}

inline std::vector<Decomposition> decompositions3(const YoshikawaTemplates& y) {
  return {{"T7", y.t7, states_expected({{2, {2, 0}}, {0, {1, 1}}, {4, {1, 1}}, {1, {0, 2}}})},
          {"T7'", y.t7p, states_expected({{2, {2, 0}}, {0, {1, 1}}, {3, {1, 1}}, {1, {0, 2}}})}};
}

inline std::vector<Decomposition> decompositions4(const YoshikawaTemplates& y) {
  return {{"T8", y.t8, states_expected({{5, {2, 0}}, {14, {1, 1}}, {6, {0, 2}}}, g_expansion(false))},
          {"T8'", y.t8p, states_expected({{5, {2, 0}}, {14, {1, 1}}, {6, {0, 2}}}, g_expansion(true))}};
}

struct TableResult {
  TableSpec spec;
  std::vector<Tangle> basis;
  Gram gram;
  size_t table_consistent = 0;          // labelings matching every table cell
  size_t decomposition_consistent = 0;  // of those, labelings matching the decompositions
  Labeling labeling;                    // label -> basis index
  int matched = 0;
  bool ok() const { return matched == spec.entries() && decomposition_consistent > 0; }
  const Tangle& labeled(int k) const { return basis[labeling[k]]; }
  const LaurentA& value(int k, int i) const { return gram[labeling[k]][labeling[i]]; }
};

inline TableResult solve_table(TableSpec spec, std::vector<Tangle> basis, const std::vector<Decomposition>& decs) {
  TableResult r;
  r.spec = std::move(spec);
  r.basis = std::move(basis);
  r.gram = gram_matrix(r.basis, r.basis);
  auto all = table_labelings(r.spec, r.gram);
  if (all.empty()) throw NoLabelingFound(r.spec.name + ": no labeling matches the table");
  r.table_consistent = all.size();
  std::vector<std::vector<SurfacePoly>> coeffs;
  for (const auto& d : decs) coeffs.push_back(expand_in_basis(d.tangle, r.basis));
  std::vector<Labeling> refined;
  for (const auto& pi : all) {
    bool ok = true;
    for (size_t k = 0; k < decs.size() && ok; ++k) ok = decomposition_holds(coeffs[k], decs[k], pi);
    if (ok) refined.push_back(pi);
  }
  r.decomposition_consistent = refined.size();
  r.labeling = refined.empty() ? all.front() : refined.front();
  r.matched = matched_entries(r.spec, r.gram, r.labeling);
  return r;
}

struct TablesReport {
  TableResult t1, t2;
  bool ok() const { return t1.ok() && t2.ok(); }
};

inline TablesReport reproduce_tables(const YoshikawaTemplates& y, int vmax3 = -1, int vmax4 = -1) {
  return {solve_table(gram3_spec(), enumerate_fundamental(3, vmax3), decompositions3(y)),
          solve_table(gram4_spec(), enumerate_fundamental(4, vmax4), decompositions4(y))};
}

enum class Closure { T7, T7p, T8, T8p, G, Gstar };

struct ClosureCheck {
  SurfacePoly direct;      // evaluated from the glued diagram
  SurfacePoly decomposed;  // Gram entries combined by the template's basis expansion
  bool ok() const { return direct == decomposed; }
};

// [[X o f_i]] or [[X o g_i]] for the template X, against the decomposition.
inline ClosureCheck yoshikawa_closure(const TablesReport& rep, const YoshikawaTemplates& y, int i, Closure which) {
  const bool three = which == Closure::T7 || which == Closure::T7p;
  const TableResult& tr = three ? rep.t1 : rep.t2;
  const Tangle& fi = tr.labeled(i);
  ClosureCheck c;
  std::map<int, SurfacePoly> expected;
  switch (which) {
    case Closure::T7: c.direct = double_bracket(glue(y.t7, fi)); expected = decompositions3(y)[0].expected; break;
    case Closure::T7p: c.direct = double_bracket(glue(y.t7p, fi)); expected = decompositions3(y)[1].expected; break;
    case Closure::T8: c.direct = double_bracket(glue(y.t8, fi)); expected = decompositions4(y)[0].expected; break;
    case Closure::T8p: c.direct = double_bracket(glue(y.t8p, fi)); expected = decompositions4(y)[1].expected; break;
    case Closure::G:
    case Closure::Gstar: {
      bool star = which == Closure::Gstar;
      c.direct = a2_bracket(glue(star ? g_star_tangle(y) : g_tangle(y), fi));
      for (const auto& [k, v] : g_expansion(star)) expected[k] = v;
      break;
    }
  }
  for (const auto& [k, e] : expected) c.decomposed += tr.value(k, i) * e;
  return c;
}

inline LaurentA delta_value() { return named_constant(Constant::DELTA); }

// Expected value of [[T o h_i]] - [[T' o h_i]] for each label.
inline SurfacePoly gamma7_expected(int i) {
  SurfacePoly xy = SurfacePoly::term(1, 1, 1);
  if (i == 3) return delta_value() * xy;
  if (i == 4) return -delta_value() * xy;
  return {};
}

inline SurfacePoly gamma8_expected(int i) {
  const LaurentA u = LaurentA::a_pow(-3) - LaurentA::a_pow(3);
  const LaurentA v = named_constant(Constant::B) * (LaurentA::a_pow(-6) - LaurentA(1) + LaurentA::a_pow(6));
  SurfacePoly base = (u * delta_value()) * SurfacePoly::term(1, 1, 1);
  if (i == 0) return v * base;
  if (i == 11) return -v * base;
  if (i == 15 || i == 16) return LaurentA(-1) * base;
  if (i == 17 || i == 18) return base;
  return {};
}

struct DifferenceCheck {
  int label = 0;
  SurfacePoly diff, expected;
  bool ok() const { return diff == expected; }
};

inline std::vector<DifferenceCheck> template_differences(const TablesReport& rep, const YoshikawaTemplates& y,
                                                         bool gamma8) {
  const TableResult& tr = gamma8 ? rep.t2 : rep.t1;
  const Tangle& left = gamma8 ? y.t8 : y.t7;
  const Tangle& right = gamma8 ? y.t8p : y.t7p;
  std::vector<DifferenceCheck> out;
  for (int i = 0; i < tr.spec.labels; ++i) {
    const Tangle& h = tr.labeled(i);
    Diagram d = glue(left, h), dp = glue(right, h);
    SurfacePoly diff = invariant(d) - invariant(dp);
    out.push_back({i, diff, gamma8 ? gamma8_expected(i) : gamma7_expected(i)});
  }
  return out;
}

}  // namespace a2surf
