#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace a2surf {

enum class VertexKind { CrossingPos, CrossingNeg, Marked, TriSource, TriSink };

// Slots are signed edge labels in counterclockwise order; +e arrives, -e departs.
// Crossings: slot 1 is the incoming under-dart; the over-dart enters at slot 2
// (CrossingPos) or slot 4 (CrossingNeg). Marked: the TInf smoothing joins
// (slot1, slot2) and (slot3, slot4).
struct VertexRecord {
  VertexKind kind;
  std::vector<int> slots;
};

// A closed diagram, or a tangle when has_boundary is set. Boundary darts are
// listed counterclockwise around the disk.
struct Diagram {
  std::vector<VertexRecord> vertices;
  int free_loops = 0;
  bool has_boundary = false;
  std::vector<int> boundary;

  bool is_tangle() const { return has_boundary; }
};
using Tangle = Diagram;

enum class Smoothing { TInf, TZero };
// One entry per marked vertex, in ascending vertex-id order.
using State = std::vector<Smoothing>;

struct SyntaxError : std::runtime_error {
  int line;
  SyntaxError(int ln, const std::string& m)
      : std::runtime_error("line " + std::to_string(ln) + ": " + m), line(ln) {}
};

struct ValidationError : std::runtime_error {
  std::string invariant;
  ValidationError(const std::string& inv, const std::string& m)
      : std::runtime_error(inv + ": " + m), invariant(inv) {}
};

struct CrossingsPresent : std::runtime_error {
  CrossingsPresent() : std::runtime_error("diagram has crossings") {}
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline int slot_count(VertexKind k) {
  return (k == VertexKind::TriSource || k == VertexKind::TriSink) ? 3 : 4;
}

inline bool is_crossing(VertexKind k) {
  return k == VertexKind::CrossingPos || k == VertexKind::CrossingNeg;
}

// ---------------------------------------------------------------------------
// Port graph used by every evaluator. Each node owns a contiguous run of ports
// in counterclockwise order; link pairs the two ends of an edge. Crossing
// nodes are stored with slots (a, b, c, d) = (in, in, out, out).

enum class NodeKind : unsigned char { XPos, XNeg, Marked, Source, Sink, Boundary };

inline bool is_trivalent(NodeKind k) { return k == NodeKind::Source || k == NodeKind::Sink; }
inline bool is_cross(NodeKind k) { return k == NodeKind::XPos || k == NodeKind::XNeg; }

struct Net {
  std::vector<NodeKind> kind;
  std::vector<int> first, deg;
  std::vector<char> alive;
  std::vector<int> link, node_of;
  std::vector<char> out;
  int loops = 0;

  int add_node(NodeKind k, int d) {
    int n = static_cast<int>(kind.size());
    kind.push_back(k);
    first.push_back(static_cast<int>(link.size()));
    deg.push_back(d);
    alive.push_back(1);
    for (int i = 0; i < d; ++i) {
      link.push_back(-1);
      node_of.push_back(n);
      out.push_back(k == NodeKind::Source ? 1 : 0);
    }
    return n;
  }
  int nodes() const { return static_cast<int>(kind.size()); }
  int port(int n, int s) const { return first[n] + s; }
  int slot(int p) const { return p - first[node_of[p]]; }
  // Counterclockwise successor around the node; reversed on the boundary node,
  // which is seen from outside the disk.
  int next_ccw(int p) const {
    int n = node_of[p], s = p - first[n], d = deg[n];
    if (kind[n] == NodeKind::Boundary) return first[n] + (s + d - 1) % d;
    return first[n] + (s + 1) % d;
  }
  void connect(int p, int q) {
    link[p] = q;
    link[q] = p;
  }
  int count(NodeKind k) const {
    int c = 0;
    for (int n = 0; n < nodes(); ++n) c += alive[n] && kind[n] == k;
    return c;
  }
  int live_count() const {
    int c = 0;
    for (int n = 0; n < nodes(); ++n) c += alive[n];
    return c;
  }
  int boundary_node() const {
    for (int n = 0; n < nodes(); ++n)
      if (alive[n] && kind[n] == NodeKind::Boundary) return n;
    return -1;
  }
  int writhe() const { return count(NodeKind::XPos) - count(NodeKind::XNeg); }
};

// Replaces the dead nodes by the given through-connections. Each pair joins a
// port of a dead node to another dead port or to a port of a freshly added
// node. Paths that run through the removed region are followed end to end and
// closed paths become free loops.
inline void splice(Net& net, const std::vector<int>& dead_nodes,
                   const std::vector<std::pair<int, int>>& through) {
  std::vector<char> dead(net.nodes(), 0);
  for (int n : dead_nodes) dead[n] = 1;
  auto is_dead = [&](int p) { return dead[net.node_of[p]] != 0; };
  std::map<int, int> thr;
  for (auto [p, q] : through) {
    thr[p] = q;
    thr[q] = p;
  }
  std::set<int> visited;
  std::vector<int> endpoints;
  for (auto [p, q] : thr)
    if (!is_dead(p)) endpoints.push_back(p);
  for (int n : dead_nodes)
    for (int s = 0; s < net.deg[n]; ++s) {
      int q = net.link[net.port(n, s)];
      if (q >= 0 && !is_dead(q) && !thr.count(q)) endpoints.push_back(q);
    }
  std::set<int> done;
  for (int e : endpoints) {
    if (done.count(e)) continue;
    bool via_thr = thr.count(e) != 0;
    int cur = via_thr ? thr.at(e) : net.link[e];
    bool leave_by_link = via_thr;
    for (int guard = 0;; ++guard) {
      if (guard > static_cast<int>(net.link.size()) + 4) throw InternalError("splice: runaway path");
      visited.insert(cur);
      int nxt;
      if (leave_by_link) {
        nxt = net.link[cur];
      } else {
        auto it = thr.find(cur);
        if (it == thr.end()) throw InternalError("splice: dead port without through-connection");
        nxt = it->second;
      }
      if (!is_dead(nxt)) {
        net.connect(e, nxt);
        done.insert(e);
        done.insert(nxt);
        break;
      }
      cur = nxt;
      leave_by_link = !leave_by_link;
    }
  }
  for (auto [p, q] : thr) {
    if (!is_dead(p) || visited.count(p)) continue;
    int cur = p;
    bool leave_by_link = false;
    do {
      visited.insert(cur);
      cur = leave_by_link ? net.link[cur] : thr.at(cur);
      leave_by_link = !leave_by_link;
    } while (cur != p || leave_by_link);
    ++net.loops;
  }
  for (int n : dead_nodes) {
    net.alive[n] = 0;
    for (int s = 0; s < net.deg[n]; ++s) net.link[net.port(n, s)] = -1;
  }
}

// Face orbits of the map, each listed as the ports it leaves from.
inline std::vector<std::vector<int>> face_orbits(const Net& net) {
  std::vector<std::vector<int>> faces;
  std::vector<char> seen(net.link.size(), 0);
  for (int p = 0; p < static_cast<int>(net.link.size()); ++p) {
    if (seen[p] || !net.alive[net.node_of[p]]) continue;
    std::vector<int> f;
    int q = p;
    do {
      seen[q] = 1;
      f.push_back(q);
      q = net.next_ccw(net.link[q]);
    } while (q != p);
    faces.push_back(std::move(f));
  }
  return faces;
}

// Connected components of live nodes, as node lists.
inline std::vector<std::vector<int>> node_components(const Net& net) {
  std::vector<int> comp(net.nodes(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < net.nodes(); ++s) {
    if (!net.alive[s] || comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      members.push_back(n);
      for (int i = 0; i < net.deg[n]; ++i) {
        int m = net.node_of[net.link[net.port(n, i)]];
        if (comp[m] < 0) {
          comp[m] = comp[s];
          stack.push_back(m);
        }
      }
    }
    out.push_back(std::move(members));
  }
  return out;
}

// Number of closed strands of a link diagram (crossings pass straight through).
inline int strand_components(const Net& net) {
  std::vector<char> seen(net.link.size(), 0);
  int c = net.loops;
  for (int n = 0; n < net.nodes(); ++n) {
    if (!net.alive[n]) continue;
    if (!is_cross(net.kind[n])) throw std::invalid_argument("strand count needs a link diagram");
  }
  for (int p = 0; p < static_cast<int>(net.link.size()); ++p) {
    if (seen[p] || !net.alive[net.node_of[p]]) continue;
    ++c;
    int q = p;
    do {
      seen[q] = 1;
      int r = net.link[q];
      seen[r] = 1;
      q = net.first[net.node_of[r]] + (net.slot(r) + 2) % 4;
    } while (q != p);
  }
  return c;
}

namespace detail {

inline NodeKind node_kind(VertexKind k) {
  switch (k) {
    case VertexKind::CrossingPos: return NodeKind::XPos;
    case VertexKind::CrossingNeg: return NodeKind::XNeg;
    case VertexKind::Marked: return NodeKind::Marked;
    case VertexKind::TriSource: return NodeKind::Source;
    case VertexKind::TriSink: return NodeKind::Sink;
  }
  return NodeKind::Marked;
}

// Record slot order -> stored (a, b, c, d) order for crossings.
inline std::vector<int> stored_slots(const VertexRecord& v) {
  if (v.kind == VertexKind::CrossingNeg) return {v.slots[3], v.slots[0], v.slots[1], v.slots[2]};
  return v.slots;
}

inline void check_pairing(const Diagram& d) {
  std::map<int, std::pair<int, int>> seen;
  auto note = [&](int s, const std::string& where) {
    if (s == 0) throw ValidationError("pairing", "edge label 0 at " + where);
    auto& c = seen[std::abs(s)];
    (s > 0 ? c.first : c.second)++;
  };
  for (size_t i = 0; i < d.vertices.size(); ++i)
    for (int s : d.vertices[i].slots) note(s, "vertex " + std::to_string(i + 1));
  for (int s : d.boundary) note(s, "boundary");
  for (auto& [e, c] : seen)
    if (c.first != 1 || c.second != 1)
      throw ValidationError("pairing", "edge " + std::to_string(e) + " appears " + std::to_string(c.first) +
                                           " time(s) arriving and " + std::to_string(c.second) +
                                           " time(s) departing");
}

inline void check_vertex(const VertexRecord& v, size_t i) {
  const std::string at = "vertex " + std::to_string(i + 1);
  if (static_cast<int>(v.slots.size()) != slot_count(v.kind))
    throw ValidationError("slot-count", at + " has " + std::to_string(v.slots.size()) + " slots");
  auto in = [&](int k) { return v.slots[k] > 0; };
  switch (v.kind) {
    case VertexKind::CrossingPos:
      if (!(in(0) && in(1) && !in(2) && !in(3)))
        throw ValidationError("orientation", at + ": positive crossing needs slots in,in,out,out");
      break;
    case VertexKind::CrossingNeg:
      if (!(in(0) && !in(1) && !in(2) && in(3)))
        throw ValidationError("orientation", at + ": negative crossing needs slots in,out,out,in");
      break;
    case VertexKind::Marked:
      if (in(0) == in(1) || in(1) == in(2) || in(2) == in(3))
        throw ValidationError("orientation", at + ": marked vertex darts must alternate in/out");
      break;
    case VertexKind::TriSource:
      if (in(0) || in(1) || in(2)) throw ValidationError("orientation", at + ": source darts must all depart");
      break;
    case VertexKind::TriSink:
      if (!in(0) || !in(1) || !in(2)) throw ValidationError("orientation", at + ": sink darts must all arrive");
      break;
  }
}

}  // namespace detail

// Node i of the result is vertex i of the diagram; the boundary node, if any,
// comes last. The diagram must already satisfy the pairing invariant.
inline Net to_net(const Diagram& d) {
  Net net;
  std::map<int, int> head, tail;
  auto place = [&](int p, int s) {
    if (s > 0) {
      head[s] = p;
    } else {
      tail[-s] = p;
      net.out[p] = 1;
    }
  };
  for (const auto& v : d.vertices) {
    auto sl = detail::stored_slots(v);
    int n = net.add_node(detail::node_kind(v.kind), static_cast<int>(sl.size()));
    for (size_t s = 0; s < sl.size(); ++s) place(net.port(n, static_cast<int>(s)), sl[s]);
  }
  if (d.has_boundary) {
    int n = net.add_node(NodeKind::Boundary, static_cast<int>(d.boundary.size()));
    for (size_t s = 0; s < d.boundary.size(); ++s) place(net.port(n, static_cast<int>(s)), d.boundary[s]);
  }
  for (auto& [e, h] : head) net.connect(h, tail.at(e));
  net.loops = d.free_loops;
  return net;
}

// Relabels edges 1..E in port order.
inline Diagram to_diagram(const Net& net) {
  Diagram d;
  std::vector<int> label(net.link.size(), 0);
  int next = 0;
  for (int p = 0; p < static_cast<int>(net.link.size()); ++p) {
    if (!net.alive[net.node_of[p]] || label[p]) continue;
    label[p] = label[net.link[p]] = ++next;
  }
  auto signed_label = [&](int p) { return net.out[p] ? -label[p] : label[p]; };
  for (int n = 0; n < net.nodes(); ++n) {
    if (!net.alive[n]) continue;
    std::vector<int> sl;
    for (int s = 0; s < net.deg[n]; ++s) sl.push_back(signed_label(net.port(n, s)));
    switch (net.kind[n]) {
      case NodeKind::XPos: d.vertices.push_back({VertexKind::CrossingPos, sl}); break;
      case NodeKind::XNeg:
        d.vertices.push_back({VertexKind::CrossingNeg, {sl[1], sl[2], sl[3], sl[0]}});
        break;
      case NodeKind::Marked: d.vertices.push_back({VertexKind::Marked, sl}); break;
      case NodeKind::Source: d.vertices.push_back({VertexKind::TriSource, sl}); break;
      case NodeKind::Sink: d.vertices.push_back({VertexKind::TriSink, sl}); break;
      case NodeKind::Boundary:
        d.has_boundary = true;
        d.boundary = sl;
        break;
    }
  }
  d.free_loops = net.loops;
  return d;
}

// Checks every structural invariant; throws ValidationError naming the first breach.
inline void validate(const Diagram& d) {
  if (d.free_loops < 0) throw ValidationError("loops", "negative free-loop count");
  for (size_t i = 0; i < d.vertices.size(); ++i) detail::check_vertex(d.vertices[i], i);
  if (!d.has_boundary && !d.boundary.empty()) throw ValidationError("boundary", "boundary darts on a closed diagram");
  detail::check_pairing(d);
  Net net = to_net(d);
  auto faces = face_orbits(net);
  std::vector<int> face_of(net.link.size(), -1);
  for (size_t f = 0; f < faces.size(); ++f)
    for (int p : faces[f]) face_of[p] = static_cast<int>(f);
  for (const auto& comp : node_components(net)) {
    int ports = 0;
    std::set<int> fs;
    for (int n : comp) {
      ports += net.deg[n];
      for (int s = 0; s < net.deg[n]; ++s) fs.insert(face_of[net.port(n, s)]);
    }
    int chi = static_cast<int>(comp.size()) - ports / 2 + static_cast<int>(fs.size());
    if (chi != 2)
      throw ValidationError("planarity", "component containing vertex " + std::to_string(comp.front() + 1) +
                                             " has Euler characteristic " + std::to_string(chi));
  }
}

inline int writhe(const Diagram& d) {
  int w = 0;
  for (const auto& v : d.vertices) {
    if (v.kind == VertexKind::CrossingPos) ++w;
    if (v.kind == VertexKind::CrossingNeg) --w;
  }
  return w;
}

inline std::vector<int> marked_vertices(const Diagram& d) {
  std::vector<int> ids;
  for (size_t i = 0; i < d.vertices.size(); ++i)
    if (d.vertices[i].kind == VertexKind::Marked) ids.push_back(static_cast<int>(i));
  return ids;
}

inline int count_kind(const Diagram& d, VertexKind k) {
  return static_cast<int>(std::count_if(d.vertices.begin(), d.vertices.end(),
                                        [&](const VertexRecord& v) { return v.kind == k; }));
}

// Through-connections of a marked node under a smoothing.
inline std::vector<std::pair<int, int>> smoothing_pairs(const Net& net, int n, Smoothing s) {
  int p = net.first[n];
  if (s == Smoothing::TInf) return {{p, p + 1}, {p + 2, p + 3}};
  return {{p + 1, p + 2}, {p + 3, p}};
}

inline void resolve_marked(Net& net, const std::vector<int>& marked_nodes, const State& s) {
  if (marked_nodes.size() != s.size()) throw std::invalid_argument("state size does not match marked vertices");
  for (size_t i = 0; i < s.size(); ++i)
    splice(net, {marked_nodes[i]}, smoothing_pairs(net, marked_nodes[i], s[i]));
}

inline Diagram resolve_state(const Diagram& d, const State& s) {
  Net net = to_net(d);
  resolve_marked(net, marked_vertices(d), s);
  return to_diagram(net);
}

inline std::vector<std::vector<int>> faces(const Diagram& d) {
  for (const auto& v : d.vertices)
    if (is_crossing(v.kind)) throw CrossingsPresent();
  Diagram canon = to_diagram(to_net(d));
  Net cn = to_net(canon);
  std::vector<std::vector<int>> out;
  for (const auto& f : face_orbits(cn)) {
    std::vector<int> darts;
    for (int p : f) {
      const auto& v = cn.kind[cn.node_of[p]] == NodeKind::Boundary
                          ? canon.boundary
                          : canon.vertices[cn.node_of[p]].slots;
      darts.push_back(v[cn.slot(p)]);
    }
    out.push_back(std::move(darts));
  }
  return out;
}

inline int link_components(const Diagram& d) { return strand_components(to_net(d)); }

// ---------------------------------------------------------------------------
// MGD text format.

inline Diagram parse_mgd(const std::string& text) {
  Diagram d;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  bool boundary_seen = false;
  auto parse_int = [&](const std::string& tok) {
    size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw SyntaxError(ln, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw SyntaxError(ln, "expected integer, got '" + tok + "'");
    return static_cast<int>(v);
  };
  while (std::getline(in, line)) {
    ++ln;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    std::vector<int> args;
    for (std::string tok; ls >> tok;) args.push_back(parse_int(tok));
    auto want = [&](size_t n) {
      if (args.size() != n)
        throw SyntaxError(ln, head + " expects " + std::to_string(n) + " fields, got " + std::to_string(args.size()));
    };
    if (head == "O") {
      want(1);
      if (args[0] < 0) throw SyntaxError(ln, "negative loop count");
      d.free_loops += args[0];
    } else if (head == "X+" || head == "X-") {
      want(4);
      d.vertices.push_back({head == "X+" ? VertexKind::CrossingPos : VertexKind::CrossingNeg, args});
    } else if (head == "M") {
      want(4);
      d.vertices.push_back({VertexKind::Marked, args});
    } else if (head == "W+" || head == "W-") {
      want(3);
      d.vertices.push_back({head == "W+" ? VertexKind::TriSource : VertexKind::TriSink, args});
    } else if (head == "BOUNDARY") {
      if (boundary_seen) throw SyntaxError(ln, "second BOUNDARY record");
      boundary_seen = true;
      d.has_boundary = true;
      d.boundary = args;
    } else {
      throw SyntaxError(ln, "unknown record '" + head + "'");
    }
  }
  validate(d);
  return d;
}

inline std::string serialize_mgd(const Diagram& d) {
  std::ostringstream os;
  auto dart = [](int s) { return (s > 0 ? "+" : "") + std::to_string(s); };
  for (const auto& v : d.vertices) {
    switch (v.kind) {
      case VertexKind::CrossingPos: os << "X+"; break;
      case VertexKind::CrossingNeg: os << "X-"; break;
      case VertexKind::Marked: os << "M"; break;
      case VertexKind::TriSource: os << "W+"; break;
      case VertexKind::TriSink: os << "W-"; break;
    }
    for (int s : v.slots) os << ' ' << dart(s);
    os << '\n';
  }
  if (d.free_loops) os << "O " << d.free_loops << '\n';
  if (d.has_boundary) {
    os << "BOUNDARY";
    for (int s : d.boundary) os << ' ' << dart(s);
    os << '\n';
  }
  return os.str();
}

// Switches every crossing; the bracket of the result is the bracket of the
// original with a replaced by a^-1.
inline Diagram mirror(const Diagram& d) {
  Diagram m = d;
  for (auto& v : m.vertices) {
    const auto& s = v.slots;
    if (v.kind == VertexKind::CrossingPos) {
      v = {VertexKind::CrossingNeg, {s[1], s[2], s[3], s[0]}};
    } else if (v.kind == VertexKind::CrossingNeg) {
      v = {VertexKind::CrossingPos, {s[3], s[0], s[1], s[2]}};
    }
  }
  return m;
}

// Sorted face sizes; an isomorphism-invariant fingerprint.
namespace detail {

// Breadth-first code of the component reached from node root entered at
// slot offset; every node is read starting from the slot it was entered by.
inline std::string rooted_code(const Net& net, int root, int offset, std::vector<int>* reached = nullptr) {
  std::vector<int> idx(net.nodes(), -1), entry(net.nodes(), 0), order{root};
  idx[root] = 0;
  entry[root] = offset;
  std::ostringstream os;
  for (size_t i = 0; i < order.size(); ++i) {
    int n = order[i], d = net.deg[n];
    os << static_cast<int>(net.kind[n]) << '(';
    for (int k = 0; k < d; ++k) {
      int p = net.first[n] + (entry[n] + k) % d;
      int q = net.link[p], m = net.node_of[q];
      if (idx[m] < 0) {
        idx[m] = static_cast<int>(order.size());
        // Crossings are stored in a fixed frame; other nodes may turn.
        entry[m] = is_cross(net.kind[m]) || net.kind[m] == NodeKind::Boundary ? 0 : net.slot(q);
        if (net.kind[m] == NodeKind::Marked) entry[m] -= entry[m] % 2;
        order.push_back(m);
      }
      os << idx[m] << '.' << (net.slot(q) - entry[m] + net.deg[m]) % net.deg[m] << (net.out[p] ? '>' : '<') << ' ';
    }
    os << ')';
  }
  if (reached) *reached = order;
  return os.str();
}

}  // namespace detail

// Code that is equal for two diagrams exactly when they differ by a
// relabeling of edges and a reordering of vertex records.
inline std::string canonical_form(const Diagram& d) {
  Net net = to_net(d);
  std::vector<std::string> parts;
  std::vector<char> done(net.nodes(), 0);
  for (int n = 0; n < net.nodes(); ++n) {
    if (done[n]) continue;
    std::vector<int> comp;
    detail::rooted_code(net, n, 0, &comp);
    std::string best;
    for (int r : comp) done[r] = 1;
    auto b = std::find_if(comp.begin(), comp.end(), [&](int r) { return net.kind[r] == NodeKind::Boundary; });
    if (b != comp.end()) best = "B" + detail::rooted_code(net, *b, 0);
    for (int r : comp) {
      if (b != comp.end()) break;
      int step = is_cross(net.kind[r]) ? 4 : net.kind[r] == NodeKind::Marked ? 2 : 1;
      for (int o = 0; o < net.deg[r]; o += step) {
        std::string c = detail::rooted_code(net, r, o);
        if (best.empty() || c < best) best = c;
      }
    }
    parts.push_back(best);
  }
  std::sort(parts.begin(), parts.end());
  std::ostringstream os;
  for (const auto& p : parts) os << '[' << p << ']';
  os << "O" << net.loops;
  return os.str();
}

inline std::vector<int> face_size_multiset(const Diagram& d) {
  std::vector<int> sizes;
  for (const auto& f : face_orbits(to_net(d))) sizes.push_back(static_cast<int>(f.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace a2surf
