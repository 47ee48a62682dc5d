#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "builder.hpp"
#include "catalog.hpp"
#include "diagram.hpp"
#include "ring.hpp"
#include "statesum.hpp"

namespace a2surf {

enum class MoveId { G1, G1p, G2, G3, G4, G4p, G5, G6, G6p, G7, G8 };

inline const std::vector<MoveId>& all_moves() {
  static const std::vector<MoveId> ids{MoveId::G1, MoveId::G1p, MoveId::G2,  MoveId::G3,  MoveId::G4, MoveId::G4p,
                                       MoveId::G5, MoveId::G6,  MoveId::G6p, MoveId::G7, MoveId::G8};
  return ids;
}

inline const char* move_name(MoveId m) {
  switch (m) {
    case MoveId::G1: return "G1";
    case MoveId::G1p: return "G1'";
    case MoveId::G2: return "G2";
    case MoveId::G3: return "G3";
    case MoveId::G4: return "G4";
    case MoveId::G4p: return "G4'";
    case MoveId::G5: return "G5";
    case MoveId::G6: return "G6";
    case MoveId::G6p: return "G6'";
    case MoveId::G7: return "G7";
    case MoveId::G8: return "G8";
  }
  return "?";
}

// Accepts G1, g1, G1', G1p and the Greek capital.
inline MoveId parse_move(std::string s) {
  const std::string gamma = "Γ";
  if (s.rfind(gamma, 0) == 0) s = "G" + s.substr(gamma.size());
  if (!s.empty() && s[0] == 'g') s[0] = 'G';
  if (s.size() > 1 && (s.back() == 'p' || s.back() == 'P')) s.back() = '\'';
  for (MoveId m : all_moves())
    if (s == move_name(m)) return m;
  throw std::invalid_argument("unknown move " + s);
}

struct InvalidSite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A local picture and its replacement. Both sides share one boundary frame;
// at least one side has vertices and is connected through internal edges.
struct MoveTemplate {
  MoveId move;
  Tangle lhs, rhs;
};

struct MoveSite {
  MoveId move = MoveId::G1;
  int variant = 0;        // index into move_templates()
  bool reverse = false;   // the right-hand side was found and the left-hand side goes in
  std::vector<int> vertices;  // vertex ids of the match, in template order; empty for insertions
  std::vector<int> rotation;  // slot offset of each matched vertex
  std::vector<int> ports;     // per template boundary position: matched port, or outer port for insertions
  std::vector<int> edges;     // edge label of the diagram at each boundary position
  std::string text() const {
    std::ostringstream os;
    os << move_name(move) << (reverse ? " reverse" : " forward") << " template " << variant;
    if (vertices.empty()) {
      os << " inserted on edges";
    } else {
      os << " at vertices";
      for (int v : vertices) os << ' ' << v + 1;
    }
    os << " boundary edges";
    for (int e : edges) os << ' ' << e;
    return os.str();
  }
};

namespace detail {

inline Tangle strand_tangle() { return MorseBuilder({true}).tangle(); }

inline std::vector<int> allowed_offsets(NodeKind k) {
  switch (k) {
    case NodeKind::Marked: return {0, 2};
    case NodeKind::Source:
    case NodeKind::Sink: return {0, 1, 2};
    default: return {0};
  }
}

inline bool connected_through_vertices(const Tangle& t) {
  Net n = to_net(t);
  int b = n.boundary_node(), m = n.nodes() - (b >= 0 ? 1 : 0);
  if (m == 0) return false;
  std::vector<char> seen(n.nodes(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++count;
    for (int s = 0; s < n.deg[u]; ++s) {
      int v = n.node_of[n.link[n.port(u, s)]];
      if (v != b && !seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return count == m;
}

// Kinks: a strand running up with a curl on the left or right.
inline void add_kinks(std::vector<MoveTemplate>& out) {
  for (bool right : {true, false})
    for (bool lo : {true, false}) {
      MorseBuilder b({true});
      if (right) {
        b.cup(1, false).crossing(0, lo).cap(0);
      } else {
        b.cup(0, true).crossing(1, lo).cap(1);
      }
      Tangle t = b.tangle();
      bool pos = t.vertices[0].kind == VertexKind::CrossingPos;
      out.push_back({pos ? MoveId::G1 : MoveId::G1p, t, strand_tangle()});
    }
}

inline void add_bigons(std::vector<MoveTemplate>& out) {
  for (bool d0 : {true, false})
    for (bool d1 : {true, false})
      for (bool lo : {true, false}) {
        MorseBuilder b({d0, d1});
        b.crossing(0, lo).crossing(0, !lo);
        out.push_back({MoveId::G2, b.tangle(), MorseBuilder({d0, d1}).tangle()});
      }
}

// Three strands at heights given by a permutation; the left side is
// s1 s2 s1 and the right side s2 s1 s2.
inline void add_triangles(std::vector<MoveTemplate>& out) {
  std::vector<int> h{0, 1, 2};
  do {
    for (int dirs = 0; dirs < 8; ++dirs) {
      std::vector<bool> up{(dirs & 1) != 0, (dirs & 2) != 0, (dirs & 4) != 0};
      auto run = [&](const std::vector<int>& seq) {
        MorseBuilder b(up);
        std::vector<int> at{0, 1, 2};  // strand at each position
        for (int i : seq) {
          b.crossing(i, h[at[i]] > h[at[i + 1]]);
          std::swap(at[i], at[i + 1]);
        }
        return b.tangle();
      };
      out.push_back({MoveId::G3, run({0, 1, 0}), run({1, 0, 1})});
    }
  } while (std::next_permutation(h.begin(), h.end()));
}

// A strand passing a marked vertex. The left side has the strand above the
// vertex, the right side below it.
inline void add_passes(std::vector<MoveTemplate>& out) {
  for (bool over : {true, false})
    for (bool from_right : {true, false})
      for (bool d0 : {true, false})
        for (bool dp : {true, false})
          for (bool vert : {true, false}) {
            MoveId id = over ? MoveId::G4 : MoveId::G4p;
            if (from_right) {
              std::vector<bool> bottom{d0, !d0, dp};
              MorseBuilder l(bottom), r(bottom);
              l.marked(0, vert).crossing(1, !over).crossing(0, !over);
              r.crossing(1, !over).crossing(0, !over).marked(1, vert);
              out.push_back({id, l.tangle(), r.tangle()});
            } else {
              std::vector<bool> bottom{dp, d0, !d0};
              MorseBuilder l(bottom), r(bottom);
              l.marked(1, vert).crossing(0, over).crossing(1, over);
              r.crossing(0, over).crossing(1, over).marked(0, vert);
              out.push_back({id, l.tangle(), r.tangle()});
            }
          }
}

// A crossing next to a marked vertex moves to its other side; the marker
// runs along the strands and the same diagonal stays on top.
inline void add_twists(std::vector<MoveTemplate>& out) {
  for (bool d0 : {true, false})
    for (bool lo : {true, false}) {
      MorseBuilder l({d0, !d0}), r({d0, !d0});
      l.crossing(0, lo).marked(0, true);
      r.marked(0, true).crossing(0, lo);
      out.push_back({MoveId::G5, l.tangle(), r.tangle()});
    }
}

// A marked vertex whose two darts on one side are joined by an arc.
inline void add_closures(std::vector<MoveTemplate>& out) {
  for (bool vert : {true, false})
    for (bool right : {true, false}) {
      MorseBuilder b({true});
      if (right) {
        b.cup(1, false).marked(0, vert).cap(1);
      } else {
        b.cup(0, true).marked(1, vert).cap(0);
      }
      out.push_back({vert ? MoveId::G6 : MoveId::G6p, b.tangle(), strand_tangle()});
    }
}

inline std::vector<MoveTemplate> build_templates() {
  std::vector<MoveTemplate> out;
  add_kinks(out);
  add_bigons(out);
  add_triangles(out);
  add_passes(out);
  add_twists(out);
  add_closures(out);
  out.push_back({MoveId::G7, load_catalog("t7"), load_catalog("t7p")});
  out.push_back({MoveId::G8, load_catalog("t8"), load_catalog("t8p")});
  for (const auto& t : out) {
    auto frame = [](const Tangle& x) {
      std::vector<bool> f;
      for (int e : x.boundary) f.push_back(e < 0);
      return f;
    };
    if (frame(t.lhs) != frame(t.rhs))
      throw InternalError(std::string("template frames differ for ") + move_name(t.move));
    if (!connected_through_vertices(t.lhs)) throw InternalError("template left side is not connected");
  }
  return out;
}

inline std::vector<int> port_edges(const Diagram& d) {
  std::vector<int> out;
  for (const auto& v : d.vertices)
    for (int s : detail::stored_slots(v)) out.push_back(std::abs(s));
  for (int s : d.boundary) out.push_back(std::abs(s));
  return out;
}

// All embeddings of the pattern tangle into the net that keep slot order,
// kinds and directions.
inline void match_pattern(const Net& net, const Tangle& pattern, std::vector<MoveSite>& sites, MoveSite proto) {
  Net tl = to_net(pattern);
  const int b = tl.boundary_node();
  const int m = tl.nodes() - 1;
  const int nb = tl.deg[b];
  for (int n0 = 0; n0 < net.nodes(); ++n0) {
    if (!net.alive[n0] || net.kind[n0] != tl.kind[0]) continue;
    for (int o0 : allowed_offsets(tl.kind[0])) {
      std::vector<int> img(m, -1), off(m, 0), ports(nb, -1);
      std::set<int> used{n0};
      img[0] = n0;
      off[0] = o0;
      std::vector<int> queue{0};
      bool ok = true;
      for (size_t qi = 0; qi < queue.size() && ok; ++qi) {
        int t = queue[qi];
        int d = tl.deg[t];
        for (int s = 0; s < d && ok; ++s) {
          int tp = tl.port(t, s), tq = tl.link[tp];
          int dp = net.port(img[t], (s + off[t]) % d);
          if (net.out[dp] != tl.out[tp]) {
            ok = false;
            break;
          }
          if (tl.node_of[tq] == b) {
            ports[tl.slot(tq)] = dp;
            continue;
          }
          int t2 = tl.node_of[tq], s2 = tl.slot(tq);
          int dq = net.link[dp], n2 = net.node_of[dq];
          if (net.kind[n2] != tl.kind[t2]) {
            ok = false;
            break;
          }
          int d2 = net.deg[n2];
          int o2 = ((net.slot(dq) - s2) % d2 + d2) % d2;
          auto allowed = allowed_offsets(tl.kind[t2]);
          if (std::find(allowed.begin(), allowed.end(), o2) == allowed.end()) {
            ok = false;
            break;
          }
          if (img[t2] >= 0) {
            ok = img[t2] == n2 && off[t2] == o2;
          } else if (used.count(n2)) {
            ok = false;
          } else {
            img[t2] = n2;
            off[t2] = o2;
            used.insert(n2);
            queue.push_back(t2);
          }
        }
      }
      if (!ok || static_cast<int>(queue.size()) != m) continue;
      MoveSite site = proto;
      site.vertices = img;
      site.rotation = off;
      site.ports = ports;
      sites.push_back(std::move(site));
    }
  }
}

inline bool frame_fits(const Net& net, const std::vector<int>& outer, const Tangle& t) {
  Net tn = to_net(t);
  int b = tn.boundary_node();
  if (static_cast<int>(outer.size()) != tn.deg[b]) return false;
  for (size_t k = 0; k < outer.size(); ++k)
    if (tn.out[tn.port(b, static_cast<int>(k))] != net.out[outer[k]]) return false;
  return true;
}

// Insertion sites on single edges (kinks, closures) or on two edges of a
// common face (bigons). Outer ports are listed counterclockwise around the
// small disk that receives the template.
inline void insertion_sites(const Net& net, MoveId move, const std::vector<MoveTemplate>& tpl,
                            std::vector<MoveSite>& sites) {
  std::vector<std::vector<int>> regions;
  if (move == MoveId::G2) {
    for (const auto& f : face_orbits(net))
      for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = i + 1; j < f.size(); ++j) {
          int p1 = f[i], p2 = f[j];
          if (p2 == net.link[p1]) continue;
          regions.push_back({p1, net.link[p2], p2, net.link[p1]});
        }
  } else {
    for (int p = 0; p < static_cast<int>(net.link.size()); ++p)
      if (net.alive[net.node_of[p]] && net.out[p]) regions.push_back({p, net.link[p]});
  }
  for (size_t v = 0; v < tpl.size(); ++v) {
    if (tpl[v].move != move) continue;
    for (const auto& r : regions) {
      if (!frame_fits(net, r, tpl[v].lhs)) continue;
      MoveSite s;
      s.move = move;
      s.variant = static_cast<int>(v);
      s.reverse = true;
      s.ports = r;
      sites.push_back(std::move(s));
    }
  }
}

inline bool has_vertices(const Tangle& t) { return !t.vertices.empty(); }

}  // namespace detail

inline const std::vector<MoveTemplate>& move_templates() {
  static const std::vector<MoveTemplate> t = detail::build_templates();
  return t;
}

inline Diagram apply_move(const Diagram& d, const MoveSite& site) {
  const auto& tpl = move_templates();
  if (site.variant < 0 || site.variant >= static_cast<int>(tpl.size()) || tpl[site.variant].move != site.move)
    throw InvalidSite("site names no template of this move");
  const MoveTemplate& mt = tpl[site.variant];
  const Tangle& from = site.reverse ? mt.rhs : mt.lhs;
  const Tangle& to = site.reverse ? mt.lhs : mt.rhs;
  Net net = to_net(d);
  const int nports = static_cast<int>(net.link.size());
  for (int p : site.ports)
    if (p < 0 || p >= nports || !net.alive[net.node_of[p]]) throw InvalidSite("site port out of range");
  for (int v : site.vertices)
    if (v < 0 || v >= net.nodes() || !net.alive[v]) throw InvalidSite("site vertex out of range");
  if (!site.vertices.empty()) {
    // Re-check the match so stale sites are refused.
    std::vector<MoveSite> again;
    MoveSite proto;
    proto.move = site.move;
    detail::match_pattern(net, from, again, proto);
    bool found = false;
    for (const auto& s : again) found = found || (s.vertices == site.vertices && s.rotation == site.rotation);
    if (!found) throw InvalidSite("pattern does not match at the site");
  } else if (!detail::frame_fits(net, site.ports, to)) {
    throw InvalidSite("edge directions do not fit the template");
  }

  Net rn = to_net(to);
  const int rb = rn.boundary_node();
  std::vector<int> fresh(rn.nodes(), -1);
  for (int n = 0; n < rn.nodes(); ++n)
    if (n != rb) fresh[n] = net.add_node(rn.kind[n], rn.deg[n]);
  auto image = [&](int rp) { return net.port(fresh[rn.node_of[rp]], rn.slot(rp)); };
  for (int n = 0; n < rn.nodes(); ++n) {
    if (n == rb) continue;
    for (int s = 0; s < rn.deg[n]; ++s) {
      int rp = rn.port(n, s), rq = rn.link[rp];
      net.out[image(rp)] = rn.out[rp];
      if (rn.node_of[rq] != rb && rp < rq) net.connect(image(rp), image(rq));
    }
  }
  net.loops += rn.loops;
  std::vector<std::pair<int, int>> through;
  const int nb = rn.deg[rb];
  for (int k = 0; k < nb; ++k) {
    int rq = rn.link[rn.port(rb, k)];
    int ours = site.ports[k];
    if (rn.node_of[rq] != rb) {
      if (site.vertices.empty())
        net.connect(ours, image(rq));
      else
        through.emplace_back(ours, image(rq));
    } else if (k < rn.slot(rq)) {
      if (site.vertices.empty())
        net.connect(ours, site.ports[rn.slot(rq)]);
      else
        through.emplace_back(ours, site.ports[rn.slot(rq)]);
    }
  }
  if (!site.vertices.empty()) splice(net, site.vertices, through);
  Diagram out = to_diagram(net);
  validate(out);
  return out;
}

namespace detail {

inline std::vector<MoveSite> distinct_sites(const Diagram& d, std::vector<MoveSite> raw) {
  auto edges = port_edges(d);
  std::set<std::pair<std::vector<int>, std::string>> seen;
  std::vector<MoveSite> out;
  for (auto& s : raw) {
    std::vector<int> key = s.vertices;
    std::sort(key.begin(), key.end());
    if (key.empty()) key = s.ports;
    if (!seen.insert({key, canonical_form(apply_move(d, s))}).second) continue;
    for (int p : s.ports) s.edges.push_back(edges[p]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

// Matches of the move's left-hand picture, and of its right-hand picture when
// that has vertices, under every rotation. Embeddings with the same vertices
// and the same outcome are reported once.
inline std::vector<MoveSite> find_sites(const Diagram& d, MoveId move) {
  const auto& tpl = move_templates();
  Net net = to_net(d);
  std::vector<MoveSite> raw;
  for (size_t v = 0; v < tpl.size(); ++v) {
    if (tpl[v].move != move) continue;
    MoveSite proto;
    proto.move = move;
    proto.variant = static_cast<int>(v);
    detail::match_pattern(net, tpl[v].lhs, raw, proto);
    if (detail::has_vertices(tpl[v].rhs)) {
      proto.reverse = true;
      detail::match_pattern(net, tpl[v].rhs, raw, proto);
    }
  }
  return detail::distinct_sites(d, std::move(raw));
}

inline bool inserts_on_edges(MoveId m) {
  return m == MoveId::G1 || m == MoveId::G1p || m == MoveId::G2 || m == MoveId::G6 || m == MoveId::G6p;
}

// Places where the move runs backwards from a picture without vertices: a
// kink or closure on any edge, a bigon on two edges of a common face.
inline std::vector<MoveSite> find_insertion_sites(const Diagram& d, MoveId move) {
  if (!inserts_on_edges(move)) return {};
  std::vector<MoveSite> raw;
  detail::insertion_sites(to_net(d), move, move_templates(), raw);
  return detail::distinct_sites(d, std::move(raw));
}

// What the move does to the invariant, stated for the side with more
// structure (D before a forward move).
struct MoveBehavior {
  MoveSite site;
  Diagram before, after;
  SurfacePoly inv_before, inv_after;
  std::string law;
  bool holds = false;
  std::optional<SurfacePoly> quotient;  // for the divisibility laws
};

inline LaurentA gamma8_factor() {
  return (LaurentA::a_pow(-3) - LaurentA::a_pow(3)) * named_constant(Constant::DELTA);
}

inline std::optional<SurfacePoly> divide_by_xy(const SurfacePoly& p, const LaurentA& c) {
  SurfacePoly q;
  for (const auto& [k, v] : p.terms()) {
    if (k.first < 1 || k.second < 1 || !divides(c, v)) return std::nullopt;
    q.add({k.first - 1, k.second - 1}, exact_div(v, c));
  }
  return q;
}

inline MoveBehavior move_behavior_report(const Diagram& d, const MoveSite& site) {
  MoveBehavior r;
  r.site = site;
  r.before = d;
  r.after = apply_move(d, site);
  r.inv_before = invariant(r.before);
  r.inv_after = invariant(r.after);
  // Orient so that `big` is the side with the template's left-hand picture.
  const SurfacePoly& big = site.reverse ? r.inv_after : r.inv_before;
  const SurfacePoly& small = site.reverse ? r.inv_before : r.inv_after;
  const LaurentA A = named_constant(Constant::A);
  switch (site.move) {
    case MoveId::G6:
      r.law = "<<lhs>> = (Ax + y) <<rhs>>";
      r.holds = big == (SurfacePoly::term(A, 1, 0) + SurfacePoly::y()) * small;
      break;
    case MoveId::G6p:
      r.law = "<<lhs>> = (x + Ay) <<rhs>>";
      r.holds = big == (SurfacePoly::x() + SurfacePoly::term(A, 0, 1)) * small;
      break;
    case MoveId::G7:
      r.law = "Delta xy divides <<D>> - <<D'>>";
      r.quotient = divide_by_xy(r.inv_before - r.inv_after, named_constant(Constant::DELTA));
      r.holds = r.quotient.has_value();
      break;
    case MoveId::G8:
      r.law = "(a^-3 - a^3) Delta xy divides <<D>> - <<D'>>";
      r.quotient = divide_by_xy(r.inv_before - r.inv_after, gamma8_factor());
      r.holds = r.quotient.has_value();
      break;
    default:
      r.law = "<<D>> = <<D'>>";
      r.holds = r.inv_before == r.inv_after;
  }
  return r;
}

}  // namespace a2surf
