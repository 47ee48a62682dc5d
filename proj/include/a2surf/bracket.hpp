#pragma once

#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "ring.hpp"

namespace a2surf {

struct EmptyDiagram : std::runtime_error {
  EmptyDiagram() : std::runtime_error("bracket of the empty diagram is undefined") {}
};
struct OpenWeb : std::runtime_error {
  OpenWeb() : std::runtime_error("web has boundary darts") {}
};
struct NotACrossing : std::invalid_argument {
  NotACrossing() : std::invalid_argument("vertex is not a crossing") {}
};

// Formal combination of diagrams; produced by crossing resolution.
struct WebExpr {
  std::vector<std::pair<LaurentA, Net>> terms;
};

// Expands one crossing into the H-web term and the oriented smoothing.
inline WebExpr resolve_crossing(const Net& net, int node) {
  if (!net.alive[node] || !is_cross(net.kind[node])) throw NotACrossing();
  const bool pos = net.kind[node] == NodeKind::XPos;
  const int a = net.port(node, 0), b = a + 1, c = a + 2, d = a + 3;
  WebExpr w;
  {
    Net h = net;
    int sink = h.add_node(NodeKind::Sink, 3);
    int src = h.add_node(NodeKind::Source, 3);
    h.connect(h.port(src, 2), h.port(sink, 2));
    splice(h, {node}, {{a, h.port(sink, 0)}, {b, h.port(sink, 1)}, {c, h.port(src, 0)}, {d, h.port(src, 1)}});
    w.terms.emplace_back(pos ? -LaurentA::a_pow(1) : -LaurentA::a_pow(-1), std::move(h));
  }
  {
    Net s = net;
    splice(s, {node}, {{b, c}, {d, a}});
    w.terms.emplace_back(pos ? LaurentA::a_pow(-2) : LaurentA::a_pow(2), std::move(s));
  }
  return w;
}

namespace detail {

inline bool trivalent_node(const Net& n, int p) { return is_trivalent(n.kind[n.node_of[p]]); }

// Contracts the bigon whose face orbit is (p0, p1).
inline void contract_bigon(Net& n, int p0, int p1) {
  int u = n.node_of[p0], v = n.node_of[p1];
  int q0 = n.link[p0], q1 = n.link[p1];
  int xu = -1, xv = -1;
  for (int s = 0; s < 3; ++s) {
    int p = n.port(u, s);
    if (p != p0 && p != q1) xu = p;
    int q = n.port(v, s);
    if (q != p1 && q != q0) xv = q;
  }
  splice(n, {u, v}, {{xu, xv}});
}

inline int square_external(const Net& n, int node, int pa, int pb) {
  for (int s = 0; s < 3; ++s) {
    int p = n.port(node, s);
    if (p != pa && p != pb) return p;
  }
  throw InternalError("square vertex without external port");
}

}  // namespace detail

// Optional randomization of the reduction order, used by the confluence check.
struct ReduceOrder {
  std::mt19937_64* rng = nullptr;
};

namespace detail {

inline LaurentA eval_internal(Net net, const ReduceOrder& order);

inline LaurentA eval_square(Net& net, const std::vector<int>& f, const ReduceOrder& order) {
  int nd[4], ext[4];
  for (int i = 0; i < 4; ++i) nd[i] = net.node_of[f[i]];
  for (int i = 0; i < 4; ++i) {
    if (net.kind[nd[i]] == net.kind[nd[(i + 1) % 4]])
      throw InternalError("square face edges do not alternate in orientation");
    ext[i] = square_external(net, nd[i], f[i], net.link[f[(i + 3) % 4]]);
  }
  std::vector<int> dead(nd, nd + 4);
  Net n1 = net, n2 = net;
  splice(n1, dead, {{ext[0], ext[1]}, {ext[2], ext[3]}});
  splice(n2, dead, {{ext[1], ext[2]}, {ext[3], ext[0]}});
  return eval_internal(std::move(n1), order) + eval_internal(std::move(n2), order);
}

// Value with the empty web normalized to 1.
inline LaurentA eval_internal(Net net, const ReduceOrder& order) {
  LaurentA factor(1);
  const LaurentA& A = circle_value();
  const LaurentA& B = bigon_value();
  for (;;) {
    if (net.loops) {
      factor *= A.pow(static_cast<unsigned>(net.loops));
      net.loops = 0;
    }
    if (net.boundary_node() >= 0) throw OpenWeb();
    std::vector<std::vector<int>> bigons, squares;
    for (auto& f : face_orbits(net)) {
      if (f.size() == 2) {
        if (detail::trivalent_node(net, f[0]) && detail::trivalent_node(net, f[1]) &&
            net.node_of[f[0]] != net.node_of[f[1]])
          bigons.push_back(std::move(f));
      } else if (f.size() == 4) {
        bool ok = true;
        std::set<int> ns;
        for (int p : f) {
          ok = ok && detail::trivalent_node(net, p);
          ns.insert(net.node_of[p]);
        }
        if (ok && ns.size() == 4) squares.push_back(std::move(f));
      }
    }
    std::vector<int> crossings;
    for (int n = 0; n < net.nodes(); ++n)
      if (net.alive[n] && is_cross(net.kind[n])) crossings.push_back(n);

    if (order.rng) {
      size_t total = bigons.size() + squares.size() + crossings.size();
      if (total == 0) break;
      size_t pick = std::uniform_int_distribution<size_t>(0, total - 1)(*order.rng);
      if (pick < bigons.size()) {
        contract_bigon(net, bigons[pick][0], bigons[pick][1]);
        factor *= B;
        continue;
      }
      pick -= bigons.size();
      if (pick < squares.size()) return factor * eval_square(net, squares[pick], order);
      pick -= squares.size();
      LaurentA sum;
      for (auto& [c, n] : resolve_crossing(net, crossings[pick]).terms) sum += c * eval_internal(std::move(n), order);
      return factor * sum;
    }
    if (!bigons.empty()) {
      contract_bigon(net, bigons[0][0], bigons[0][1]);
      factor *= B;
      continue;
    }
    if (!squares.empty()) return factor * eval_square(net, squares[0], order);
    if (!crossings.empty()) {
      LaurentA sum;
      for (auto& [c, n] : resolve_crossing(net, crossings[0]).terms) sum += c * eval_internal(std::move(n), order);
      return factor * sum;
    }
    break;
  }
  if (net.live_count() != 0) throw InternalError("closed web with no reducible face");
  return factor;
}

}  // namespace detail

// Internal scalar of a combination of closed webs (empty web = 1).
inline LaurentA reduce_web(const WebExpr& w, const ReduceOrder& order = {}) {
  LaurentA sum;
  for (const auto& [c, n] : w.terms) sum += c * detail::eval_internal(n, order);
  return sum;
}

inline LaurentA bracket_internal(const Net& net, const ReduceOrder& order = {}) {
  return detail::eval_internal(net, order);
}

// Bracket of a closed diagram without marked vertices, normalized so that a
// single circle evaluates to 1.
inline LaurentA a2_bracket(const Net& net, const ReduceOrder& order = {}) {
  if (net.live_count() == 0 && net.loops == 0) throw EmptyDiagram();
  if (net.count(NodeKind::Marked)) throw std::invalid_argument("bracket needs a diagram without marked vertices");
  LaurentA v = detail::eval_internal(net, order);
  try {
    return exact_div(v, circle_value());
  } catch (const NotDivisible&) {
    throw InternalError("internal bracket value not divisible by the circle value");
  }
}

inline LaurentA a2_bracket(const Diagram& d, const ReduceOrder& order = {}) { return a2_bracket(to_net(d), order); }

// Writhe-normalized bracket a^{8w} <D> of a link diagram.
inline LaurentA normalized_bracket(const Diagram& d) { return a2_bracket(d).shifted(8 * writhe(d)); }

}  // namespace a2surf
