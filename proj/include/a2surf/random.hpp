#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "bracket.hpp"
#include "builder.hpp"
#include "diagram.hpp"
#include "moves.hpp"

namespace a2surf {

using Rng = std::mt19937_64;

namespace detail {

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

inline std::vector<int> antiparallel_pairs(const MorseBuilder& b) {
  std::vector<int> out;
  const auto& p = b.points();
  for (int i = 0; i + 1 < b.width(); ++i)
    if (p[i].up != p[i + 1].up) out.push_back(i);
  return out;
}

}  // namespace detail

// Closed marked graph diagram built from random slices: cups up to an even
// width, then crossings and marked vertices in random order, then caps.
inline Diagram random_marked_diagram(Rng& rng, int max_marked, int max_crossings, int max_width = 6) {
  using detail::coin;
  using detail::uniform;
  const int h = uniform(rng, 0, max_marked), c = uniform(rng, 0, max_crossings);
  std::vector<char> ops(h, 'M');
  ops.insert(ops.end(), c, 'X');
  std::shuffle(ops.begin(), ops.end(), rng);
  MorseBuilder b;
  const int pairs = uniform(rng, 1, std::max(1, max_width / 2));
  for (int k = 0; k < pairs; ++k) b.cup(uniform(rng, 0, b.width()), coin(rng));
  for (char op : ops) {
    if (op == 'X') {
      b.crossing(uniform(rng, 0, b.width() - 2), coin(rng));
    } else {
      auto ap = detail::antiparallel_pairs(b);
      b.marked(ap[uniform(rng, 0, static_cast<int>(ap.size()) - 1)], coin(rng));
    }
  }
  while (b.width() > 0) {
    auto ap = detail::antiparallel_pairs(b);
    b.cap(ap[uniform(rng, 0, static_cast<int>(ap.size()) - 1)]);
  }
  return b.closed();
}

inline Diagram random_link_diagram(Rng& rng, int max_crossings, int max_width = 6) {
  return random_marked_diagram(rng, 0, max_crossings, max_width);
}

// Closed web: a random link diagram with every crossing replaced by its H
// web or its oriented smoothing.
inline Diagram random_closed_web(Rng& rng, int max_vertices) {
  Net net = to_net(random_link_diagram(rng, max_vertices / 2));
  for (int n = 0; n < net.nodes(); ++n) {
    if (!net.alive[n] || !is_cross(net.kind[n])) continue;
    auto w = resolve_crossing(net, n);
    net = std::move(w.terms[detail::coin(rng) ? 0 : 1].second);
  }
  return to_diagram(net);
}

struct SkeinTriple {
  Diagram plus, minus, zero;
};

// The three diagrams that agree with d away from the given crossing.
inline SkeinTriple skein_triple(const Diagram& d, int vertex) {
  if (vertex < 0 || vertex >= static_cast<int>(d.vertices.size()) || !is_crossing(d.vertices[vertex].kind))
    throw std::invalid_argument("skein triple needs a crossing");
  Net net = to_net(d);
  Net p = net, m = net, z = net;
  p.kind[vertex] = NodeKind::XPos;
  m.kind[vertex] = NodeKind::XNeg;
  const int a = net.port(vertex, 0);
  splice(z, {vertex}, {{a + 1, a + 2}, {a + 3, a}});
  return {to_diagram(p), to_diagram(m), to_diagram(z)};
}

inline SkeinTriple random_skein_triple(Rng& rng, int max_marked, int max_crossings) {
  for (;;) {
    Diagram d = random_marked_diagram(rng, max_marked, max_crossings);
    std::vector<int> cs;
    for (size_t i = 0; i < d.vertices.size(); ++i)
      if (is_crossing(d.vertices[i].kind)) cs.push_back(static_cast<int>(i));
    if (cs.empty()) continue;
    return skein_triple(d, cs[detail::uniform(rng, 0, static_cast<int>(cs.size()) - 1)]);
  }
}

// A kink of the requested sign added on a random edge; nullopt when the
// diagram has no edge.
inline std::optional<Diagram> random_kink_insertion(Rng& rng, const Diagram& d, bool positive) {
  auto sites = find_insertion_sites(d, positive ? MoveId::G1 : MoveId::G1p);
  if (sites.empty()) return std::nullopt;
  return apply_move(d, sites[detail::uniform(rng, 0, static_cast<int>(sites.size()) - 1)]);
}

}  // namespace a2surf
