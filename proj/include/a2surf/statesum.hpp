#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bracket.hpp"
#include "conway.hpp"
#include "diagram.hpp"
#include "ring.hpp"

namespace a2surf {

struct StateRow {
  State state;
  int x_deg = 0, y_deg = 0;
  LaurentA bracket;
};

struct InvariantReport {
  SurfacePoly poly;
  int writhe = 0;
  int marked_count = 0;
  std::vector<StateRow> states;
};

// All 2^h states; marked vertex k takes TZero when bit k of the counter is set.
inline std::vector<State> all_states(int h) {
  std::vector<State> out;
  for (unsigned long m = 0; m < (1ul << h); ++m) {
    State s(h);
    for (int k = 0; k < h; ++k) s[k] = (m >> k) & 1ul ? Smoothing::TZero : Smoothing::TInf;
    out.push_back(std::move(s));
  }
  return out;
}

inline std::pair<int, int> state_degrees(const State& s) {
  int x = 0;
  for (auto v : s) x += v == Smoothing::TInf;
  return {x, static_cast<int>(s.size()) - x};
}

inline Net state_net(const Diagram& d, const State& s) {
  Net net = to_net(d);
  resolve_marked(net, marked_vertices(d), s);
  return net;
}

inline std::vector<StateRow> state_table(const Diagram& d) {
  if (d.is_tangle()) throw OpenWeb();
  int h = static_cast<int>(marked_vertices(d).size());
  std::vector<StateRow> rows;
  for (auto& s : all_states(h)) {
    auto [x, y] = state_degrees(s);
    rows.push_back({s, x, y, a2_bracket(state_net(d, s))});
  }
  return rows;
}

// Sum over states of x^{#TInf} y^{#TZero} <D_state>.
inline SurfacePoly double_bracket(const Diagram& d) {
  SurfacePoly p;
  for (const auto& r : state_table(d)) p.add({r.x_deg, r.y_deg}, r.bracket);
  return p;
}

inline InvariantReport surface_poly(const Diagram& d) {
  InvariantReport rep;
  rep.writhe = writhe(d);
  rep.marked_count = static_cast<int>(marked_vertices(d).size());
  rep.states = state_table(d);
  for (const auto& r : rep.states) rep.poly.add({r.x_deg, r.y_deg}, r.bracket.shifted(8 * rep.writhe));
  return rep;
}

inline SurfacePoly invariant(const Diagram& d) { return surface_poly(d).poly; }

inline QuotientPoly specialize(const Diagram& d, Modulus m) { return quotient_reduce(invariant(d), m); }

// Sum over states of x^{#TInf} y^{#TZero} times the Conway polynomial of the
// state evaluated at z = a^3 - a^-3 in Z[a]/(a^6 - a^3 + 1).
inline QuotientPoly conway_state_sum(const Diagram& d, int cap = 14) {
  QuotientPoly p(Modulus::PHI18);
  int h = static_cast<int>(marked_vertices(d).size());
  for (auto& s : all_states(h)) {
    auto [x, y] = state_degrees(s);
    p.add({x, y}, evaluate_in_quotient(conway_poly(state_net(d, s), cap)));
  }
  return p;
}

using ComplexPoly = std::map<XY, std::complex<double>>;

inline const double kP9Tolerance = 1e-9;

// Value of a canonical PHI18 representative at exp(2 pi i / 18).
inline std::complex<double> at_root18(const QuotientElem& e) {
  const double pi = std::acos(-1.0);
  const std::complex<double> w = std::polar(1.0, 2 * pi / 18);
  std::complex<double> acc = 0, wk = 1;
  for (const auto& c : e.coeffs()) {
    acc += static_cast<double>(c) * wk;
    wk *= w;
  }
  return acc;
}

inline ComplexPoly to_complex(const QuotientPoly& p) {
  ComplexPoly out;
  for (const auto& [k, c] : p.terms()) out[k] = at_root18(c);
  return out;
}

inline ComplexPoly p9_star(const Diagram& d) { return to_complex(specialize(d, Modulus::PHI18)); }

inline bool complex_poly_close(const ComplexPoly& p, const ComplexPoly& q, double tol = kP9Tolerance) {
  std::map<XY, std::complex<double>> diff = p;
  for (const auto& [k, v] : q) diff[k] -= v;
  for (const auto& [k, v] : diff)
    if (std::abs(v) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Ribbon pairs and admissibility.

namespace detail {

// Smoothing that joins two adjacent slots of a marked node.
inline Smoothing capping_smoothing(int slot_a, int slot_b) {
  int lo = std::min(slot_a, slot_b), hi = std::max(slot_a, slot_b);
  if (lo == 0 && hi == 3) return Smoothing::TZero;
  return lo % 2 == 0 ? Smoothing::TInf : Smoothing::TZero;
}

inline Smoothing other(Smoothing s) { return s == Smoothing::TInf ? Smoothing::TZero : Smoothing::TInf; }

inline bool perfect_matching(const std::vector<std::vector<int>>& adj, std::vector<int>& mate, int k) {
  int n = static_cast<int>(mate.size());
  while (k < n && mate[k] >= 0) ++k;
  if (k == n) return true;
  for (int j : adj[k]) {
    if (mate[j] >= 0) continue;
    mate[k] = j;
    mate[j] = k;
    if (perfect_matching(adj, mate, k + 1)) return true;
    mate[k] = mate[j] = -1;
  }
  return false;
}

// Removes kinks and simple bigons between crossings; returns true when no
// crossing survives.
inline bool greedy_untangle(Net net) {
  auto over = [&](int p) { return detail::over_port(net, p); };
  for (bool changed = true; changed;) {
    changed = false;
    for (int n = 0; n < net.nodes() && !changed; ++n) {
      if (!net.alive[n] || !is_cross(net.kind[n])) continue;
      int a = net.port(n, 0);
      for (int s = 0; s < 4; ++s)
        if (net.node_of[net.link[a + s]] == n) {
          splice(net, {n}, {{a, a + 2}, {a + 1, a + 3}});
          changed = true;
          break;
        }
    }
    if (changed) continue;
    for (const auto& f : face_orbits(net)) {
      if (f.size() != 2) continue;
      int u = net.node_of[f[0]], v = net.node_of[f[1]];
      if (u == v || !is_cross(net.kind[u]) || !is_cross(net.kind[v])) continue;
      if (over(f[0]) != over(net.link[f[0]])) continue;
      int a = net.port(u, 0), b = net.port(v, 0);
      splice(net, {u, v}, {{a, a + 2}, {a + 1, a + 3}, {b, b + 2}, {b + 1, b + 3}});
      changed = true;
      break;
    }
  }
  return net.live_count() == 0;
}

}  // namespace detail

enum class Verdict { Yes, Likely, No };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::Likely: return "likely";
    case Verdict::No: return "no";
  }
  return "?";
}

struct ResolutionCheck {
  int components = 0;
  bool untangled = false;
  bool conway_trivial = false;
  Verdict verdict = Verdict::No;
};

// Heuristic triviality test for a link diagram.
inline ResolutionCheck check_trivial_link(const Net& net) {
  ResolutionCheck c;
  c.components = strand_components(net);
  c.untangled = detail::greedy_untangle(net);
  ZPoly z = conway_poly(net);
  c.conway_trivial = z == ZPoly(c.components == 1 ? 1 : 0);
  c.verdict = c.untangled ? Verdict::Yes : (c.conway_trivial ? Verdict::Likely : Verdict::No);
  return c;
}

struct AdmissibilityReport {
  ResolutionCheck positive, negative;
  Verdict verdict = Verdict::No;
};

inline AdmissibilityReport admissibility(const Diagram& d) {
  int h = static_cast<int>(marked_vertices(d).size());
  AdmissibilityReport r;
  r.positive = check_trivial_link(state_net(d, State(h, Smoothing::TInf)));
  r.negative = check_trivial_link(state_net(d, State(h, Smoothing::TZero)));
  auto rank = [](Verdict v) { return v == Verdict::Yes ? 2 : v == Verdict::Likely ? 1 : 0; };
  r.verdict = rank(r.positive.verdict) < rank(r.negative.verdict) ? r.positive.verdict : r.negative.verdict;
  return r;
}

struct RibbonReport {
  bool is_ribbon = false;
  std::vector<std::pair<int, int>> pairs;  // vertex ids
  int n = 0;
  std::optional<Diagram> sigma0_resolution;
  std::optional<State> sigma0;
  bool monomial = false;
  std::optional<QuotientElem> c;            // from the bracket pipeline
  std::optional<QuotientElem> c_oracle;     // from the Conway state sum
  std::complex<double> c_complex{0, 0};
  std::complex<double> c_oracle_complex{0, 0};
  QuotientPoly star{Modulus::PHI18};
};

inline RibbonReport ribbon_analysis(const Diagram& d) {
  RibbonReport rep;
  Net net = to_net(d);
  auto marked = marked_vertices(d);
  const int h = static_cast<int>(marked.size());
  std::map<int, int> index;
  for (int k = 0; k < h; ++k) index[marked[k]] = k;
  // Candidate ribbon pairs: bigons between two marked vertices whose capping
  // smoothings have opposite types. Record the pass-through smoothing of each.
  std::vector<std::vector<int>> adj(h);
  std::map<std::pair<int, int>, std::pair<Smoothing, Smoothing>> pass;
  for (const auto& f : face_orbits(net)) {
    if (f.size() != 2) continue;
    int u = net.node_of[f[0]], v = net.node_of[f[1]];
    if (u == v || net.kind[u] != NodeKind::Marked || net.kind[v] != NodeKind::Marked) continue;
    Smoothing cu = detail::capping_smoothing(net.slot(f[0]), net.slot(net.link[f[1]]));
    Smoothing cv = detail::capping_smoothing(net.slot(f[1]), net.slot(net.link[f[0]]));
    if (cu == cv) continue;
    int iu = index[u], iv = index[v];
    adj[iu].push_back(iv);
    adj[iv].push_back(iu);
    pass[{iu, iv}] = {detail::other(cu), detail::other(cv)};
    pass[{iv, iu}] = {detail::other(cv), detail::other(cu)};
  }
  std::vector<int> mate(h, -1);
  rep.is_ribbon = detail::perfect_matching(adj, mate, 0);
  rep.star = specialize(d, Modulus::PHI18);
  if (rep.is_ribbon) {
    State s0(h);
    for (int k = 0; k < h; ++k) {
      if (k < mate[k]) rep.pairs.emplace_back(marked[k], marked[mate[k]]);
      s0[k] = pass.at({k, mate[k]}).first;
    }
    rep.n = h / 2;
    rep.sigma0 = s0;
    Net sn = state_net(d, s0);
    rep.sigma0_resolution = to_diagram(sn);
    bool mono = true;
    for (const auto& [k, c] : rep.star.terms())
      if (k != XY{rep.n, rep.n}) mono = false;
    rep.monomial = mono;
    rep.c = rep.star.coeff(rep.n, rep.n);
    rep.c_complex = at_root18(*rep.c);
    QuotientElem acc(Modulus::PHI18);
    for (auto& s : all_states(h)) {
      if (state_degrees(s) != std::pair<int, int>{rep.n, rep.n}) continue;
      acc = acc + evaluate_in_quotient(conway_poly(state_net(d, s)));
    }
    rep.c_oracle = acc;
    rep.c_oracle_complex = at_root18(acc);
  }
  return rep;
}

}  // namespace a2surf
