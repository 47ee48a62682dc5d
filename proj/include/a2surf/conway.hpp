#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "ring.hpp"

namespace a2surf {

struct DepthExceeded : std::runtime_error {
  explicit DepthExceeded(int n)
      : std::runtime_error("conway oracle: " + std::to_string(n) + " crossings exceed the cap") {}
};

// Integer polynomial in z.
class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(long long c) {  // NOLINT
    if (c) c_.push_back(BigInt(c));
  }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
  bool is_zero() const { return c_.empty(); }

  friend ZPoly operator+(ZPoly p, const ZPoly& q) {
    if (p.c_.size() < q.c_.size()) p.c_.resize(q.c_.size(), BigInt(0));
    for (size_t i = 0; i < q.c_.size(); ++i) p.c_[i] += q.c_[i];
    p.trim();
    return p;
  }
  friend ZPoly operator-(const ZPoly& p, const ZPoly& q) { return p + q.scaled(-1); }
  ZPoly times_z() const {
    ZPoly r = *this;
    if (!r.c_.empty()) r.c_.insert(r.c_.begin(), BigInt(0));
    return r;
  }
  ZPoly scaled(long long s) const {
    ZPoly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }
  friend bool operator==(const ZPoly& p, const ZPoly& q) { return p.c_ == q.c_; }

  std::string str() const {
    std::vector<std::pair<BigInt, std::string>> parts;
    for (size_t e = 0; e < c_.size(); ++e)
      if (c_[e] != 0) parts.emplace_back(c_[e], detail::monomial_text(abs(c_[e]), static_cast<int>(e), "z"));
    return detail::join_terms(parts);
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

// z = a^3 - a^-3 in Z[a]/(a^6 - a^3 + 1); its square is -3 there.
inline QuotientElem conway_variable() {
  return QuotientElem::a_power(Modulus::PHI18, 3) - QuotientElem::a_power(Modulus::PHI18, -3);
}

inline QuotientElem evaluate_in_quotient(const ZPoly& p) {
  QuotientElem z = conway_variable(), acc(Modulus::PHI18), zk(Modulus::PHI18, 1);
  for (const auto& c : p.coeffs()) {
    acc = acc + QuotientElem(Modulus::PHI18, static_cast<long long>(c)) * zk;
    zk = zk * z;
  }
  return acc;
}

namespace detail {

inline bool over_port(const Net& n, int p) {
  int s = n.slot(p);
  return n.kind[n.node_of[p]] == NodeKind::XPos ? (s % 2 == 1) : (s % 2 == 0);
}

// First crossing met as under on its first visit, or -1 when descending.
// Components are walked in order of their lowest out-port.
inline int first_bad_crossing(const Net& net) {
  std::vector<char> seen_port(net.link.size(), 0), seen_node(net.nodes(), 0);
  for (int start = 0; start < static_cast<int>(net.link.size()); ++start) {
    if (!net.alive[net.node_of[start]] || !net.out[start] || seen_port[start]) continue;
    int q = start;
    do {
      seen_port[q] = 1;
      int r = net.link[q];
      int n = net.node_of[r];
      if (!seen_node[n]) {
        seen_node[n] = 1;
        if (!over_port(net, r)) return n;
      }
      q = net.first[n] + (net.slot(r) + 2) % 4;
    } while (q != start);
  }
  return -1;
}

struct ConwayMemo {
  std::map<std::string, ZPoly> table;
};

inline ZPoly conway_rec(const Net& net, int cap, ConwayMemo& memo) {
  int crossings = net.count(NodeKind::XPos) + net.count(NodeKind::XNeg);
  if (crossings > cap) throw DepthExceeded(crossings);
  int bad = first_bad_crossing(net);
  if (bad < 0) return strand_components(net) == 1 ? ZPoly(1) : ZPoly(0);
  std::string key = serialize_mgd(to_diagram(net));
  if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
  Net sw = net;
  bool pos = net.kind[bad] == NodeKind::XPos;
  sw.kind[bad] = pos ? NodeKind::XNeg : NodeKind::XPos;
  Net d0 = net;
  int a = net.port(bad, 0);
  splice(d0, {bad}, {{a + 1, a + 2}, {a + 3, a}});
  ZPoly sm = conway_rec(d0, cap, memo).times_z();
  ZPoly r = pos ? conway_rec(sw, cap, memo) + sm : conway_rec(sw, cap, memo) - sm;
  memo.table.emplace(std::move(key), r);
  return r;
}

}  // namespace detail

// Conway polynomial of a link diagram by skein descent to descending diagrams.
inline ZPoly conway_poly(const Net& net, int cap = 14) {
  for (int n = 0; n < net.nodes(); ++n)
    if (net.alive[n] && !is_cross(net.kind[n]))
      throw std::invalid_argument("conway oracle needs a link diagram");
  if (net.live_count() == 0 && net.loops == 0) throw std::invalid_argument("empty diagram");
  detail::ConwayMemo memo;
  return detail::conway_rec(net, cap, memo);
}

inline ZPoly conway_poly(const Diagram& d, int cap = 14) { return conway_poly(to_net(d), cap); }

inline QuotientElem conway_in_quotient(const Diagram& d, int cap = 14) {
  return evaluate_in_quotient(conway_poly(d, cap));
}

}  // namespace a2surf
