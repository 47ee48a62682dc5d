#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagram.hpp"

namespace a2surf {

// Builds diagrams bottom to top as a sequence of elementary slices. Each open
// point carries the edge crossing the current level and whether the strand
// travels upward. Vertex darts are named SW, SE, NE, NW; their
// counterclockwise order is SE, NE, NW, SW.
class MorseBuilder {
 public:
  struct Point {
    int label;
    bool up;
  };

  MorseBuilder() = default;
  // Starts a tangle whose bottom points have the given directions, left to right.
  explicit MorseBuilder(const std::vector<bool>& bottom_up) {
    for (bool up : bottom_up) {
      int e = ++next_;
      bottom_.push_back(up ? -e : e);
      pts_.push_back({e, up});
    }
  }

  int width() const { return static_cast<int>(pts_.size()); }
  const std::vector<Point>& points() const { return pts_; }

  // New arc opening upward at positions i, i+1.
  MorseBuilder& cup(int i, bool left_up = true) {
    check_pos(i, true);
    int e = ++next_;
    pts_.insert(pts_.begin() + i, {{e, left_up}, {e, !left_up}});
    return *this;
  }

  // Closes positions i, i+1 with an arc.
  MorseBuilder& cap(int i) {
    check_pair(i);
    Point l = pts_[i], r = pts_[i + 1];
    if (l.up == r.up) throw std::invalid_argument("cap needs antiparallel strands");
    pts_.erase(pts_.begin() + i, pts_.begin() + i + 2);
    if (l.label == r.label) {
      ++loops_;
    } else {
      rename(r.label, l.label);
    }
    return *this;
  }

  // Crossing of positions i, i+1; the strands swap places.
  MorseBuilder& crossing(int i, bool left_over) {
    check_pair(i);
    Point l = pts_[i], r = pts_[i + 1];
    int sw = bottom_dart(l), se = bottom_dart(r);
    int ne_label = ++next_, nw_label = ++next_;
    int ne = top_dart(l, ne_label), nw = top_dart(r, nw_label);
    // Counterclockwise: SE, NE, NW, SW. Strands: SW-NE (left), SE-NW (right).
    std::vector<int> ring{se, ne, nw, sw};
    int under_in = left_over ? (r.up ? 0 : 2) : (l.up ? 3 : 1);
    std::vector<int> slots;
    for (int k = 0; k < 4; ++k) slots.push_back(ring[(under_in + k) % 4]);
    bool pos = slots[1] > 0;
    verts_.push_back({pos ? VertexKind::CrossingPos : VertexKind::CrossingNeg, slots});
    pts_[i] = {nw_label, r.up};
    pts_[i + 1] = {ne_label, l.up};
    return *this;
  }

  // Crossing of positions i, i+1 with the requested sign.
  MorseBuilder& crossing_sign(int i, bool positive) {
    check_pair(i);
    bool left_over = crossing_positive(pts_[i].up, pts_[i + 1].up, true) == positive;
    return crossing(i, left_over);
  }

  // Sign of a crossing between strands of the given directions.
  static bool crossing_positive(bool left_up, bool right_up, bool left_over) {
    std::vector<int> ring{right_up ? 1 : -1, left_up ? -1 : 1, right_up ? -1 : 1, left_up ? 1 : -1};
    int under_in = left_over ? (right_up ? 0 : 2) : (left_up ? 3 : 1);
    return ring[(under_in + 1) % 4] > 0;
  }

  // Marked vertex on antiparallel positions i, i+1. With vertical_tinf the
  // TInf smoothing lets both strands pass straight up; otherwise it caps them.
  MorseBuilder& marked(int i, bool vertical_tinf) {
    check_pair(i);
    Point l = pts_[i], r = pts_[i + 1];
    if (l.up == r.up) throw std::invalid_argument("marked vertex needs antiparallel strands");
    int sw = bottom_dart(l), se = bottom_dart(r);
    int nw_label = ++next_, ne_label = ++next_;
    int nw = top_dart(l, nw_label), ne = top_dart(r, ne_label);
    if (vertical_tinf)
      verts_.push_back({VertexKind::Marked, {se, ne, nw, sw}});
    else
      verts_.push_back({VertexKind::Marked, {ne, nw, sw, se}});
    pts_[i] = {nw_label, l.up};
    pts_[i + 1] = {ne_label, r.up};
    return *this;
  }

  Diagram closed() const {
    if (!pts_.empty()) throw std::logic_error("open points remain");
    Diagram d;
    d.vertices = verts_;
    d.free_loops = loops_;
    return d;
  }

  // Boundary: bottom points left to right, then top points right to left.
  Diagram tangle() const {
    Diagram d;
    d.vertices = verts_;
    d.free_loops = loops_;
    d.has_boundary = true;
    d.boundary = bottom_;
    for (auto it = pts_.rbegin(); it != pts_.rend(); ++it) d.boundary.push_back(it->up ? it->label : -it->label);
    return d;
  }

 private:
  void check_pos(int i, bool insert) const {
    if (i < 0 || i > width() - (insert ? 0 : 1)) throw std::out_of_range("position out of range");
  }
  void check_pair(int i) const {
    if (i < 0 || i + 1 >= width()) throw std::out_of_range("pair position out of range");
  }
  static int bottom_dart(const Point& p) { return p.up ? p.label : -p.label; }
  static int top_dart(const Point& p, int label) { return p.up ? -label : label; }
  void rename(int from, int to) {
    for (auto& v : verts_)
      for (auto& s : v.slots)
        if (std::abs(s) == from) s = s > 0 ? to : -to;
    for (auto& s : bottom_)
      if (std::abs(s) == from) s = s > 0 ? to : -to;
    for (auto& p : pts_)
      if (p.label == from) p.label = to;
  }

  int next_ = 0;
  int loops_ = 0;
  std::vector<Point> pts_;
  std::vector<int> bottom_;
  std::vector<VertexRecord> verts_;
};

}  // namespace a2surf
