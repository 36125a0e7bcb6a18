#include "hvg/shadow.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace hvg {

namespace {

// Direction with a total angular order starting at +x. `half` 2 marks the
// end of the circle.
struct Dir {
  std::int64_t x = 1;
  std::int64_t y = 0;
  int half = 0;
};

Dir make_dir(std::int64_t x, std::int64_t y) {
  const std::int64_t g = std::gcd(std::abs(x), std::abs(y));
  Dir d{x / g, y / g, 0};
  d.half = (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1;
  return d;
}

constexpr Dir kZero{1, 0, 0};
constexpr Dir kEnd{1, 0, 2};

std::int64_t cross(const Dir& a, const Dir& b) { return a.x * b.y - a.y * b.x; }

struct DirLess {
  bool operator()(const Dir& a, const Dir& b) const {
    if (a.half != b.half) return a.half < b.half;
    if (a.half == 2) return false;
    return cross(a, b) > 0;
  }
};

bool same(const Dir& a, const Dir& b) {
  return !DirLess{}(a, b) && !DirLess{}(b, a);
}

// Union of open angular intervals. Points where two intervals only touch
// stay uncovered and are tracked as gaps inside the merged interval.
class ShadowSet {
 public:
  ShadowSet() { gaps_.insert(kZero); }

  void insert(const Dir& lo, const Dir& hi) {
    const DirLess less;
    auto it = intervals_.upper_bound(lo);
    if (it != intervals_.begin()) {
      auto p = std::prev(it);
      if (!less(p->second, lo)) it = p;
    }
    Dir nlo = lo;
    Dir nhi = hi;
    std::vector<Dir> touch;
    while (it != intervals_.end() && !less(hi, it->first)) {
      if (same(it->second, lo)) touch.push_back(lo);
      if (same(it->first, hi)) touch.push_back(hi);
      if (less(it->first, nlo)) nlo = it->first;
      if (less(nhi, it->second)) nhi = it->second;
      it = intervals_.erase(it);
    }
    for (auto g = gaps_.upper_bound(lo); g != gaps_.end() && less(*g, hi);) {
      g = gaps_.erase(g);
    }
    gaps_.insert(touch.begin(), touch.end());
    intervals_[nlo] = nhi;
  }

  bool shadowed(const Dir& d) const {
    if (gaps_.count(d)) return false;
    auto it = intervals_.upper_bound(d);
    if (it == intervals_.begin()) return false;
    --it;
    const DirLess less;
    return less(it->first, d) && less(d, it->second);
  }

  bool closed() const {
    return intervals_.size() == 1 && same(intervals_.begin()->first, kZero) &&
           intervals_.begin()->second.half == 2;
  }

  const std::set<Dir, DirLess>& gaps() const { return gaps_; }

 private:
  std::map<Dir, Dir, DirLess> intervals_;
  std::set<Dir, DirLess> gaps_;
};

void add_cell_shadow(ShadowSet& shadows, Vertex u, int cx, int cy) {
  Dir corners[4];
  int n = 0;
  for (const auto& [dx, dy] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
    const std::int64_t x = cx + dx - u.x;
    const std::int64_t y = cy + dy - u.y;
    if (x == 0 && y == 0) continue;
    corners[n++] = make_dir(x, y);
  }
  // The cell subtends less than a half-turn, so its extreme directions are
  // the ones with every other corner on one side.
  const Dir* lo = nullptr;
  const Dir* hi = nullptr;
  for (int i = 0; i < n; ++i) {
    bool is_lo = true;
    bool is_hi = true;
    for (int j = 0; j < n; ++j) {
      if (cross(corners[i], corners[j]) < 0) is_lo = false;
      if (cross(corners[j], corners[i]) < 0) is_hi = false;
    }
    if (is_lo && !lo) lo = &corners[i];
    if (is_hi && !hi) hi = &corners[i];
  }
  if (DirLess{}(*lo, *hi)) {
    shadows.insert(*lo, *hi);
  } else {
    shadows.insert(*lo, kEnd);
    if (!same(*hi, kZero)) shadows.insert(kZero, *hi);
  }
}

}  // namespace

std::vector<Vertex> visible_vertices(const GridMap& map, Vertex u,
                                     const std::function<bool(Vertex)>& wanted) {
  std::vector<Vertex> out;
  ShadowSet shadows;
  const int max_r = std::max({u.x, map.width() - u.x, u.y, map.height() - u.y}) + 1;

  auto consider = [&](Vertex w) {
    if (!map.vertex_in_bounds(w) || !wanted(w)) return;
    if (shadows.shadowed(make_dir(w.x - u.x, w.y - u.y))) return;
    if (los_segment(map, u, w)) out.push_back(w);
  };
  auto shade = [&](int cx, int cy) {
    if (!map.cell_in_bounds(cx, cy) || map.blocked(cx, cy)) {
      add_cell_shadow(shadows, u, cx, cy);
    }
  };

  int r = 1;
  for (; r <= max_r; ++r) {
    // Ring r of vertices, row-major.
    for (int y = u.y - r; y <= u.y + r; ++y) {
      if (y == u.y - r || y == u.y + r) {
        for (int x = u.x - r; x <= u.x + r; ++x) consider({x, y});
      } else {
        consider({u.x - r, y});
        consider({u.x + r, y});
      }
    }
    // Cells whose farthest corner lies on ring r.
    for (int cy = u.y - r; cy <= u.y + r - 1; ++cy) {
      if (cy == u.y - r || cy == u.y + r - 1) {
        for (int cx = u.x - r; cx <= u.x + r - 1; ++cx) shade(cx, cy);
      } else {
        shade(u.x - r, cy);
        shade(u.x + r - 1, cy);
      }
    }
    if (shadows.closed()) break;
  }
  if (r > max_r) return out;

  // Beyond ring r only the touching directions can still see anything, and
  // along a ray line of sight, once lost, stays lost.
  for (const Dir& d : shadows.gaps()) {
    const int step_r = static_cast<int>(std::max(std::abs(d.x), std::abs(d.y)));
    for (int k = r / step_r + 1;; ++k) {
      const Vertex w{u.x + static_cast<int>(d.x) * k, u.y + static_cast<int>(d.y) * k};
      if (!map.vertex_in_bounds(w) || !los_segment(map, u, w)) break;
      if (wanted(w)) out.push_back(w);
    }
  }
  return out;
}

}  // namespace hvg
