#include "hpcolor/uncovered_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace hpcolor {

Point uncovered_witness(const Instance& inst, const Line& separating) {
  // The separator misses every ray, so its dual point lies in no half-plane.
  Point o{separating.slope, separating.intercept};
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (inst.halfplanes[i].contains(o)) {
      throw NotActuallyUncovered("witness lies in half-plane " + std::to_string(i));
    }
  }
  return o;
}

PolarScene polarize(const Instance& inst, const Point& o) {
  PolarScene scene;
  scene.origin_shift = o;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& h = inst.halfplanes[i];
    // Shifted boundary: y - a*x = c with c = a*o.x + b - o.y.
    const Rational c = h.a * o.x + h.b - o.y;
    if (sgn(c) == 0) throw BoundaryThroughOrigin("boundary " + std::to_string(i) + " passes through the witness");
    scene.points.push_back({-h.a / c, 1 / c});
    scene.source.push_back(i);
  }
  return scene;
}

namespace {

// Convex layers with collinear boundary points kept, peeled `depth` times.
// A point ranked among the top k in some direction has fewer than k points
// strictly beyond it, so it lies on one of the first k layers.
std::vector<std::size_t> outer_layers(const std::vector<Point>& pts, int depth) {
  std::vector<std::size_t> rest(pts.size());
  std::iota(rest.begin(), rest.end(), std::size_t{0});
  std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
  });
  std::vector<std::size_t> kept;
  for (int layer = 0; layer < depth && !rest.empty(); ++layer) {
    std::vector<bool> on(pts.size(), false);
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<std::size_t> chain;
      auto scan = [&](std::size_t i) {
        while (chain.size() >= 2 &&
               orientation(pts[chain[chain.size() - 2]], pts[chain.back()], pts[i]) ==
                   (pass == 0 ? Orientation::Right : Orientation::Left)) {
          chain.pop_back();
        }
        chain.push_back(i);
      };
      for (std::size_t i : rest) scan(i);
      for (std::size_t i : chain) on[i] = true;
    }
    std::vector<std::size_t> next;
    for (std::size_t i : rest) (on[i] ? kept : next).push_back(i);
    rest = std::move(next);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

std::vector<std::array<std::size_t, 3>> enumerate_point_hyperedges(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::array<std::size_t, 3>> out;
  if (n < 3) return out;
  if (n == 3) return {{0, 1, 2}};
  // The top three points in direction d only change when d is normal to a
  // pair among the top four; just past such a direction the order is "by d,
  // then along the pair".
  const auto cand = outer_layers(pts, 4);
  const std::size_t m = cand.size();
  // Ranking runs on doubles with an error bound; near ties fall back to exact keys.
  constexpr double kSlack = 64 * std::numeric_limits<double>::epsilon();
  constexpr double kFloor = 64 * std::numeric_limits<double>::min();
  std::vector<double> fx(m), fy(m);
  for (std::size_t k = 0; k < m; ++k) {
    fx[k] = pts[cand[k]].x.get_d();
    fy[k] = pts[cand[k]].y.get_d();
  }
  std::set<std::array<std::size_t, 3>> seen;
  std::vector<double> approx(m), slack(m);
  std::vector<std::optional<std::pair<Rational, Rational>>> exact(m);
  std::vector<std::size_t> idx(m);
  for (std::size_t ci = 0; ci < m; ++ci) {
    for (std::size_t cj = ci + 1; cj < m; ++cj) {
      const Point& pi = pts[cand[ci]];
      const Point& pj = pts[cand[cj]];
      const Rational dx = pj.x - pi.x;
      const Rational dy = pj.y - pi.y;
      const double fdx = fx[cj] - fx[ci], fdy = fy[cj] - fy[ci];
      const double adx = std::abs(fx[cj]) + std::abs(fx[ci]), ady = std::abs(fy[cj]) + std::abs(fy[ci]);
      for (int s : {1, -1}) {
        for (int t : {1, -1}) {
          for (std::size_t k = 0; k < m; ++k) {
            approx[k] = s * (fdx * fy[k] - fdy * fx[k]);
            slack[k] = kSlack * (adx * std::abs(fy[k]) + ady * std::abs(fx[k])) + kFloor;
            exact[k].reset();
          }
          auto exact_key = [&](std::size_t k) -> const std::pair<Rational, Rational>& {
            if (!exact[k]) {
              const Point& pk = pts[cand[k]];
              exact[k].emplace(s * (dx * pk.y - dy * pk.x), t * (dx * pk.x + dy * pk.y));
            }
            return *exact[k];
          };
          auto before = [&](std::size_t a, std::size_t b) {
            const double gap = approx[a] - approx[b];
            if (gap > slack[a] + slack[b]) return true;
            if (-gap > slack[a] + slack[b]) return false;
            return exact_key(a) > exact_key(b);
          };
          std::iota(idx.begin(), idx.end(), std::size_t{0});
          std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(), before);
          std::array<std::size_t, 3> top{cand[idx[0]], cand[idx[1]], cand[idx[2]]};
          std::sort(top.begin(), top.end());
          if (seen.insert(top).second) out.push_back(top);
        }
      }
    }
  }
  return out;
}

namespace {

// Not-all-equal search over triples with unit propagation.
class TripleSearch {
public:
  TripleSearch(std::size_t n, const std::vector<std::array<std::size_t, 3>>& triples)
      : triples_(triples), watch_(n), value_(n) {
    for (std::size_t t = 0; t < triples.size(); ++t) {
      for (std::size_t v : triples[t]) watch_[v].push_back(t);
    }
  }

  bool run() { return search(0); }
  std::vector<Color> result() const {
    std::vector<Color> out;
    for (const auto& v : value_) out.push_back(v.value_or(Color::Blue));
    return out;
  }

private:
  const std::vector<std::array<std::size_t, 3>>& triples_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<std::optional<Color>> value_;
  std::vector<std::size_t> trail_;

  bool assign(std::size_t v, Color c) {
    std::vector<std::pair<std::size_t, Color>> queue{{v, c}};
    while (!queue.empty()) {
      auto [x, col] = queue.back();
      queue.pop_back();
      if (value_[x]) {
        if (*value_[x] != col) return false;
        continue;
      }
      value_[x] = col;
      trail_.push_back(x);
      for (std::size_t t : watch_[x]) {
        std::size_t same = 0;
        std::optional<std::size_t> open;
        for (std::size_t y : triples_[t]) {
          if (!value_[y]) {
            open = y;
          } else if (*value_[y] == col) {
            ++same;
          }
        }
        if (same == 3) return false;
        if (same == 2 && open) queue.emplace_back(*open, opposite(col));
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()].reset();
      trail_.pop_back();
    }
  }

  bool search(std::size_t from) {
    while (from < value_.size() && value_[from]) ++from;
    if (from == value_.size()) return true;
    for (Color c : {Color::Blue, Color::Red}) {
      const std::size_t mark = trail_.size();
      if (assign(from, c) && search(from + 1)) return true;
      undo(mark);
    }
    return false;
  }
};

}  // namespace

std::vector<Color> color_points_vs_halfplanes(const std::vector<Point>& pts) {
  const auto triples = enumerate_point_hyperedges(pts);
  TripleSearch search(pts.size(), triples);
  if (!search.run()) throw InternalError("no 2-coloring of the point triples exists");
  return search.result();
}

Coloring uncovered_solve(const Instance& inst, const Point& o) {
  Coloring out;
  out.colors.assign(inst.size(), Color::Blue);
  if (inst.size() < 3) return out;
  const PolarScene scene = polarize(inst, o);
  const auto colors = color_points_vs_halfplanes(scene.points);
  for (std::size_t k = 0; k < colors.size(); ++k) out.colors[scene.source[k]] = colors[k];
  return out;
}

}  // namespace hpcolor
