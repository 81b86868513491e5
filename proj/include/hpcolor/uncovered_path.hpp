#pragma once

// Instances that leave some point of the plane uncovered. The uncovered point
// is moved to the origin, each boundary <u, x> = 1 becomes the point u, and
// the half-planes become the point sets {u : <p, u> >= 1}. A coloring of the
// points in which every half-plane holding three or more of them sees both
// colors is then a good coloring of the half-planes.

#include "hpcolor/dual_model.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace hpcolor {

class NotActuallyUncovered : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class BoundaryThroughOrigin : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Dual point of a separating line; checked against every half-plane.
Point uncovered_witness(const Instance& inst, const Line& separating);

struct PolarScene {
  Point origin_shift;  ///< the uncovered witness
  std::vector<Point> points;
  std::vector<std::size_t> source;
};

PolarScene polarize(const Instance& inst, const Point& o);

/// Three-point sets cut off by a closed half-plane. Every closed half-plane
/// holding three or more points (in general position) contains one of them,
/// so they are the only constraints a 2-coloring has to meet.
std::vector<std::array<std::size_t, 3>> enumerate_point_hyperedges(const std::vector<Point>& pts);

/// First coloring in blue-before-red order meeting every triple, by
/// backtracking with unit propagation. Throws InternalError when none exists.
std::vector<Color> color_points_vs_halfplanes(const std::vector<Point>& pts);

Coloring uncovered_solve(const Instance& inst, const Point& o);

}  // namespace hpcolor
