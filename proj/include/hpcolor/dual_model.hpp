#pragma once

// Half-plane instances, general-position repair, and the point/line duality
// that turns half-planes into vertical rays.
//
// Duality convention: a primal point (c, d) maps to the line y = c*x + d, and
// a boundary y = a*x + b maps to the tip (-a, b). Upper half-planes
// (y <= a*x + b) get downward rays, lower half-planes get upward rays. Under
// this map a point lies in a half-plane exactly when its dual line meets the
// half-plane's ray.

#include "hpcolor/geom_kernel.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hpcolor {

/// An algorithm left its expected path or an asserted implication failed.
class InternalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Side : std::uint8_t { Upper, Lower };

struct HalfPlane {
  Rational a;  ///< boundary slope
  Rational b;  ///< boundary intercept
  Side side = Side::Upper;

  Line boundary() const { return {a, b}; }
  bool contains(const Point& pt) const;

  friend bool operator==(const HalfPlane& l, const HalfPlane& r) {
    return l.a == r.a && l.b == r.b && l.side == r.side;
  }
};

struct Instance {
  std::vector<HalfPlane> halfplanes;

  std::size_t size() const { return halfplanes.size(); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class Color : std::uint8_t { Blue, Red };

inline Color opposite(Color c) { return c == Color::Blue ? Color::Red : Color::Blue; }

struct Coloring {
  std::vector<Color> colors;

  std::size_t size() const { return colors.size(); }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

struct GeneralPositionReport {
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;
  std::vector<std::pair<std::size_t, std::size_t>> parallel;
  /// Each entry lists every boundary through one common point (three or more).
  std::vector<std::vector<std::size_t>> concurrent;

  bool clean() const { return duplicates.empty() && parallel.empty() && concurrent.empty(); }
};

GeneralPositionReport validate(const Instance& inst);

/// Deterministic exact perturbation into general position. Attempt 0 on an
/// instance already in general position is the identity. Otherwise every
/// half-plane is pushed outward by a tiny margin and its boundary is tilted by
/// an index-keyed amount far below that margin, so every point of the original
/// plane keeps its covering set; finer attempts shrink both.
Instance perturb(const Instance& inst, int attempt);

struct Tip {
  Point pt;
  std::size_t source = 0;  ///< index of the half-plane in the instance

  friend bool operator==(const Tip&, const Tip&) = default;
};

enum class Transform : std::uint8_t { XFlip, YFlip, ColorSwap };

struct DualScene {
  std::vector<Tip> tips_u;  ///< downward rays
  std::vector<Tip> tips_l;  ///< upward rays
  std::vector<Transform> transform_log;

  std::size_t size() const { return tips_u.size() + tips_l.size(); }
};

Point dual_point(const HalfPlane& h);
Line dual_line(const Point& primal);

/// Whether a non-vertical line meets the vertical ray of a tip.
inline bool ray_meets(const Point& tip, Side side, const Line& ln) {
  const auto s = side_of_line(tip, ln);
  return side == Side::Upper ? s != LineSide::Below : s != LineSide::Above;
}

/// Throws GeneralPositionViolation when two half-planes have equal slopes
/// (their tips would share an x-coordinate).
DualScene dualize(const Instance& inst);

DualScene x_flip(DualScene scene);
DualScene y_flip(DualScene scene);

/// Re-expresses a coloring computed on a transformed scene for the original
/// indices. Flips are color-neutral; every ColorSwap inverts all entries.
Coloring pull_back(Coloring coloring, const std::vector<Transform>& log);

}  // namespace hpcolor
