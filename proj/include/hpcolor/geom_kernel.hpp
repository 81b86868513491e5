#pragma once

// Exact rational 2D primitives. Every decision is made on exact signs; there
// is no floating point anywhere in this header's predicates.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpcolor {

using Rational = mpq_class;

int sign(const Rational& value);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& value);

class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DuplicateX : public GeometryError {
public:
  using GeometryError::GeometryError;
};

class OutOfSpan : public GeometryError {
public:
  using GeometryError::GeometryError;
};

class DegenerateTangent : public GeometryError {
public:
  using GeometryError::GeometryError;
};

class DegenerateTriangle : public GeometryError {
public:
  using GeometryError::GeometryError;
};

/// Raised when an engine path meets a collinear triple, a shared x-coordinate
/// or a parallel pair that general position rules out.
class GeneralPositionViolation : public GeometryError {
public:
  using GeometryError::GeometryError;
};

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

/// Non-vertical line y = slope * x + intercept.
struct Line {
  Rational slope;
  Rational intercept;

  /// Line through two points with distinct x. Throws GeneralPositionViolation otherwise.
  static Line through(const Point& p, const Point& q);

  Rational at(const Rational& x) const { return slope * x + intercept; }

  friend bool operator==(const Line& a, const Line& b) {
    return a.slope == b.slope && a.intercept == b.intercept;
  }
};

struct Segment {
  Point a;
  Point b;
};

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };
enum class LineSide { Below = -1, On = 0, Above = 1 };
enum class ChainSide { Upper, Lower };

Orientation orientation(const Point& p, const Point& q, const Point& r);
LineSide side_of_line(const Point& pt, const Line& ln);
bool segments_intersect(const Segment& s1, const Segment& s2);

/// x-sorted vertex chain of an upper (downward rays) or lower (upward rays) hull.
/// `source[i]` is the index of `vertices[i]` in the generating point set.
struct HullChain {
  ChainSide side = ChainSide::Upper;
  std::vector<Point> vertices;
  std::vector<std::size_t> source;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  const Rational& min_x() const { return vertices.front().x; }
  const Rational& max_x() const { return vertices.back().x; }
  bool spans(const Rational& x) const { return !empty() && min_x() <= x && x <= max_x(); }
};

struct HullLayers {
  std::vector<HullChain> layers;
  /// point index -> layer index
  std::vector<std::size_t> assignment;
};

/// Indices sorting the pointed-to values increasingly. Throws DuplicateX on ties.
std::vector<std::size_t> sort_values(std::span<const Rational* const> xs);
/// Indices of `pts` sorted by strictly increasing x. Throws DuplicateX on ties.
std::vector<std::size_t> sort_by_x(std::span<const Point> pts);

HullChain upper_hull(std::span<const Point> pts);
HullChain lower_hull(std::span<const Point> pts);

/// Monotone scan over a precomputed x-order restricted to `order`.
HullChain hull_of_sorted(std::span<const Point> pts, std::span<const std::size_t> order,
                         ChainSide side);

HullLayers hull_layers(std::span<const Point> pts, ChainSide side);

/// Exact y of the chain boundary at x. Throws OutOfSpan.
Rational chain_eval(const HullChain& chain, const Rational& x);

/// Closed membership in the hull region (rays included).
bool region_contains(const HullChain& chain, const Point& pt);

enum class TangentPick { TowardRight, TowardLeft };

struct Tangent {
  Line line;
  std::size_t touch = 0;               ///< chain vertex index on the line
  std::optional<std::size_t> touch2;   ///< second vertex when the line contains an edge
};

/// Tangent through q whose touching vertex lies right (or left) of q, with the
/// whole chain weakly on its region side. Throws DegenerateTangent when q is
/// inside the region or no tangent of the requested kind exists.
Tangent tangent_from_point(const Point& q, const HullChain& chain,
                           TangentPick pick = TangentPick::TowardRight);

/// Strict interior test. Throws DegenerateTriangle when a, b, c are collinear.
bool point_in_triangle_interior(const Point& pt, const Point& a, const Point& b, const Point& c);

}  // namespace hpcolor
