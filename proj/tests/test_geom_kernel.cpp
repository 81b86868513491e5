#include "hpcolor/geom_kernel.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace hpcolor;
using namespace hpcolor::test;

namespace {

std::vector<Point> vertices(const HullChain& c) { return c.vertices; }

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, long range) {
  std::vector<Point> pts;
  std::vector<long> xs;
  while (pts.size() < n) {
    const long x = static_cast<long>(rng() % (2 * range + 1)) - range;
    if (std::find(xs.begin(), xs.end(), x) != xs.end()) continue;
    xs.push_back(x);
    pts.push_back({Rational(x),
                   frac(static_cast<long>(rng() % (2 * range + 1)) - range, 1 + static_cast<long>(rng() % 5))});
  }
  return pts;
}

}  // namespace

TEST_CASE("orientation signs") {
  CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == Orientation::Left);
  CHECK(orientation(pt(0, 0), pt(1, 0), pt(2, 0)) == Orientation::Collinear);
  CHECK(orientation(pt(0, 0), pt(1, 1), pt(2, 1)) == Orientation::Right);
}

TEST_CASE("orientation agrees between small and large coordinates") {
  const Rational big = Rational(1) << 80;
  CHECK(orientation({big, 0}, {big + 1, 0}, {big, 1}) == Orientation::Left);
  CHECK(orientation(pt("1/3", "0"), pt("2/3", "1/3"), pt("1", "2/3")) == Orientation::Collinear);
}

TEST_CASE("side of line") {
  const Line diag{1, 0};
  CHECK(side_of_line(pt(0, 5), diag) == LineSide::Above);
  CHECK(side_of_line(pt(3, 3), diag) == LineSide::On);
  CHECK(side_of_line(pt(1, -2), Line{-1, 2}) == LineSide::Below);
}

TEST_CASE("closed segment intersection") {
  CHECK(segments_intersect({pt(0, 0), pt(2, 2)}, {pt(0, 2), pt(2, 0)}));
  CHECK_FALSE(segments_intersect({pt(0, 0), pt(1, 0)}, {pt(2, 0), pt(3, 0)}));
  CHECK(segments_intersect({pt(0, 0), pt(2, 2)}, {pt(1, 1), pt(5, 0)}));
  CHECK(segments_intersect({pt(0, 0), pt(2, 0)}, {pt(1, 0), pt(3, 0)}));
}

TEST_CASE("hull chains") {
  const std::vector<Point> single{pt(0, 0)};
  CHECK(vertices(upper_hull(single)) == single);
  const std::vector<Point> tent{pt(-1, 0), pt(0, 10), pt(1, 0)};
  CHECK(vertices(upper_hull(tent)) == tent);
  CHECK(vertices(lower_hull(tent)) == std::vector<Point>{pt(-1, 0), pt(1, 0)});
  CHECK(lower_hull(tent).source == std::vector<std::size_t>{0, 2});
  CHECK_THROWS_AS(upper_hull(std::vector<Point>{pt(0, 0), pt(0, 1)}), DuplicateX);
}

TEST_CASE("hull layers peel the set") {
  const std::vector<Point> tri{pt(0, 0), pt(1, -5), pt(2, 1)};
  CHECK(hull_layers(tri, ChainSide::Lower).layers.size() == 1);

  // Shared x-coordinates are rejected, so the diamond is offset slightly.
  const std::vector<Point> diamond{pt(-2, 0), pt(2, 0), pt("1/10", "1"), pt(0, -1)};
  const auto layers = hull_layers(diamond, ChainSide::Lower);
  REQUIRE(layers.layers.size() == 2);
  CHECK(vertices(layers.layers[0]) == std::vector<Point>{pt(-2, 0), pt(0, -1), pt(2, 0)});
  CHECK(vertices(layers.layers[1]) == std::vector<Point>{pt("1/10", "1")});
  CHECK(layers.assignment == std::vector<std::size_t>{0, 0, 1, 0});

  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const auto pts = random_points(rng, 12, 30);
    const auto peeled = hull_layers(pts, round % 2 ? ChainSide::Upper : ChainSide::Lower);
    std::size_t total = 0;
    for (const auto& layer : peeled.layers) total += layer.size();
    CHECK(total == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& layer = peeled.layers[peeled.assignment[i]];
      CHECK(std::find(layer.source.begin(), layer.source.end(), i) != layer.source.end());
    }
  }
}

TEST_CASE("chain evaluation") {
  HullChain two{ChainSide::Upper, {pt(-1, 0), pt(1, 2)}, {0, 1}};
  CHECK(chain_eval(two, 0) == 1);
  HullChain one{ChainSide::Upper, {pt(0, 0)}, {0}};
  CHECK(chain_eval(one, 0) == 0);
  HullChain tent{ChainSide::Upper, {pt(-1, 0), pt(0, 10), pt(1, 0)}, {0, 1, 2}};
  CHECK(chain_eval(tent, q("1/2")) == 5);
  CHECK_THROWS_AS(chain_eval(tent, 2), OutOfSpan);
}

TEST_CASE("hull region membership") {
  HullChain upper{ChainSide::Upper, {pt(-1, 0), pt(1, 2)}, {0, 1}};
  CHECK(region_contains(upper, pt(0, 0)));
  CHECK(region_contains(upper, pt(0, 1)));
  CHECK_FALSE(region_contains(upper, pt(0, 2)));
  HullChain ray{ChainSide::Lower, {pt(0, 0)}, {0}};
  CHECK(region_contains(ray, pt(0, 5)));
  CHECK_FALSE(region_contains(ray, pt(1, 5)));
}

TEST_CASE("tangent from an outside point") {
  // The chain must end up weakly above the tangent, which pins the touch to (2,1).
  HullChain flat{ChainSide::Lower, {pt(0, 1), pt(2, 1)}, {0, 1}};
  const Tangent t = tangent_from_point(pt(-2, 0), flat);
  for (const auto& v : flat.vertices) CHECK(side_of_line(v, t.line) != LineSide::Below);
  CHECK(flat.vertices[t.touch] == pt(2, 1));

  HullChain single{ChainSide::Lower, {pt(0, 0)}, {0}};
  const Tangent s = tangent_from_point(pt(-1, -3), single);
  CHECK(s.touch == 0);
  CHECK(side_of_line(pt(0, 0), s.line) == LineSide::On);
  CHECK(side_of_line(pt(-1, -3), s.line) == LineSide::On);

  CHECK_THROWS_AS(tangent_from_point(pt(1, 5), flat), DegenerateTangent);

  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    const auto pts = random_points(rng, 10, 40);
    const bool upper_side = round % 2 == 0;
    const HullChain chain = upper_side ? upper_hull(pts) : lower_hull(pts);
    const Rational qx = chain.min_x() - 1 - static_cast<long>(rng() % 5);
    const Rational qy = upper_side ? Rational(200) : Rational(-200);
    const Tangent tan = tangent_from_point({qx, qy}, chain);
    for (const auto& v : chain.vertices) {
      const auto side = side_of_line(v, tan.line);
      CHECK(side != (upper_side ? LineSide::Above : LineSide::Below));
    }
    CHECK(side_of_line(chain.vertices[tan.touch], tan.line) == LineSide::On);
  }
}

TEST_CASE("strict triangle interior") {
  CHECK(point_in_triangle_interior(pt(1, 1), pt(0, 0), pt(3, 0), pt(0, 3)));
  CHECK_FALSE(point_in_triangle_interior(pt(0, 0), pt(0, 0), pt(3, 0), pt(0, 3)));
  CHECK_FALSE(point_in_triangle_interior(pt(1, 1), pt(0, 0), pt(2, 0), pt(2, 2)));
  CHECK_THROWS_AS(point_in_triangle_interior(pt(1, 1), pt(0, 0), pt(1, 0), pt(2, 0)), DegenerateTriangle);
}

TEST_CASE("orientation is antisymmetric and translation invariant") {
  std::mt19937_64 rng(3);
  auto coord = [&] { return frac(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 97)); };
  for (int i = 0; i < 2000; ++i) {
    const Point a{coord(), coord()}, b{coord(), coord()}, c{coord(), coord()};
    const Point t{coord(), coord()};
    const auto o = orientation(a, b, c);
    CHECK(static_cast<int>(orientation(a, c, b)) == -static_cast<int>(o));
    CHECK(orientation({a.x + t.x, a.y + t.y}, {b.x + t.x, b.y + t.y}, {c.x + t.x, c.y + t.y}) == o);
  }
}

TEST_CASE("upper hull mirrors the lower hull of the reflection") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 100; ++round) {
    const auto pts = random_points(rng, 15, 50);
    std::vector<Point> mirrored;
    for (const auto& p : pts) mirrored.push_back({p.x, -p.y});
    const auto up_chain = upper_hull(pts);
    const auto low_chain = lower_hull(mirrored);
    REQUIRE(up_chain.size() == low_chain.size());
    for (std::size_t i = 0; i < up_chain.size(); ++i) {
      CHECK(up_chain.vertices[i].x == low_chain.vertices[i].x);
      CHECK(up_chain.vertices[i].y == -low_chain.vertices[i].y);
    }
  }
}
