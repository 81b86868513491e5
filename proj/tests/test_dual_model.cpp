#include "hpcolor/dual_model.hpp"
#include "hpcolor/verification.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace hpcolor;
using namespace hpcolor::test;

namespace {

std::vector<Point> tip_points(const std::vector<Tip>& tips) {
  std::vector<Point> out;
  for (const auto& t : tips) out.push_back(t.pt);
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  return out;
}

Instance random_small(std::mt19937_64& rng, std::size_t n, long range) {
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    inst.halfplanes.push_back({Rational(static_cast<long>(rng() % (2 * range + 1)) - range),
                               Rational(static_cast<long>(rng() % (2 * range + 1)) - range),
                               rng() % 2 ? Side::Upper : Side::Lower});
  }
  return inst;
}

std::vector<Point> crossings(const Instance& inst) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.size(); ++j) {
      const auto& a = inst.halfplanes[i];
      const auto& b = inst.halfplanes[j];
      if (a.a == b.a) continue;
      const Rational x = (b.b - a.b) / (a.a - b.a);
      out.push_back({x, a.a * x + a.b});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("half-plane membership is closed") {
  const HalfPlane h = up("1", "0");
  CHECK(h.contains(pt(1, 1)));
  CHECK(h.contains(pt(1, 0)));
  CHECK_FALSE(h.contains(pt(1, 2)));
  CHECK(low("1", "0").contains(pt(1, 2)));
}

TEST_CASE("general position report") {
  CHECK(validate(three_triangle()).clean());

  const Instance parallel{{up("1", "0"), low("1", "3")}};
  const auto rp = validate(parallel);
  CHECK(rp.parallel.size() == 1);
  CHECK(rp.duplicates.empty());

  const Instance star{{up("1", "0"), up("-1", "0"), low("0", "0")}};
  const auto rs = validate(star);
  REQUIRE(rs.concurrent.size() == 1);
  CHECK(rs.concurrent[0] == std::vector<std::size_t>{0, 1, 2});

  const Instance dup{{up("2", "1"), up("2", "1")}};
  CHECK(validate(dup).duplicates.size() == 1);
}

TEST_CASE("perturbation") {
  const Instance clean = three_triangle();
  CHECK(perturb(clean, 0) == clean);

  const Instance parallel{{up("1", "0"), low("1", "3")}};
  const Instance p = perturb(parallel, 0);
  CHECK(p.halfplanes[0].a != p.halfplanes[1].a);

  const Instance star{{up("1", "0"), up("-1", "0"), low("0", "0")}};
  for (int attempt = 0; attempt < 4; ++attempt) CHECK(validate(perturb(star, attempt)).clean());
}

TEST_CASE("perturbation keeps every covering set at arrangement vertices") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 300; ++round) {
    const Instance inst = random_small(rng, 3 + rng() % 6, 3);
    for (int attempt = 0; attempt < 3; ++attempt) {
      const Instance moved = perturb(inst, attempt);
      REQUIRE(validate(moved).clean());
      for (const auto& v : crossings(inst)) {
        for (std::size_t i = 0; i < inst.size(); ++i) {
          if (inst.halfplanes[i].contains(v)) CHECK(moved.halfplanes[i].contains(v));
        }
      }
    }
  }
}

TEST_CASE("dualize maps boundaries to tips") {
  const DualScene scene = dualize(three_triangle());
  CHECK(tip_points(scene.tips_u) == std::vector<Point>{pt(-1, 0), pt(1, 2)});
  CHECK(tip_points(scene.tips_l) == std::vector<Point>{pt(0, 0)});
  CHECK(dualize(Instance{}).size() == 0);
  CHECK_THROWS_AS(dualize(Instance{{up("1", "0"), low("1", "3")}}), GeneralPositionViolation);

  // (0,-1) lies in y <= 0, and its dual line y = -1 passes the tip (0,0) below.
  const HalfPlane h = up("0", "0");
  CHECK(h.contains(pt(0, -1)));
  CHECK(ray_meets(dual_point(h), h.side, dual_line(pt(0, -1))));
}

TEST_CASE("axis flips") {
  const DualScene scene = dualize(three_triangle());
  const DualScene twice = x_flip(x_flip(scene));
  CHECK(twice.tips_u == scene.tips_u);
  CHECK(twice.tips_l == scene.tips_l);
  CHECK(twice.transform_log.size() == 2);

  const DualScene yf = y_flip(scene);
  CHECK(tip_points(yf.tips_u) == std::vector<Point>{pt(0, 0)});
  CHECK(tip_points(yf.tips_l) == std::vector<Point>{pt(-1, 0), pt(1, -2)});
  CHECK(yf.transform_log == std::vector<Transform>{Transform::YFlip});

  const DualScene xf = x_flip(scene);
  const auto before = tip_points(scene.tips_u);
  const auto after = tip_points(xf.tips_u);
  CHECK(after.front().x == -before.back().x);
}

TEST_CASE("pull back undoes color swaps only") {
  const Coloring c = colors({Color::Blue, Color::Red, Color::Red});
  CHECK(pull_back(c, {}) == c);
  CHECK(pull_back(c, {Transform::ColorSwap}) == colors({Color::Red, Color::Blue, Color::Blue}));
  CHECK(pull_back(c, {Transform::XFlip, Transform::ColorSwap, Transform::XFlip}) ==
        colors({Color::Red, Color::Blue, Color::Blue}));
  CHECK(pull_back(c, {Transform::ColorSwap, Transform::YFlip, Transform::ColorSwap}) == c);
}

TEST_CASE("duality incidence on random pairs") {
  std::mt19937_64 rng(1);
  auto r = [&](long span, long den) {
    return frac(static_cast<long>(rng() % (2 * span + 1)) - span, 1 + static_cast<long>(rng() % den));
  };
  int inside = 0;
  for (int i = 0; i < 20000; ++i) {
    const HalfPlane h{r(20, 4), r(20, 4), rng() % 2 ? Side::Upper : Side::Lower};
    const Point p{r(20, 4), r(60, 4)};
    const bool primal = h.contains(p);
    inside += primal;
    CHECK(primal == ray_meets(dual_point(h), h.side, dual_line(p)));
  }
  CHECK(inside > 0);
}
