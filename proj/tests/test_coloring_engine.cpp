#include "hpcolor/coloring_engine.hpp"
#include "hpcolor/verification.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace hpcolor;
using namespace hpcolor::test;

namespace {

// Half-planes whose dual tips are exactly the given points.
Instance from_tips(const std::vector<Point>& u, const std::vector<Point>& l) {
  Instance inst;
  for (const auto& t : u) inst.halfplanes.push_back({-t.x, t.y, Side::Upper});
  for (const auto& t : l) inst.halfplanes.push_back({-t.x, t.y, Side::Lower});
  return inst;
}

std::optional<PivotConfig> pivot_at(const Instance& inst, const Point& p, const std::optional<Point>& l_u) {
  for (const auto& c : pivot_candidates(dualize(inst))) {
    if (c.frame().swapped || !(c.pu()[c.p] == p)) continue;
    if (l_u.has_value() != c.l_u.has_value()) continue;
    if (l_u && !(c.pu()[*c.l_u] == *l_u)) continue;
    return c;
  }
  return std::nullopt;
}

Color color_of(const Coloring& c, const Instance& inst, const HalfPlane& h) {
  const auto it = std::find(inst.halfplanes.begin(), inst.halfplanes.end(), h);
  REQUIRE(it != inst.halfplanes.end());
  return c.colors[static_cast<std::size_t>(it - inst.halfplanes.begin())];
}

Color tip_color(const Coloring& c, const Instance& inst, const Point& tip, Side side) {
  return color_of(c, inst, HalfPlane{-tip.x, tip.y, side});
}

bool good(const Instance& inst, const Coloring& c) { return !verify(inst, c).has_value(); }

long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::size_t tag_count(const std::vector<std::string>& trace) {
  return static_cast<std::size_t>(std::count_if(trace.begin(), trace.end(), [](const std::string& s) {
    return s == "A" || s == "B" || s == "C" || s == "D" || s == "S";
  }));
}

}  // namespace

TEST_CASE("coverage") {
  const DualScene tri = dualize(three_triangle());
  const Coverage cov = coverage(tri);
  REQUIRE(cov.covered);
  std::vector<Point> u, l;
  for (const auto& t : tri.tips_u) u.push_back(t.pt);
  for (const auto& t : tri.tips_l) l.push_back(t.pt);
  CHECK(region_contains(upper_hull(u), cov.witness));
  CHECK(region_contains(lower_hull(l), cov.witness));

  const Instance apart = from_tips({pt(0, 0), pt(2, 0)}, {pt(1, 10)});
  const Coverage sep = coverage(dualize(apart));
  REQUIRE_FALSE(sep.covered);
  CHECK(side_of_line(pt(0, 0), sep.separator) == LineSide::Below);
  CHECK(side_of_line(pt(2, 0), sep.separator) == LineSide::Below);
  CHECK(side_of_line(pt(1, 10), sep.separator) == LineSide::Above);

  CHECK_FALSE(coverage(dualize(from_tips({pt(0, 0), pt(1, 3)}, {}))).covered);
  CHECK_FALSE(coverage(dualize(from_tips({}, {pt(0, 0)}))).covered);
  // Disjoint spans are separated by a steep line.
  CHECK_FALSE(coverage(dualize(from_tips({pt(0, 0)}, {pt(1, -50)}))).covered);
}

TEST_CASE("coverage agrees with primal uncovered points") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 500; ++round) {
    Instance inst;
    std::vector<long> slopes;
    while (inst.size() < 2 + rng() % 7) {
      const long a = draw(rng, -12, 12);
      if (std::find(slopes.begin(), slopes.end(), a) != slopes.end()) continue;
      slopes.push_back(a);
      inst.halfplanes.push_back({Rational(a), Rational(draw(rng, -12, 12)), rng() % 2 ? Side::Upper : Side::Lower});
    }
    const Coverage cov = coverage(dualize(inst));
    if (!cov.covered) {
      const Point o{cov.separator.slope, cov.separator.intercept};
      CHECK(depth(inst, o).depth == 0);
    } else {
      for (const auto& s : arrangement_samples(inst)) CHECK(depth(inst, s).depth > 0);
    }
  }
}

TEST_CASE("pivot search") {
  const DualScene tri = dualize(three_triangle());
  const PivotConfig c = find_pivot(tri);
  CHECK(c.pu()[c.p] == pt(0, 0));
  CHECK(c.pu().size() == 1);
  CHECK(classify(c) == CaseTag::SingletonU);

  const Instance single = from_tips({pt(0, 10)}, {pt(-1, 0), pt(1, 0)});
  const PivotConfig s = find_pivot(dualize(single));
  CHECK(s.pu()[s.p] == pt(0, 10));
  CHECK(std::set<long>{s.pl()[s.l_l].x.get_num().get_si(), s.pl()[s.r_l].x.get_num().get_si()} == std::set<long>{-1, 1});
  CHECK(classify(s) == CaseTag::SingletonU);
  CHECK_FALSE(verify(single, color_pivot(s)).has_value());

  CHECK_THROWS_AS(find_pivot(dualize(from_tips({pt(0, 0), pt(2, 0)}, {pt(1, 10)}))), InternalError);
}

TEST_CASE("case classification") {
  // h is the line through l_U = (-4,9) and p = (0,10).
  const Point p = pt(0, 10), lu = pt(-4, 9);
  struct Example {
    Point l_l, r_l;
    CaseTag want;
  };
  const Example examples[] = {
      {pt(-1, 0), pt(1, 11), CaseTag::A},   // r_L above h
      {pt(-5, 0), pt(1, -1), CaseTag::B},   // no crossing, l_L left of l_U
      {pt(-2, 12), pt(3, -20), CaseTag::C}, // l_L r_L crosses l_U p
      {pt(-2, 8), pt(3, -20), CaseTag::D},  // no crossing, l_L right of l_U
  };
  for (const auto& ex : examples) {
    const Instance inst = from_tips({lu, p}, {ex.l_l, ex.r_l});
    const auto cfg = pivot_at(inst, p, lu);
    REQUIRE(cfg.has_value());
    CHECK(cfg->pl()[cfg->l_l] == ex.l_l);
    CHECK(cfg->pl()[cfg->r_l] == ex.r_l);
    CHECK(classify(*cfg) == ex.want);
  }
}

TEST_CASE("case A colors the pivot triple blue") {
  const Point p = pt(0, 10), lu = pt(-4, 9), ll = pt(-1, 0), rl = pt(1, 11), far = pt(2, 30);
  for (bool extra : {false, true}) {
    std::vector<Point> lower{ll, rl};
    if (extra) lower.push_back(far);
    const Instance inst = from_tips({lu, p}, lower);
    const auto cfg = pivot_at(inst, p, lu);
    REQUIRE(cfg.has_value());
    REQUIRE(classify(*cfg) == CaseTag::A);
    std::vector<std::string> trace;
    const Coloring c = color_pivot(*cfg, &trace);
    CHECK(trace.front() == "A");
    CHECK(tip_color(c, inst, p, Side::Upper) == Color::Blue);
    CHECK(tip_color(c, inst, ll, Side::Lower) == Color::Blue);
    CHECK(tip_color(c, inst, rl, Side::Lower) == Color::Blue);
    CHECK(tip_color(c, inst, lu, Side::Upper) == Color::Red);
    if (extra) CHECK(tip_color(c, inst, far, Side::Lower) == Color::Red);
    CHECK(std::count(c.colors.begin(), c.colors.end(), Color::Blue) == 3);
    CHECK(good(inst, c));
  }
}

TEST_CASE("separated step, both lines clear") {
  const Point lu = pt(-2, 9), p = pt(0, 10), q = pt(1, 5), rl = pt(3, 7);
  const Instance inst = from_tips({lu, p}, {q, rl});
  const Frame fr = Frame::from_scene(dualize(inst));
  Painter paint(inst.size());
  CHECK(obs_separated(fr, 1, 0, paint) == ObsBranch::Both);
  const Coloring c = paint.finish();
  CHECK(tip_color(c, inst, p, Side::Upper) == Color::Blue);
  CHECK(tip_color(c, inst, q, Side::Lower) == Color::Red);
  CHECK(tip_color(c, inst, lu, Side::Upper) == Color::Red);
  CHECK(tip_color(c, inst, rl, Side::Lower) == Color::Blue);
  CHECK(good(inst, c));
}

TEST_CASE("separated step, l' crosses l_U p") {
  const Point lu = pt(-2, -3), p = pt(0, 10), q = pt(1, 5), rl = pt(3, 7), beyond = pt(6, 20);
  const Instance inst = from_tips({lu, p}, {q, rl, beyond});
  const Frame fr = Frame::from_scene(dualize(inst));
  Painter paint(inst.size());
  CHECK(obs_separated(fr, 1, 0, paint) == ObsBranch::Left);
  const Coloring c = paint.finish();
  CHECK(tip_color(c, inst, p, Side::Upper) == Color::Blue);
  CHECK(tip_color(c, inst, q, Side::Lower) == Color::Red);
  CHECK(tip_color(c, inst, lu, Side::Upper) == Color::Red);
  CHECK(tip_color(c, inst, beyond, Side::Lower) == Color::Red);
  // No second lower layer: the tangent rule leaves r_L blue.
  CHECK(tip_color(c, inst, rl, Side::Lower) == Color::Blue);
  CHECK(good(inst, c));
}

TEST_CASE("separated step without l_U") {
  const Point p = pt(0, 10), q = pt(1, 5), rl = pt(3, 7), beyond = pt(5, 12);
  const Instance inst = from_tips({p}, {q, rl, beyond});
  const Frame fr = Frame::from_scene(dualize(inst));
  Painter paint(inst.size());
  CHECK(obs_separated(fr, 0, 0, paint) == ObsBranch::Left);
  const Coloring c = paint.finish();
  CHECK(tip_color(c, inst, p, Side::Upper) == Color::Blue);
  CHECK(tip_color(c, inst, q, Side::Lower) == Color::Red);
  CHECK(good(inst, c));
}

TEST_CASE("separated step rejects q above l") {
  // q sits above the line through l_U and p, which the step assumes away.
  const Instance inst = from_tips({pt(-2, 1), pt(0, 0)}, {pt(1, 5), pt(3, 6)});
  const Frame fr = Frame::from_scene(dualize(inst));
  Painter paint(inst.size());
  CHECK_THROWS_AS(obs_separated(fr, 1, 0, paint), InternalError);
}

TEST_CASE("separated step keeps deleted tips and preset colors") {
  const Point lu = pt(-2, 9), p = pt(0, 10), q = pt(1, 5), mid = pt(2, 5), rl = pt(3, 7);
  const Instance inst = from_tips({lu, p}, {q, mid, rl});
  const Frame fr = Frame::from_scene(dualize(inst));
  Painter paint(inst.size());
  const std::size_t mid_src = 3;
  paint.set(fr, mid_src, Color::Red);
  obs_separated(fr, 1, 0, paint, {}, {false, true, false});
  CHECK(paint.finish().colors[mid_src] == Color::Red);
}

TEST_CASE("separated step on random configurations") {
  std::mt19937_64 rng(67);
  std::map<ObsBranch, int> branches;
  int red_rl = 0, blue_rl = 0, runs = 0;
  while (runs < 3000) {
    std::vector<Point> u, l;
    std::set<long> xs;
    const std::size_t nu = 1 + rng() % 4, nl = 1 + rng() % 6;
    while (u.size() < nu) {
      const long x = draw(rng, -20, -1);
      if (xs.insert(x).second) u.push_back(pt(x, draw(rng, -30, 30)));
    }
    while (l.size() < nl) {
      const long x = draw(rng, 1, 20);
      if (xs.insert(x).second) l.push_back(pt(x, draw(rng, -30, 30)));
    }
    const Instance inst = from_tips(u, l);
    if (!validate(inst).clean()) continue;
    const Frame fr = Frame::from_scene(dualize(inst));
    Painter paint(inst.size());
    ObsBranch b;
    try {
      b = obs_separated(fr, fr.u.size() - 1, 0, paint);
    } catch (const InternalError&) {
      continue;  // the pair is not separated in the required sense
    }
    ++runs;
    ++branches[b];
    const Coloring c = paint.finish();
    CHECK(good(inst, c));
    const auto hull = lower_hull(fr.l);
    if (b == ObsBranch::Left && hull.size() > 1) {
      (c.colors[fr.src_l[hull.source[1]]] == Color::Red ? red_rl : blue_rl)++;
    }
  }
  CHECK(branches[ObsBranch::Both] > 0);
  CHECK(branches[ObsBranch::Left] > 0);
  CHECK(branches[ObsBranch::Mirrored] > 0);
  CHECK(red_rl > 0);
  CHECK(blue_rl > 0);
}

TEST_CASE("pivots on covered scenes") {
  std::mt19937_64 rng(71);
  int checked = 0;
  while (checked < 2000) {
    Instance inst;
    std::set<long> slopes;
    const std::size_t n = 3 + rng() % 14;
    while (inst.size() < n) {
      const long a = draw(rng, -40, 40);
      if (!slopes.insert(a).second) continue;
      const bool upper = rng() % 2;
      const long b = draw(rng, 0, 40) + 1;
      inst.halfplanes.push_back({Rational(a), Rational(upper ? b : -b), upper ? Side::Upper : Side::Lower});
    }
    if (!validate(inst).clean()) continue;
    const DualScene scene = dualize(inst);
    if (!coverage(scene).covered) continue;
    ++checked;
    const PivotConfig c = find_pivot(scene);
    const auto upper = upper_hull(c.pu());
    const auto lower = lower_hull(c.pl());
    CHECK(std::find(upper.source.begin(), upper.source.end(), c.p) != upper.source.end());
    CHECK(region_contains(lower, c.pu()[c.p]));
    if (c.pu().size() > 1) CHECK(c.l_u.has_value());
    CHECK_NOTHROW(classify(c));
    CHECK(c.pl()[c.l_l].x < c.pu()[c.p].x);
    CHECK(c.pu()[c.p].x < c.pl()[c.r_l].x);
  }
}

TEST_CASE("mirrored frames match a fresh build") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 500; ++round) {
    Instance inst;
    std::set<long> slopes;
    const std::size_t n = 2 + rng() % 20;
    while (inst.size() < n) {
      const long a = draw(rng, -30, 30);
      if (!slopes.insert(a).second) continue;
      const bool upper = rng() % 2;
      inst.halfplanes.push_back({Rational(a), Rational(draw(rng, -30, 30)), upper ? Side::Upper : Side::Lower});
    }
    const OrientedFrame base(Frame::from_scene(dualize(inst)));
    for (const OrientedFrame& m : {base.x_flipped(), base.y_flipped(), base.x_flipped().y_flipped()}) {
      const OrientedFrame fresh(m.frame);
      CHECK(m.hull_u == fresh.hull_u);
      CHECK(m.hull_l == fresh.hull_l);
      CHECK(m.approx_u == fresh.approx_u);
      CHECK(m.approx_l == fresh.approx_l);
    }
  }
}

TEST_CASE("solve") {
  const Instance tri = three_triangle();
  const Coloring c = solve(tri);
  CHECK(std::count(c.colors.begin(), c.colors.end(), Color::Blue) % 3 != 0);
  CHECK(good(tri, c));

  CHECK(solve(Instance{{up("1", "2")}}) == colors({Color::Blue}));
  CHECK(solve(Instance{}).size() == 0);

  const SolveReport rep = solve_report(all_upper());
  CHECK_FALSE(rep.covered);
  CHECK(rep.case_path() == "uncovered");
  CHECK(good(all_upper(), rep.coloring));

  // Parallel pair and a concurrent triple go through the perturbation.
  const Instance messy{{up("1", "0"), low("1", "3"), up("-1", "0"), low("0", "0"), up("2", "0")}};
  CHECK(good(messy, solve(messy)));
}

TEST_CASE("case machine on fuzzed covered scenes") {
  std::mt19937_64 rng(73);
  std::map<std::string, int> first;
  for (int round = 0; round < 1500; ++round) {
    Instance inst;
    const std::size_t n = 3 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      inst.halfplanes.push_back({Rational(draw(rng, -25, 25)), Rational(draw(rng, -25, 25)),
                                 rng() % 2 ? Side::Upper : Side::Lower});
    }
    const SolveReport rep = solve_report(inst);
    CHECK(good(inst, rep.coloring));
    CHECK(rep.attempts >= 1);
    if (rep.covered) {
      CHECK(tag_count(rep.trace) >= 1);
      CHECK(tag_count(rep.trace) <= 7);
      first[rep.trace.front()]++;
    }
  }
  for (const char* tag : {"A", "B", "C", "D", "S"}) CHECK_MESSAGE(first[tag] > 0, tag);
}

TEST_CASE("attempt bound from the environment") {
  ::unsetenv("HPCOLOR_MAX_ATTEMPTS");
  CHECK(max_attempts_from_env() == 8);
  ::setenv("HPCOLOR_MAX_ATTEMPTS", "3", 1);
  CHECK(max_attempts_from_env() == 3);
  ::setenv("HPCOLOR_MAX_ATTEMPTS", "junk", 1);
  CHECK(max_attempts_from_env() == 8);
  ::unsetenv("HPCOLOR_MAX_ATTEMPTS");
}
