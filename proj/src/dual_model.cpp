#include "hpcolor/dual_model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hpcolor {

bool HalfPlane::contains(const Point& pt) const {
  const Rational rhs = a * pt.x + b;
  return side == Side::Upper ? pt.y <= rhs : pt.y >= rhs;
}

GeneralPositionReport validate(const Instance& inst) {
  GeneralPositionReport report;
  const auto& hs = inst.halfplanes;
  const std::size_t n = hs.size();
  // Intersection point -> boundaries through it.
  std::map<std::pair<Rational, Rational>, std::set<std::size_t>> meets;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (hs[i] == hs[j]) {
        report.duplicates.emplace_back(i, j);
        continue;
      }
      if (hs[i].a == hs[j].a) {
        report.parallel.emplace_back(i, j);
        continue;
      }
      Rational x = (hs[j].b - hs[i].b) / (hs[i].a - hs[j].a);
      Rational y = hs[i].a * x + hs[i].b;
      auto& members = meets[{std::move(x), std::move(y)}];
      members.insert(i);
      members.insert(j);
    }
  }
  for (const auto& [pt, members] : meets) {
    if (members.size() >= 3) report.concurrent.emplace_back(members.begin(), members.end());
  }
  std::sort(report.concurrent.begin(), report.concurrent.end());
  return report;
}

namespace {

Rational magnitude_bound(const Instance& inst) {
  mpz_class m = 0;
  auto bump = [&m](const Rational& r) {
    mpz_class num = abs(r.get_num());
    if (num > m) m = num;
    if (r.get_den() > m) m = r.get_den();
  };
  for (const auto& h : inst.halfplanes) {
    bump(h.a);
    bump(h.b);
  }
  return Rational(m + 1);
}

}  // namespace

Instance perturb(const Instance& inst, int attempt) {
  if (attempt <= 0 && validate(inst).clean()) return inst;
  const std::size_t n = inst.size();
  const Rational bound = magnitude_bound(inst);
  const Rational two_bound = 2 * bound;
  // Base step from the input magnitudes.
  const Rational delta = 1 / (two_bound * two_bound * two_bound);
  // Arrangement vertices of the input satisfy |x| <= 2 * bound^3.
  const Rational coord_bound = 2 * bound * bound * bound;
  const Rational nn(static_cast<unsigned long>(n));
  const Rational tilt_share = 1 / (4 * (nn * nn + nn * coord_bound + 1));

  Rational kappa = 1;
  for (int k = 0; k < std::max(attempt, 0); ++k) kappa /= 2;

  for (int refine = 0; refine < 64; ++refine, kappa /= 2) {
    const Rational margin = delta * kappa;
    const Rational tilt = margin * tilt_share;
    Instance out;
    out.halfplanes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& h = inst.halfplanes[i];
      const Rational idx(static_cast<unsigned long>(i + 1));
      HalfPlane p = h;
      p.a += tilt * idx;
      p.b += tilt * idx * idx;
      p.b += h.side == Side::Upper ? margin : Rational(-margin);
      p.a.canonicalize();
      p.b.canonicalize();
      out.halfplanes.push_back(std::move(p));
    }
    if (validate(out).clean()) return out;
  }
  throw GeneralPositionViolation("perturbation failed to reach general position");
}

Point dual_point(const HalfPlane& h) { return {-h.a, h.b}; }

Line dual_line(const Point& primal) { return {primal.x, primal.y}; }

DualScene dualize(const Instance& inst) {
  DualScene scene;
  std::size_t upper = 0;
  for (const auto& h : inst.halfplanes) upper += h.side == Side::Upper;
  scene.tips_u.reserve(upper);
  scene.tips_l.reserve(inst.size() - upper);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& h = inst.halfplanes[i];
    (h.side == Side::Upper ? scene.tips_u : scene.tips_l).push_back({dual_point(h), i});
  }
  std::vector<const Rational*> xs;
  xs.reserve(inst.size());
  for (const auto* family : {&scene.tips_u, &scene.tips_l}) {
    for (const auto& t : *family) xs.push_back(&t.pt.x);
  }
  try {
    (void)sort_values(xs);
  } catch (const DuplicateX& e) {
    throw GeneralPositionViolation(std::string("parallel boundaries: ") + e.what());
  }
  return scene;
}

DualScene x_flip(DualScene scene) {
  for (auto* family : {&scene.tips_u, &scene.tips_l}) {
    for (auto& t : *family) t.pt.x = -t.pt.x;
  }
  scene.transform_log.push_back(Transform::XFlip);
  return scene;
}

DualScene y_flip(DualScene scene) {
  for (auto* family : {&scene.tips_u, &scene.tips_l}) {
    for (auto& t : *family) t.pt.y = -t.pt.y;
  }
  std::swap(scene.tips_u, scene.tips_l);
  scene.transform_log.push_back(Transform::YFlip);
  return scene;
}

Coloring pull_back(Coloring coloring, const std::vector<Transform>& log) {
  const auto swaps = std::count(log.begin(), log.end(), Transform::ColorSwap);
  if (swaps % 2 == 1) {
    for (auto& c : coloring.colors) c = opposite(c);
  }
  return coloring;
}

}  // namespace hpcolor
