#include "hpcolor/coloring_engine.hpp"

#include "hpcolor/uncovered_path.hpp"
#include "hpcolor/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <numeric>

namespace hpcolor {

namespace {

int orient(const Point& a, const Point& b, const Point& c) {
  return static_cast<int>(orientation(a, b, c));
}

// +1 when pt is above the line through a and b (a.x != b.x), -1 below, 0 on it.
int side(const Point& pt, const Point& a, const Point& b) {
  const int o = orient(a, b, pt);
  return a.x < b.x ? o : -o;
}

Rational slope(const Point& a, const Point& b) { return (b.y - a.y) / (b.x - a.x); }

// Monotone scan over x-sorted indices; upper keeps right turns only.
std::vector<std::size_t> hull_of(const std::vector<Point>& pts, const std::vector<std::size_t>& idx,
                                 bool upper) {
  const int keep = upper ? -1 : 1;
  std::vector<std::size_t> st;
  st.reserve(idx.size());
  for (std::size_t i : idx) {
    while (st.size() >= 2 && orient(pts[st[st.size() - 2]], pts[st.back()], pts[i]) != keep) st.pop_back();
    st.push_back(i);
  }
  return st;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

// Index k of the chain edge (chain[k], chain[k+1]) whose x-range contains x
// strictly inside, or nullopt.
std::optional<std::size_t> edge_over(const std::vector<Point>& pts, const std::vector<std::size_t>& chain,
                                     const Rational& x) {
  if (chain.size() < 2 || !(pts[chain.front()].x < x && x < pts[chain.back()].x)) return std::nullopt;
  auto it = std::upper_bound(chain.begin(), chain.end(), x,
                             [&](const Rational& v, std::size_t i) { return v < pts[i].x; });
  const auto k = static_cast<std::size_t>(it - chain.begin()) - 1;
  if (pts[chain[k]].x == x) return std::nullopt;
  return k;
}

Rational chain_at(const std::vector<Point>& pts, const std::vector<std::size_t>& chain, const Rational& x) {
  auto it = std::upper_bound(chain.begin(), chain.end(), x,
                             [&](const Rational& v, std::size_t i) { return v < pts[i].x; });
  auto k = static_cast<std::size_t>(it - chain.begin());
  if (k == 0) throw OutOfSpan("chain_at left of chain");
  --k;
  if (pts[chain[k]].x == x) return pts[chain[k]].y;
  if (k + 1 >= chain.size()) throw OutOfSpan("chain_at right of chain");
  const Point& a = pts[chain[k]];
  const Point& b = pts[chain[k + 1]];
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

// Closed membership in the region above the lower chain.
bool above_lower_chain(const std::vector<Point>& pts, const std::vector<std::size_t>& chain, const Point& pt) {
  if (chain.empty() || pt.x < pts[chain.front()].x || pts[chain.back()].x < pt.x) return false;
  return pt.y >= chain_at(pts, chain, pt.x);
}

template <class T>
std::vector<T> reversed(const std::vector<T>& v) {
  return {v.rbegin(), v.rend()};
}

}  // namespace

// ---------------------------------------------------------------------------
// Frames and painter

Frame Frame::from_scene(const DualScene& scene) { return from_scene(DualScene(scene)); }

Frame Frame::from_scene(DualScene&& scene) {
  Frame fr;
  for (auto [tips, pts, src] : {std::tuple{&scene.tips_u, &fr.u, &fr.src_u},
                                std::tuple{&scene.tips_l, &fr.l, &fr.src_l}}) {
    std::vector<const Rational*> xs;
    xs.reserve(tips->size());
    for (const auto& t : *tips) xs.push_back(&t.pt.x);
    pts->reserve(tips->size());
    src->reserve(tips->size());
    for (std::size_t i : sort_values(xs)) {
      pts->push_back(std::move((*tips)[i].pt));
      src->push_back((*tips)[i].source);
    }
  }
  for (Transform t : scene.transform_log) {
    if (t == Transform::ColorSwap) fr.swapped = !fr.swapped;
  }
  return fr;
}

Frame Frame::x_flipped() const {
  Frame fr;
  fr.u = reversed(u);
  fr.l = reversed(l);
  for (auto& p : fr.u) p.x = -p.x;
  for (auto& p : fr.l) p.x = -p.x;
  fr.src_u = reversed(src_u);
  fr.src_l = reversed(src_l);
  fr.swapped = swapped;
  return fr;
}

Frame Frame::y_flipped() const {
  Frame fr;
  fr.u = l;
  fr.l = u;
  for (auto& p : fr.u) p.y = -p.y;
  for (auto& p : fr.l) p.y = -p.y;
  fr.src_u = src_l;
  fr.src_l = src_u;
  fr.swapped = swapped;
  return fr;
}

Frame Frame::color_swapped() const {
  Frame fr = *this;
  fr.swapped = !fr.swapped;
  return fr;
}

OrientedFrame::OrientedFrame(Frame f) : frame(std::move(f)) {
  hull_u = hull_of(frame.u, all_indices(frame.u.size()), true);
  hull_l = hull_of(frame.l, all_indices(frame.l.size()), false);
  for (auto [pts, out] : {std::pair{&frame.u, &approx_u}, std::pair{&frame.l, &approx_l}}) {
    out->reserve(pts->size());
    for (const auto& p : *pts) out->emplace_back(p.x.get_d(), p.y.get_d());
  }
}

OrientedFrame::OrientedFrame(Frame f, std::vector<std::size_t> upper, std::vector<std::size_t> lower,
                             std::vector<std::pair<double, double>> au, std::vector<std::pair<double, double>> al)
    : frame(std::move(f)),
      hull_u(std::move(upper)),
      hull_l(std::move(lower)),
      approx_u(std::move(au)),
      approx_l(std::move(al)) {}

OrientedFrame OrientedFrame::x_flipped() const {
  // Index i becomes n-1-i and each chain runs the other way.
  auto mirror = [](const std::vector<std::size_t>& chain, std::size_t n) {
    std::vector<std::size_t> out(chain.rbegin(), chain.rend());
    for (auto& i : out) i = n - 1 - i;
    return out;
  };
  auto negate_x = [](const std::vector<std::pair<double, double>>& v) {
    std::vector<std::pair<double, double>> out(v.rbegin(), v.rend());
    for (auto& p : out) p.first = -p.first;
    return out;
  };
  return {frame.x_flipped(), mirror(hull_u, frame.u.size()), mirror(hull_l, frame.l.size()), negate_x(approx_u),
          negate_x(approx_l)};
}

// Negating y turns the lower hull of l into the upper hull of the new u.
OrientedFrame OrientedFrame::y_flipped() const {
  auto negate_y = [](std::vector<std::pair<double, double>> v) {
    for (auto& p : v) p.second = -p.second;
    return v;
  };
  return {frame.y_flipped(), hull_l, hull_u, negate_y(approx_l), negate_y(approx_u)};
}

void Painter::set(const Frame& fr, std::size_t src, Color c) { colors_.at(src) = fr.swapped ? opposite(c) : c; }

void Painter::fill(const Frame& fr, std::size_t src, Color c) {
  if (!colors_.at(src)) set(fr, src, c);
}

std::optional<Color> Painter::get(const Frame& fr, std::size_t src) const {
  const auto& v = colors_.at(src);
  if (!v) return std::nullopt;
  return fr.swapped ? opposite(*v) : *v;
}

Coloring Painter::finish() const {
  Coloring out;
  out.colors.reserve(colors_.size());
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (!colors_[i]) throw InternalError("half-plane " + std::to_string(i) + " left uncolored");
    out.colors.push_back(*colors_[i]);
  }
  return out;
}

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::A: return "A";
    case CaseTag::B: return "B";
    case CaseTag::C: return "C";
    case CaseTag::D: return "D";
    case CaseTag::SingletonU: return "S";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Coverage

namespace {

// Slopes of the chain edges left and right of x (nullopt past either end).
std::pair<std::optional<Rational>, std::optional<Rational>> side_slopes(const std::vector<Point>& pts,
                                                                        const std::vector<std::size_t>& chain,
                                                                        const Rational& x) {
  std::optional<Rational> left, right;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const Point& a = pts[chain[k]];
    const Point& b = pts[chain[k + 1]];
    if (a.x < x && x <= b.x) left = slope(a, b);
    if (a.x <= x && x < b.x) right = slope(a, b);
  }
  return {left, right};
}

Line separator_for_disjoint(const Frame& fr, const Rational& x0) {
  // Line through (x0, 0); each tip bounds the slope by y / (x - x0).
  const bool u_left = !fr.u.empty() && fr.u.back().x < x0;
  std::optional<Rational> bound;
  for (const auto* pts : {&fr.u, &fr.l}) {
    for (const auto& p : *pts) {
      Rational r = p.y / (p.x - x0);
      if (!bound || (u_left ? r < *bound : r > *bound)) bound = r;
    }
  }
  Rational s = u_left ? Rational(*bound - 1) : Rational(*bound + 1);
  return {s, -s * x0};
}

bool separates(const Frame& fr, const Line& ln) {
  for (const auto& p : fr.u) {
    if (side_of_line(p, ln) != LineSide::Below) return false;
  }
  for (const auto& p : fr.l) {
    if (side_of_line(p, ln) != LineSide::Above) return false;
  }
  return true;
}

}  // namespace

namespace {

Coverage coverage_of(const OrientedFrame& of) {
  const Frame& fr = of.frame;
  Coverage cov;
  if (fr.u.empty() || fr.l.empty()) {
    Rational t = 0;
    for (const auto& p : fr.u) t = std::max(t, Rational(p.y + 1));
    for (const auto& p : fr.l) t = std::min(t, Rational(p.y - 1));
    cov.separator = {0, t};
    return cov;
  }
  const Rational a = std::max(fr.u.front().x, fr.l.front().x);
  const Rational b = std::min(fr.u.back().x, fr.l.back().x);
  if (b < a) {
    const Rational x0 = fr.u.back().x < fr.l.front().x ? (fr.u.back().x + fr.l.front().x) / 2
                                                        : (fr.l.back().x + fr.u.front().x) / 2;
    cov.separator = separator_for_disjoint(fr, x0);
    if (!separates(fr, cov.separator)) throw InternalError("coverage: separator check failed");
    return cov;
  }
  // The gap between the chains is concave in x; its maximum sits at a breakpoint.
  std::vector<Rational> xs{a, b};
  for (std::size_t i : of.hull_u) {
    if (a <= fr.u[i].x && fr.u[i].x <= b) xs.push_back(fr.u[i].x);
  }
  for (std::size_t i : of.hull_l) {
    if (a <= fr.l[i].x && fr.l[i].x <= b) xs.push_back(fr.l[i].x);
  }
  std::optional<Rational> best_gap;
  Rational best_x, yu, yl;
  for (const auto& x : xs) {
    Rational cu = chain_at(fr.u, of.hull_u, x);
    Rational cl = chain_at(fr.l, of.hull_l, x);
    Rational gap = cu - cl;
    if (!best_gap || gap > *best_gap || (gap == *best_gap && x < best_x)) {
      best_gap = gap;
      best_x = x;
      yu = cu;
      yl = cl;
    }
  }
  const Rational ymid = (yu + yl) / 2;
  if (*best_gap >= 0) {
    cov.covered = true;
    cov.witness = {best_x, ymid};
    return cov;
  }
  // Common supporting slope: supergradient of the upper chain that is also a
  // subgradient of the lower chain.
  auto [ul, ur] = side_slopes(fr.u, of.hull_u, best_x);
  auto [ll, lr] = side_slopes(fr.l, of.hull_l, best_x);
  std::optional<Rational> lo = ur, hi = ul;
  if (ll && (!lo || *ll > *lo)) lo = ll;
  if (lr && (!hi || *lr < *hi)) hi = lr;
  const Rational s = lo ? *lo : (hi ? *hi : Rational(0));
  cov.separator = {s, ymid - s * best_x};
  if (!separates(fr, cov.separator)) throw InternalError("coverage: separator check failed");
  return cov;
}

}  // namespace

Coverage coverage(const DualScene& scene) { return coverage_of(OrientedFrame(Frame::from_scene(scene))); }

// ---------------------------------------------------------------------------
// Pivots

namespace {

PivotConfig config_at(std::shared_ptr<const OrientedFrame> of, std::size_t k_u) {
  const auto& cu = of->hull_u;
  const auto& cl = of->hull_l;
  const auto& pu = of->frame.u;
  const auto& pl = of->frame.l;
  PivotConfig c;
  c.p = cu.at(k_u);
  if (k_u > 0) c.l_u = cu[k_u - 1];
  if (k_u + 1 < cu.size()) c.r_u = cu[k_u + 1];
  const auto j = edge_over(pl, cl, pu[c.p].x);
  if (!j) throw InternalError("pivot outside the lower span");
  c.l_l = cl[*j];
  c.r_l = cl[*j + 1];
  if (*j > 0) c.l_l2 = cl[*j - 1];
  if (*j + 2 < cl.size()) c.r_l2 = cl[*j + 2];
  if (orient(pl[c.l_l], pl[c.r_l], pu[c.p]) <= 0) throw InternalError("pivot not above its lower edge");
  c.oriented = std::move(of);
  return c;
}

// Re-pivot on another upper-hull vertex of the same frame.
PivotConfig config_for(const PivotConfig& c, std::size_t u_index) {
  const auto& cu = c.oriented->hull_u;
  auto it = std::find(cu.begin(), cu.end(), u_index);
  if (it == cu.end()) throw InternalError("re-pivot target not on the upper hull");
  return config_at(c.oriented, static_cast<std::size_t>(it - cu.begin()));
}

// The four axis orientations of one frame, indexed by bit 0 = x-flip and
// bit 1 = y-flip, with the valid pivots of each. Orientation f seen from
// orientation g is f ^ g, so one set serves every frame of the group.
struct Orientations {
  std::array<std::shared_ptr<const OrientedFrame>, 4> frames;
  std::array<std::vector<PivotConfig>, 4> pivots;

  explicit Orientations(const Frame& base) : Orientations(std::make_shared<const OrientedFrame>(base)) {}

  explicit Orientations(std::shared_ptr<const OrientedFrame> base) {
    auto xf = std::make_shared<const OrientedFrame>(base->x_flipped());
    auto yf = std::make_shared<const OrientedFrame>(base->y_flipped());
    auto xyf = std::make_shared<const OrientedFrame>(xf->y_flipped());
    frames = {std::move(base), std::move(xf), std::move(yf), std::move(xyf)};
    for (std::size_t f = 0; f < 4; ++f) pivots[f] = pivots_of(frames[f]);
  }

  // Candidates in the order seen from orientation `from`.
  std::vector<PivotConfig> seen_from(std::size_t from) const {
    std::vector<PivotConfig> out;
    for (std::size_t g = 0; g < 4; ++g) {
      const auto& v = pivots[from ^ g];
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

  std::optional<std::size_t> index_of(const OrientedFrame* of) const {
    for (std::size_t f = 0; f < 4; ++f) {
      if (frames[f].get() == of) return f;
    }
    return std::nullopt;
  }

private:
  static std::vector<PivotConfig> pivots_of(const std::shared_ptr<const OrientedFrame>& of) {
    std::vector<PivotConfig> out;
    const auto& pu = of->frame.u;
    const auto& pl = of->frame.l;
    if (pu.empty() || pl.empty()) return out;
    for (std::size_t k = 0; k < of->hull_u.size(); ++k) {
      if (k == 0 && pu.size() > 1) continue;
      const Point& pt = pu[of->hull_u[k]];
      const auto j = edge_over(pl, of->hull_l, pt.x);
      if (!j) continue;
      if (side(pt, pl[of->hull_l[*j]], pl[of->hull_l[*j + 1]]) <= 0) continue;
      out.push_back(config_at(of, k));
    }
    return out;
  }
};

int preference(const PivotConfig& c) {
  CaseTag t = CaseTag::B;
  try {
    t = classify(c);
  } catch (const InternalError&) {
  }
  switch (t) {
    case CaseTag::A: return 0;
    case CaseTag::C: return 1;
    case CaseTag::D: return 2;
    case CaseTag::SingletonU: return 3;
    case CaseTag::B: return 4;
  }
  return 5;
}

std::vector<PivotConfig> ranked_candidates(const Orientations& all) {
  auto cands = all.seen_from(0);
  std::vector<std::pair<int, std::size_t>> keys;
  keys.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) keys.emplace_back(preference(cands[i]), i);
  std::stable_sort(keys.begin(), keys.end());
  std::vector<PivotConfig> out;
  out.reserve(cands.size());
  for (const auto& [rank, i] : keys) out.push_back(std::move(cands[i]));
  return out;
}

}  // namespace

std::vector<PivotConfig> pivot_candidates(const DualScene& scene) {
  return Orientations(Frame::from_scene(scene)).seen_from(0);
}

PivotConfig find_pivot(const DualScene& scene) {
  auto ranked = ranked_candidates(Orientations(Frame::from_scene(scene)));
  if (ranked.empty()) throw InternalError("no pivot: the scene is not covered");
  return ranked.front();
}

CaseTag classify(const PivotConfig& c) {
  const auto& pu = c.pu();
  const auto& pl = c.pl();
  if (pu.size() == 1) return CaseTag::SingletonU;
  if (!c.l_u) throw InternalError("classify: pivot is the leftmost upper point");
  const Point& lu = pu[*c.l_u];
  const Point& p = pu[c.p];
  const bool cross = segments_intersect({lu, p}, {pl[c.l_l], pl[c.r_l]});
  if (side(pl[c.r_l], lu, p) > 0) {
    if (cross) throw InternalError("classify: r_L above h while the segments cross");
    return CaseTag::A;
  }
  if (cross) return CaseTag::C;
  return pl[c.l_l].x < lu.x ? CaseTag::B : CaseTag::D;
}

// ---------------------------------------------------------------------------
// Separated pair finishing step

namespace {

bool masked(const std::vector<bool>& mask, std::size_t i) { return i < mask.size() && mask[i]; }

// Min-slope tangent rule for r_L; returns the color it receives.
Color tangent_rule_color(const Frame& fr, std::size_t p, std::size_t q, std::size_t r_l,
                         const std::vector<std::size_t>& active_u, const std::vector<std::size_t>& active_l,
                         const std::vector<std::size_t>& outer_l) {
  const auto& pu = fr.u;
  const auto& pl = fr.l;
  std::vector<std::size_t> rest;
  std::size_t k = 0;
  for (std::size_t i : active_l) {
    while (k < outer_l.size() && outer_l[k] < i) ++k;
    if (k < outer_l.size() && outer_l[k] == i) continue;
    rest.push_back(i);
  }
  if (rest.empty()) return Color::Blue;
  const auto inner = hull_of(pl, rest, false);
  std::size_t best = inner.front();
  Rational best_slope = slope(pl[q], pl[best]);
  for (std::size_t i : inner) {
    Rational s = slope(pl[q], pl[i]);
    if (s < best_slope) {
      best_slope = std::move(s);
      best = i;
    }
  }
  const Point& a = pl[q];
  const Point& b = pl[best];
  if (!(q < best && best < r_l)) return Color::Blue;
  if (side(pl[r_l], a, b) >= 0 || side(pu[p], a, b) <= 0) return Color::Blue;
  for (std::size_t i : active_l) {
    if (i != q && i != best && i != r_l && side(pl[i], a, b) <= 0) return Color::Blue;
  }
  for (std::size_t i : active_u) {
    if (i != p && side(pu[i], a, b) >= 0) return Color::Blue;
  }
  return Color::Red;
}

}  // namespace

ObsBranch obs_separated(const Frame& fr, std::size_t p, std::size_t q, Painter& paint,
                        const std::vector<bool>& deleted_u, const std::vector<bool>& deleted_l) {
  const auto& pu = fr.u;
  const auto& pl = fr.l;
  std::vector<std::size_t> au, al;
  for (std::size_t i = 0; i <= p; ++i) {
    if (!masked(deleted_u, i)) au.push_back(i);
  }
  for (std::size_t i = q; i < pl.size(); ++i) {
    if (!masked(deleted_l, i)) al.push_back(i);
  }
  const auto cu = hull_of(pu, au, true);
  const auto cl = hull_of(pl, al, false);
  if (cu.empty() || cu.back() != p || cl.empty() || cl.front() != q) {
    throw InternalError("separated step: p or q is deleted");
  }
  std::optional<std::size_t> l_u, r_l;
  if (cu.size() > 1) l_u = cu[cu.size() - 2];
  if (cl.size() > 1) r_l = cl[1];
  if (l_u && side(pl[q], pu[*l_u], pu[p]) >= 0) throw InternalError("separated step: l does not pass above q");
  if (r_l && side(pu[p], pl[q], pl[*r_l]) <= 0) throw InternalError("separated step: l' does not pass below p");

  const bool left = !l_u || (r_l && side(pu[*l_u], pl[q], pl[*r_l]) <= 0);
  const bool mirrored = !r_l || (l_u && side(pl[*r_l], pu[*l_u], pu[p]) >= 0);
  if (!left && !mirrored) {
    paint.fill(fr, fr.src_u[p], Color::Blue);
    paint.fill(fr, fr.src_l[q], Color::Red);
    for (std::size_t i : au) {
      if (i != p) paint.fill(fr, fr.src_u[i], Color::Red);
    }
    for (std::size_t i : al) {
      if (i != q) paint.fill(fr, fr.src_l[i], Color::Blue);
    }
    return ObsBranch::Both;
  }
  if (left) {
    paint.fill(fr, fr.src_u[p], Color::Blue);
    paint.fill(fr, fr.src_l[q], Color::Red);
    for (std::size_t i : au) {
      if (i != p) paint.fill(fr, fr.src_u[i], Color::Red);
    }
    if (!r_l) return ObsBranch::Left;
    for (std::size_t i : al) {
      if (q < i && i < *r_l) paint.fill(fr, fr.src_l[i], Color::Blue);
      if (i > *r_l) paint.fill(fr, fr.src_l[i], Color::Red);
    }
    paint.fill(fr, fr.src_l[*r_l], tangent_rule_color(fr, p, q, *r_l, au, al, cl));
    return ObsBranch::Left;
  }
  // Mirror image: rotate by a half turn and swap colors, then the left branch applies.
  const Frame mf = fr.x_flipped().y_flipped().color_swapped();
  const std::size_t nu = pu.size();
  const std::size_t nl = pl.size();
  auto flip_mask = [](const std::vector<bool>& m, std::size_t n) {
    std::vector<bool> out(n, false);
    for (std::size_t i = 0; i < m.size() && i < n; ++i) out[n - 1 - i] = m[i];
    return out;
  };
  obs_separated(mf, nl - 1 - q, nu - 1 - p, paint, flip_mask(deleted_l, nl), flip_mask(deleted_u, nu));
  return ObsBranch::Mirrored;
}

// ---------------------------------------------------------------------------
// Case machine

namespace {

enum class Fam : std::uint8_t { U, L };

struct Ref {
  Fam fam;
  std::size_t i;
};

const Point& at(const Frame& fr, Ref r) { return r.fam == Fam::U ? fr.u[r.i] : fr.l[r.i]; }

bool contains(std::initializer_list<Ref> set, Fam f, std::size_t i) {
  return std::any_of(set.begin(), set.end(), [&](Ref r) { return r.fam == f && r.i == i; });
}

// Given refs blue, all other tips red.
void paint_only(const Frame& fr, std::initializer_list<Ref> blue, Painter& paint) {
  for (std::size_t i = 0; i < fr.u.size(); ++i) {
    paint.set(fr, fr.src_u[i], contains(blue, Fam::U, i) ? Color::Blue : Color::Red);
  }
  for (std::size_t i = 0; i < fr.l.size(); ++i) {
    paint.set(fr, fr.src_l[i], contains(blue, Fam::L, i) ? Color::Blue : Color::Red);
  }
}

// Line space: y = s*x + t is the point (s, t). A tip w is hit when the line
// passes on or below it (u) or on or above it (l); this is A*s + B*t <= C.
struct HalfSpace {
  Rational a, b, c;
};

HalfSpace miss_region(const Point& w, Fam f) {
  // Closure of the complement of the hit constraint.
  if (f == Fam::U) return {-w.x, -1, -w.y};
  return {w.x, 1, w.y};
}

std::vector<Point> clip(const std::vector<Point>& poly, const HalfSpace& h) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const Rational vp = h.a * p.x + h.b * p.y - h.c;
    const Rational vq = h.a * q.x + h.b * q.y - h.c;
    if (sgn(vp) <= 0) out.push_back(p);
    if ((sgn(vp) < 0 && sgn(vq) > 0) || (sgn(vq) < 0 && sgn(vp) > 0)) {
      const Rational t = vp / (vp - vq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

bool flat(const std::vector<Point>& poly) {
  if (poly.size() < 3) return true;
  Rational area = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    area += p.x * q.y - q.x * p.y;
  }
  return sgn(area) == 0;
}

Point as_point(const Line& ln) { return {ln.slope, ln.intercept}; }

// Whether "these three blue, everything else red" is good: the middle tip
// must block the outer pair, and every line through all three rays must also
// meet another ray.
bool triple_ok(const OrientedFrame& of, std::array<Ref, 3> t) {
  const Frame& fr = of.frame;
  std::sort(t.begin(), t.end(), [&](Ref a, Ref b) { return at(fr, a).x < at(fr, b).x; });
  if (t[0].fam != t[2].fam || t[1].fam == t[0].fam) return false;
  const int o = orient(at(fr, t[0]), at(fr, t[2]), at(fr, t[1]));
  if (t[1].fam == Fam::U && o <= 0) return false;
  if (t[1].fam == Fam::L && o >= 0) return false;
  std::vector<Point> poly{as_point(Line::through(at(fr, t[0]), at(fr, t[1]))),
                          as_point(Line::through(at(fr, t[1]), at(fr, t[2]))),
                          as_point(Line::through(at(fr, t[0]), at(fr, t[2])))};
  auto in_t = [&](Fam f, std::size_t i) {
    return std::any_of(t.begin(), t.end(), [&](Ref r) { return r.fam == f && r.i == i; });
  };
  // Floating filter: a constraint strictly satisfied at every vertex by a
  // margin above the rounding error cannot cut; only the rest is clipped exactly.
  std::vector<std::pair<double, double>> approx;
  auto refresh = [&] {
    approx.clear();
    for (const auto& v : poly) approx.emplace_back(v.x.get_d(), v.y.get_d());
  };
  // Smallest slack over the vertices (negative means the constraint may cut).
  auto slack = [&](Fam f, std::size_t i) {
    const auto [wx, wy] = (f == Fam::U ? of.approx_u : of.approx_l)[i];
    const double dir = f == Fam::U ? -1.0 : 1.0;
    double least = std::numeric_limits<double>::infinity();
    for (const auto& v : approx) {
      const double val = dir * (wx * v.first + v.second - wy);
      const double err = 1e-12 * (std::abs(wx * v.first) + std::abs(v.second) + std::abs(wy));
      least = std::min(least, -val - err);
    }
    return least;
  };
  refresh();
  struct Cut {
    double slack;
    Ref ref;
  };
  std::vector<Cut> cuts;
  for (Fam f : {Fam::U, Fam::L}) {
    const std::size_t n = (f == Fam::U ? fr.u : fr.l).size();
    for (std::size_t i = 0; i < n; ++i) {
      if (in_t(f, i)) continue;
      if (const double s = slack(f, i); !(s > 0)) cuts.push_back({s, Ref{f, i}});
    }
  }
  // The result is an intersection, so order is free; deep cuts first tend to
  // collapse the region after few exact clips.
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.slack < b.slack; });
  for (const Cut& c : cuts) {
    if (slack(c.ref.fam, c.ref.i) > 0) continue;
    poly = clip(poly, miss_region(at(fr, c.ref), c.ref.fam));
    if (flat(poly)) return true;
    refresh();
  }
  return false;
}

bool all_strictly(const std::vector<Point>& pts, const Point& a, const Point& b, int want,
                  std::initializer_list<std::size_t> skip) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::find(skip.begin(), skip.end(), i) != skip.end()) continue;
    if (side(pts[i], a, b) != want) return false;
  }
  return true;
}

// Whether the open triangle abc holds no other point of pts.
bool triangle_empty(const std::vector<Point>& pts, std::size_t a, std::size_t b, std::size_t c) {
  const int o = orient(pts[a], pts[b], pts[c]);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i == a || i == b || i == c) continue;
    if (orient(pts[a], pts[b], pts[i]) == o && orient(pts[b], pts[c], pts[i]) == o &&
        orient(pts[c], pts[a], pts[i]) == o) {
      return false;
    }
  }
  return true;
}

// Line through a and b meets the closed segment st.
bool line_meets_segment(const Point& a, const Point& b, const Point& s, const Point& t) {
  return side(s, a, b) * side(t, a, b) <= 0;
}

PivotConfig x_flipped_config(const PivotConfig& c) {
  auto of = std::make_shared<const OrientedFrame>(c.frame().x_flipped());
  const std::size_t nu = c.pu().size();
  const std::size_t nl = c.pl().size();
  auto mu = [nu](std::optional<std::size_t> i) -> std::optional<std::size_t> {
    if (!i) return std::nullopt;
    return nu - 1 - *i;
  };
  auto ml = [nl](std::optional<std::size_t> i) -> std::optional<std::size_t> {
    if (!i) return std::nullopt;
    return nl - 1 - *i;
  };
  PivotConfig d;
  d.oriented = std::move(of);
  d.p = nu - 1 - c.p;
  d.l_u = mu(c.r_u);
  d.r_u = mu(c.l_u);
  d.l_l = nl - 1 - c.r_l;
  d.r_l = nl - 1 - c.l_l;
  d.l_l2 = ml(c.r_l2);
  d.r_l2 = ml(c.l_l2);
  return d;
}

constexpr int kMaxDepth = 6;
constexpr int kMaxReduceDepth = 4;

class Machine {
public:
  Machine(Painter& paint, std::vector<std::string>* trace, const Orientations* group = nullptr)
      : paint_(paint), trace_(trace), group_(group) {}

  void dispatch(const PivotConfig& c, int depth);

private:
  Painter& paint_;
  std::vector<std::string>* trace_;
  const Orientations* group_;

  void note(const std::string& label) {
    if (trace_) trace_->push_back(label);
  }
  void set_u(const PivotConfig& c, std::size_t i, Color col) { paint_.set(c.frame(), c.frame().src_u[i], col); }
  void set_l(const PivotConfig& c, std::size_t i, Color col) { paint_.set(c.frame(), c.frame().src_l[i], col); }
  std::optional<Color> get_u(const PivotConfig& c, std::size_t i) const {
    return paint_.get(c.frame(), c.frame().src_u[i]);
  }
  std::optional<Color> get_l(const PivotConfig& c, std::size_t i) const {
    return paint_.get(c.frame(), c.frame().src_l[i]);
  }
  bool r_u_in_lower_region(const PivotConfig& c) const {
    return c.r_u && above_lower_chain(c.pl(), c.oriented->hull_l, c.pu()[*c.r_u]);
  }

  void case_a(const PivotConfig& c);
  void case_b(const PivotConfig& c);
  void case_c(const PivotConfig& c, int depth);
  void case_c_below(const PivotConfig& c, int depth);
  void case_d(const PivotConfig& c, int depth);
  void sub_c2(const PivotConfig& c);
  void sub_c3(const PivotConfig& c, const PivotConfig& d);
  void sub_c4(const PivotConfig& c, const PivotConfig& d);
  bool c4_fix(const PivotConfig& c);
  void reduce_d(const PivotConfig& c, int depth);
};

void Machine::dispatch(const PivotConfig& c, int depth) {
  if (depth > kMaxDepth) throw InternalError("case machine: reduction chain too long");
  const CaseTag tag = classify(c);
  note(to_string(tag));
  switch (tag) {
    case CaseTag::A: return case_a(c);
    case CaseTag::B:
      if (r_u_in_lower_region(c)) {
        note("b:repivot");
        return dispatch(config_for(c, *c.r_u), depth + 1);
      }
      return case_b(c);
    case CaseTag::C:
    case CaseTag::SingletonU: return case_c(c, depth);
    case CaseTag::D: return case_d(c, depth);
  }
}

void Machine::case_a(const PivotConfig& c) {
  paint_only(c.frame(), {{Fam::U, c.p}, {Fam::L, c.r_l}, {Fam::L, c.l_l}}, paint_);
}

void Machine::case_b(const PivotConfig& c) {
  const auto& pl = c.pl();
  const std::size_t lu = *c.l_u;
  set_u(c, c.p, Color::Blue);
  set_l(c, c.r_l, Color::Blue);
  set_u(c, lu, Color::Red);
  set_l(c, c.l_l, Color::Red);
  for (std::size_t i = 0; i < c.pu().size(); ++i) {
    if (i < lu || (lu < i && i < c.p)) set_u(c, i, Color::Red);
    if (i > c.p) set_u(c, i, Color::Blue);
  }
  for (std::size_t i = 0; i < pl.size(); ++i) {
    if (i > c.r_l) set_l(c, i, Color::Red);
    if (i < c.l_l) set_l(c, i, Color::Blue);
  }
  std::vector<std::size_t> win;
  for (std::size_t i = c.l_l + 1; i < c.r_l; ++i) win.push_back(i);
  if (win.empty()) return;
  // Lower hull of the window; the right sentinel always counts as passing.
  const auto layer = hull_of(pl, win, false);
  std::size_t j = layer.size() - 1;
  for (std::size_t t = 0; t + 1 < layer.size(); ++t) {
    if (side(pl[c.r_l], pl[layer[t]], pl[layer[t + 1]]) < 0) {
      j = t;
      break;
    }
  }
  const std::size_t pj = layer[j];
  for (std::size_t i : win) {
    if (i < pj) set_l(c, i, Color::Blue);
    if (i > pj) set_l(c, i, Color::Red);
  }
  // p_j is blue when a line through r_L and some later window point w passes
  // above l_L and p_j and below the rest of the window. Only the window point
  // of steepest slope towards r_L can have the rest strictly above.
  std::optional<std::size_t> w;
  Rational w_slope;
  bool unique = true;
  for (std::size_t i : win) {
    if (i == pj) continue;
    Rational s = slope(pl[i], pl[c.r_l]);
    if (!w || s > w_slope) {
      w = i;
      w_slope = std::move(s);
      unique = true;
    } else if (s == w_slope) {
      unique = false;
    }
  }
  Color col = Color::Red;
  if (w && unique && *w > pj && side(pl[c.l_l], pl[c.r_l], pl[*w]) < 0 && side(pl[pj], pl[c.r_l], pl[*w]) < 0) {
    col = Color::Blue;
  }
  set_l(c, pj, col);
}

void Machine::sub_c2(const PivotConfig& c) {
  const auto& pu = c.pu();
  const auto& pl = c.pl();
  set_l(c, c.l_l, Color::Blue);
  set_l(c, *c.r_l2, Color::Blue);
  if (c.r_u) set_u(c, *c.r_u, Color::Red);
  set_l(c, c.r_l, Color::Red);
  std::vector<bool> dl(pl.size(), false);
  for (std::size_t i = c.l_l + 1; i < *c.r_l2; ++i) {
    if (i == c.r_l) continue;
    dl[i] = true;
    set_l(c, i, Color::Red);
  }
  for (std::size_t i = c.p + 1; i < pu.size(); ++i) set_u(c, i, Color::Red);
  for (std::size_t i = 0; i < c.l_l; ++i) set_l(c, i, Color::Red);
  obs_separated(c.frame(), c.p, c.r_l, paint_, {}, dl);
  if (c.l_u && get_l(c, c.l_l) == Color::Blue && get_u(c, *c.l_u) == Color::Blue && get_u(c, c.p) == Color::Blue) {
    const Point& a = pu[*c.l_u];
    const Point& b = pl[c.l_l];
    if (all_strictly(pl, a, b, 1, {c.l_l}) && all_strictly(pu, a, b, -1, {*c.l_u, c.p}) && side(pu[c.p], a, b) > 0) {
      note("c2fix");
      paint_only(c.frame(), {{Fam::L, c.l_l}, {Fam::U, *c.l_u}, {Fam::L, c.r_l}}, paint_);
    }
  }
}

void Machine::sub_c3(const PivotConfig& c, const PivotConfig& d) {
  const auto& pu = c.pu();
  set_u(c, *c.l_u, Color::Red);
  set_u(c, *c.r_u, Color::Red);
  set_l(c, c.r_l, Color::Red);
  std::vector<bool> du(pu.size(), false);
  for (std::size_t i = *c.l_u + 1; i < *c.r_u; ++i) {
    if (i == c.p) continue;
    du[i] = true;
    set_u(c, i, Color::Blue);
  }
  for (std::size_t i = c.l_l + 1; i < c.r_l; ++i) set_l(c, i, Color::Blue);
  obs_separated(c.frame(), c.p, c.r_l, paint_, du, {});
  obs_separated(d.frame(), d.p, d.r_l, paint_, reversed(du), {});
}

bool Machine::c4_fix(const PivotConfig& c) {
  if (!c.l_l2 || !c.l_u) return false;
  if (get_l(c, *c.l_l2) != Color::Blue || get_u(c, *c.l_u) != Color::Blue || get_u(c, c.p) != Color::Blue) {
    return false;
  }
  const auto& pu = c.pu();
  const auto& pl = c.pl();
  const bool tangent = all_strictly(pl, pu[*c.l_u], pl[*c.l_l2], 1, {*c.l_l2}) &&
                       all_strictly(pu, pu[*c.l_u], pl[*c.l_l2], -1, {*c.l_u, c.p});
  const bool outer = all_strictly(pu, pl[*c.l_l2], pl[c.l_l], -1, {*c.l_u, c.p});
  if (!tangent && !outer) return false;
  note("c4fix");
  paint_only(c.frame(), {{Fam::L, *c.l_l2}, {Fam::L, c.l_l}, {Fam::U, *c.l_u}, {Fam::L, c.r_l}}, paint_);
  return true;
}

void Machine::sub_c4(const PivotConfig& c, const PivotConfig& d) {
  set_l(c, c.r_l, Color::Red);
  for (std::size_t i = c.l_l + 1; i < c.r_l; ++i) set_l(c, i, Color::Blue);
  obs_separated(c.frame(), c.p, c.r_l, paint_);
  obs_separated(d.frame(), d.p, d.r_l, paint_);
  if (!c4_fix(c)) c4_fix(d);
}

void Machine::case_c(const PivotConfig& c, int depth) {
  const auto& pu = c.pu();
  const auto& pl = c.pl();
  set_u(c, c.p, Color::Blue);
  set_l(c, c.l_l, Color::Red);
  if (c.r_u && side(pl[c.r_l], pu[c.p], pu[*c.r_u]) <= 0) return case_c_below(c, depth);
  if (r_u_in_lower_region(c)) {
    note("c:repivot");
    return dispatch(config_for(c, *c.r_u), depth + 1);
  }
  auto right_tangent = [](const PivotConfig& k) {
    if (!k.r_u) return false;
    const Point& a = k.pl()[k.r_l];
    const Point& b = k.pu()[*k.r_u];
    return all_strictly(k.pl(), a, b, 1, {k.l_l, k.r_l}) && all_strictly(k.pu(), a, b, -1, {*k.r_u});
  };
  if (right_tangent(c)) {
    note("c1R");
    return paint_only(c.frame(), {{Fam::U, c.p}, {Fam::U, *c.r_u}, {Fam::L, c.r_l}}, paint_);
  }
  const PivotConfig d = x_flipped_config(c);
  if (right_tangent(d)) {
    note("c1L");
    return paint_only(d.frame(), {{Fam::U, d.p}, {Fam::U, *d.r_u}, {Fam::L, d.r_l}}, paint_);
  }
  if (c.r_l2 && triangle_empty(pl, c.l_l, c.r_l, *c.r_l2)) {
    note("c2R");
    return sub_c2(c);
  }
  if (c.l_l2 && triangle_empty(pl, c.r_l, c.l_l, *c.l_l2)) {
    note("c2L");
    return sub_c2(d);
  }
  if (c.l_u && c.r_u && triangle_empty(pu, *c.l_u, c.p, *c.r_u)) {
    note("c3");
    return sub_c3(c, d);
  }
  note("c4");
  sub_c4(c, d);
}

void Machine::case_c_below(const PivotConfig& c, int depth) {
  const auto& pu = c.pu();
  const auto& pl = c.pl();
  if (r_u_in_lower_region(c)) {
    note("cb:repivot");
    return dispatch(config_for(c, *c.r_u), depth + 1);
  }
  const std::size_t ru = *c.r_u;
  if (line_meets_segment(pl[c.l_l], pl[c.r_l], pu[c.p], pu[ru])) {
    note("cb:tripleR");
    if (!triple_ok(*c.oriented, {Ref{Fam::L, c.r_l}, Ref{Fam::U, c.p}, Ref{Fam::U, ru}})) {
      throw InternalError("case c below: {r_L, p, r_U} is not a good triple");
    }
    return paint_only(c.frame(), {{Fam::L, c.r_l}, {Fam::U, c.p}, {Fam::U, ru}}, paint_);
  }
  if (line_meets_segment(pu[c.p], pu[ru], pl[c.l_l], pl[c.r_l])) {
    note("cb:tripleL");
    if (!triple_ok(*c.oriented, {Ref{Fam::U, c.p}, Ref{Fam::L, c.l_l}, Ref{Fam::L, c.r_l}})) {
      throw InternalError("case c below: {p, l_L, r_L} is not a good triple");
    }
    return paint_only(c.frame(), {{Fam::U, c.p}, {Fam::L, c.l_l}, {Fam::L, c.r_l}}, paint_);
  }
  if (pu[ru].x < pl[c.r_l].x) throw InternalError("case c below: r_U left of r_L");
  note("cbelow");
  set_l(c, c.l_l, Color::Blue);
  set_l(c, c.r_l, Color::Red);
  set_u(c, ru, Color::Red);
  for (std::size_t i = c.p + 1; i < pu.size(); ++i) {
    if (i != ru) set_u(c, i, i > ru ? Color::Blue : Color::Red);
  }
  for (std::size_t i = 0; i < c.r_l; ++i) {
    if (i != c.l_l) set_l(c, i, Color::Blue);
  }
  obs_separated(c.frame(), c.p, c.r_l, paint_);
}

bool d1_applies(const PivotConfig& c) { return c.p + 1 == c.pu().size() && c.l_l == 0; }

bool d2_triple(const PivotConfig& c) {
  return c.r_u && triple_ok(*c.oriented, {Ref{Fam::U, *c.r_u}, Ref{Fam::U, c.p}, Ref{Fam::L, c.r_l}});
}

void Machine::case_d(const PivotConfig& c, int depth) {
  const auto& pu = c.pu();
  const auto& pl = c.pl();
  const std::size_t lu = *c.l_u;
  if (d1_applies(c)) {
    if (line_meets_segment(pl[c.l_l], pl[c.r_l], pu[lu], pu[c.p])) {
      note("d1:triple");
      if (!triple_ok(*c.oriented, {Ref{Fam::L, c.l_l}, Ref{Fam::U, lu}, Ref{Fam::U, c.p}})) {
        throw InternalError("case d: {l_L, l_U, p} is not a good triple");
      }
      return paint_only(c.frame(), {{Fam::L, c.l_l}, {Fam::U, lu}, {Fam::U, c.p}}, paint_);
    }
    note("d1");
    set_u(c, c.p, Color::Blue);
    set_l(c, c.r_l, Color::Blue);
    set_u(c, lu, Color::Red);
    set_l(c, c.l_l, Color::Red);
    for (std::size_t i = 0; i < c.p; ++i) {
      if (i != lu) set_u(c, i, Color::Red);
    }
    for (std::size_t i = c.l_l + 1; i < pl.size(); ++i) {
      if (i != c.r_l) set_l(c, i, i > c.r_l ? Color::Red : Color::Blue);
    }
    return;
  }
  if (r_u_in_lower_region(c)) {
    note("d2:repivot");
    return dispatch(config_for(c, *c.r_u), depth + 1);
  }
  if (d2_triple(c)) {
    note("d2");
    return paint_only(c.frame(), {{Fam::U, *c.r_u}, {Fam::U, c.p}, {Fam::L, c.r_l}}, paint_);
  }
  reduce_d(c, depth);
}

// Look for another pivot of this frame whose case finishes without coming back here.
void Machine::reduce_d(const PivotConfig& c, int depth) {
  std::optional<Orientations> own;
  std::optional<std::size_t> from;
  if (group_) from = group_->index_of(c.oriented.get());
  if (!from) {
    own.emplace(c.frame());
    from = 0;
  }
  const Orientations& group = own ? *own : *group_;
  for (const auto& k : group.seen_from(*from)) {
    CaseTag tag;
    try {
      tag = classify(k);
    } catch (const InternalError&) {
      continue;
    }
    if (tag == CaseTag::D && (depth >= kMaxReduceDepth || (!d1_applies(k) && !d2_triple(k)))) continue;
    Painter trial = paint_;
    std::vector<std::string> sub_trace;
    try {
      Machine m(trial, trace_ ? &sub_trace : nullptr, &group);
      m.dispatch(k, depth + 1);
    } catch (const InternalError&) {
      continue;
    }
    note("d2:reduce");
    if (trace_) trace_->insert(trace_->end(), sub_trace.begin(), sub_trace.end());
    paint_ = std::move(trial);
    return;
  }
  throw InternalError("case d: no reduction found");
}

}  // namespace

namespace {

Coloring run_machine(const PivotConfig& cfg, std::vector<std::string>* trace, const Orientations* group) {
  Painter paint(cfg.pu().size() + cfg.pl().size());
  Machine(paint, trace, group).dispatch(cfg, 0);
  return paint.finish();
}

}  // namespace

Coloring color_pivot(const PivotConfig& cfg, std::vector<std::string>* trace) {
  return run_machine(cfg, trace, nullptr);
}

namespace {

Coloring color_group(const Orientations& group, std::vector<std::string>* trace) {
  const auto ranked = ranked_candidates(group);
  if (ranked.empty()) throw InternalError("no pivot: the scene is not covered");
  std::string last_error;
  for (const auto& cfg : ranked) {
    std::vector<std::string> local;
    try {
      Coloring out = run_machine(cfg, trace ? &local : nullptr, &group);
      if (trace) trace->insert(trace->end(), local.begin(), local.end());
      return out;
    } catch (const InternalError& e) {
      last_error = e.what();
    } catch (const GeometryError& e) {
      last_error = e.what();
    }
  }
  throw InternalError("every pivot failed; last: " + last_error);
}

}  // namespace

Coloring color_covered(const DualScene& scene, std::vector<std::string>* trace) {
  return color_group(Orientations(Frame::from_scene(scene)), trace);
}

// ---------------------------------------------------------------------------
// Solve loop

namespace {

// Above this size attempt 0 skips the quadratic general-position check and
// relies on the engine's own exact predicates plus the retry loop.
constexpr std::size_t kValidateLimit = 512;

}  // namespace

std::string SolveReport::case_path() const {
  std::string out;
  for (const auto& s : trace) {
    if (!out.empty()) out += '/';
    out += s;
  }
  return out;
}

int max_attempts_from_env() {
  const char* v = std::getenv("HPCOLOR_MAX_ATTEMPTS");
  if (!v || !*v) return 8;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 64) return 8;
  return static_cast<int>(n);
}

SolveReport solve_report(const Instance& inst, const SolveOptions& opts) {
  SolveReport report;
  const std::size_t n = inst.size();
  if (n < 3) {
    report.coloring.colors.assign(n, Color::Blue);
    report.trace.push_back("trivial");
    return report;
  }
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    report.attempts = attempt + 1;
    report.trace.clear();
    Coloring coloring;
    try {
      const Instance work = (attempt == 0 && n > kValidateLimit) ? inst : perturb(inst, attempt);
      auto base = std::make_shared<const OrientedFrame>(Frame::from_scene(dualize(work)));
      const Coverage cov = coverage_of(*base);
      report.covered = cov.covered;
      if (cov.covered) {
        coloring = color_group(Orientations(std::move(base)), &report.trace);
      } else {
        report.trace.push_back("uncovered");
        coloring = uncovered_solve(work, uncovered_witness(work, cov.separator));
      }
    } catch (const InternalError& e) {
      last_error = e.what();
      continue;
    } catch (const GeometryError& e) {
      last_error = e.what();
      continue;
    }
    if (opts.verify && verify(inst, coloring)) {
      last_error = "coloring rejected by the verifier";
      continue;
    }
    report.coloring = std::move(coloring);
    return report;
  }
  throw InternalError("solve: " + std::to_string(opts.max_attempts) + " attempts failed; last: " + last_error);
}

Coloring solve(const Instance& inst) {
  SolveOptions opts;
  opts.max_attempts = max_attempts_from_env();
  return solve_report(inst, opts).coloring;
}

}  // namespace hpcolor
