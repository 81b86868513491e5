#include "hpcolor/geom_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <numeric>

namespace hpcolor {

int sign(const Rational& value) { return sgn(value); }

Rational parse_rational(const std::string& text) {
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  const auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Line Line::through(const Point& p, const Point& q) {
  if (p.x == q.x) throw GeneralPositionViolation("line through two points with equal x");
  Rational slope = (q.y - p.y) / (q.x - p.x);
  Rational intercept = p.y - slope * p.x;
  return {std::move(slope), std::move(intercept)};
}

namespace {

bool small_integer(const Rational& v) {
  return v.get_den() == 1 && mpz_sizeinbase(v.get_num_mpz_t(), 2) <= 62;
}

}  // namespace

Orientation orientation(const Point& p, const Point& q, const Point& r) {
  if (small_integer(p.x) && small_integer(p.y) && small_integer(q.x) && small_integer(q.y) &&
      small_integer(r.x) && small_integer(r.y)) {
    // Differences stay below 2^63 and products below 2^126.
    __extension__ typedef __int128 Wide;
    const Wide px = p.x.get_num().get_si(), py = p.y.get_num().get_si();
    const Wide det = (Wide{q.x.get_num().get_si()} - px) * (Wide{r.y.get_num().get_si()} - py) -
                     (Wide{q.y.get_num().get_si()} - py) * (Wide{r.x.get_num().get_si()} - px);
    return static_cast<Orientation>((det > 0) - (det < 0));
  }
  const Rational det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return static_cast<Orientation>(sgn(det));
}

LineSide side_of_line(const Point& pt, const Line& ln) {
  return static_cast<LineSide>(sgn(Rational(pt.y - ln.at(pt.x))));
}

namespace {

bool on_segment(const Point& p, const Segment& s) {
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

}  // namespace

bool segments_intersect(const Segment& s1, const Segment& s2) {
  const auto o1 = orientation(s1.a, s1.b, s2.a);
  const auto o2 = orientation(s1.a, s1.b, s2.b);
  const auto o3 = orientation(s2.a, s2.b, s1.a);
  const auto o4 = orientation(s2.a, s2.b, s1.b);
  if (o1 != o2 && o3 != o4 && o1 != Orientation::Collinear && o2 != Orientation::Collinear &&
      o3 != Orientation::Collinear && o4 != Orientation::Collinear) {
    return true;
  }
  if (o1 == Orientation::Collinear && on_segment(s2.a, s1)) return true;
  if (o2 == Orientation::Collinear && on_segment(s2.b, s1)) return true;
  if (o3 == Orientation::Collinear && on_segment(s1.a, s2)) return true;
  if (o4 == Orientation::Collinear && on_segment(s1.b, s2)) return true;
  return false;
}

std::vector<std::size_t> sort_values(std::span<const Rational* const> xs) {
  // Truncation to double is monotone, so distinct doubles already decide the
  // order; only equal (or non-finite) keys need the exact comparison.
  struct Key {
    double x;
    std::size_t i;
  };
  std::vector<Key> keys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) keys[i] = {xs[i]->get_d(), i};
  std::sort(keys.begin(), keys.end(), [&](const Key& a, const Key& b) {
    if (a.x != b.x && std::isfinite(a.x) && std::isfinite(b.x)) return a.x < b.x;
    return *xs[a.i] < *xs[b.i];
  });
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    order[i] = keys[i].i;
    if (i > 0 && keys[i - 1].x == keys[i].x && *xs[order[i - 1]] == *xs[order[i]]) {
      throw DuplicateX("two points share x = " + to_string(*xs[order[i]]));
    }
  }
  return order;
}

std::vector<std::size_t> sort_by_x(std::span<const Point> pts) {
  std::vector<const Rational*> xs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) xs[i] = &pts[i].x;
  return sort_values(xs);
}

HullChain hull_of_sorted(std::span<const Point> pts, std::span<const std::size_t> order,
                         ChainSide side) {
  // Upper chains turn right at every interior vertex, lower chains turn left.
  const Orientation keep = side == ChainSide::Upper ? Orientation::Right : Orientation::Left;
  std::vector<std::size_t> stack;
  stack.reserve(order.size());
  for (std::size_t idx : order) {
    while (stack.size() >= 2 &&
           orientation(pts[stack[stack.size() - 2]], pts[stack.back()], pts[idx]) != keep) {
      stack.pop_back();
    }
    stack.push_back(idx);
  }
  HullChain chain;
  chain.side = side;
  chain.source = std::move(stack);
  chain.vertices.reserve(chain.source.size());
  for (std::size_t idx : chain.source) chain.vertices.push_back(pts[idx]);
  return chain;
}

HullChain upper_hull(std::span<const Point> pts) {
  const auto order = sort_by_x(pts);
  return hull_of_sorted(pts, order, ChainSide::Upper);
}

HullChain lower_hull(std::span<const Point> pts) {
  const auto order = sort_by_x(pts);
  return hull_of_sorted(pts, order, ChainSide::Lower);
}

HullLayers hull_layers(std::span<const Point> pts, ChainSide side) {
  HullLayers result;
  result.assignment.assign(pts.size(), 0);
  std::vector<std::size_t> remaining = sort_by_x(pts);
  std::vector<char> taken(pts.size(), 0);
  while (!remaining.empty()) {
    HullChain layer = hull_of_sorted(pts, remaining, side);
    for (std::size_t idx : layer.source) {
      taken[idx] = 1;
      result.assignment[idx] = result.layers.size();
    }
    std::erase_if(remaining, [&](std::size_t idx) { return taken[idx] != 0; });
    result.layers.push_back(std::move(layer));
  }
  return result;
}

Rational chain_eval(const HullChain& chain, const Rational& x) {
  if (!chain.spans(x)) throw OutOfSpan("x = " + to_string(x) + " outside chain span");
  const auto& v = chain.vertices;
  auto it = std::lower_bound(v.begin(), v.end(), x,
                             [](const Point& p, const Rational& val) { return p.x < val; });
  if (it->x == x) return it->y;
  const Point& right = *it;
  const Point& left = *(it - 1);
  return left.y + (right.y - left.y) * (x - left.x) / (right.x - left.x);
}

bool region_contains(const HullChain& chain, const Point& pt) {
  if (!chain.spans(pt.x)) return false;
  const Rational boundary = chain_eval(chain, pt.x);
  return chain.side == ChainSide::Upper ? pt.y <= boundary : pt.y >= boundary;
}

namespace {

// Touching vertex strictly right of q; the candidate range is a suffix.
Tangent tangent_toward_right(const Point& q, const HullChain& chain) {
  const auto& v = chain.vertices;
  auto first = std::upper_bound(v.begin(), v.end(), q.x,
                                [](const Rational& val, const Point& p) { return val < p.x; });
  if (first == v.end()) throw DegenerateTangent("no chain vertex right of the query point");
  const std::size_t begin = static_cast<std::size_t>(first - v.begin());
  // Along the suffix the turn q -> v[i] -> v[i+1] flips exactly once.
  const Orientation descending =
      chain.side == ChainSide::Lower ? Orientation::Right : Orientation::Left;
  std::size_t lo = begin;
  std::size_t hi = v.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (orientation(q, v[mid], v[mid + 1]) == descending) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  Tangent t{Line::through(q, v[lo]), lo, std::nullopt};
  if (lo + 1 < v.size() && orientation(q, v[lo], v[lo + 1]) == Orientation::Collinear) {
    t.touch2 = lo + 1;
  }
  return t;
}

HullChain mirrored(const HullChain& chain) {
  HullChain m;
  m.side = chain.side;
  m.vertices.reserve(chain.size());
  for (auto it = chain.vertices.rbegin(); it != chain.vertices.rend(); ++it) {
    m.vertices.push_back({-it->x, it->y});
  }
  m.source.assign(chain.source.rbegin(), chain.source.rend());
  return m;
}

}  // namespace

Tangent tangent_from_point(const Point& q, const HullChain& chain, TangentPick pick) {
  if (chain.empty()) throw DegenerateTangent("empty chain");
  if (region_contains(chain, q)) throw DegenerateTangent("query point inside hull region");
  Tangent t;
  if (pick == TangentPick::TowardRight) {
    t = tangent_toward_right(q, chain);
  } else {
    const std::size_t last = chain.size() - 1;
    Tangent m = tangent_toward_right({-q.x, q.y}, mirrored(chain));
    t.touch = last - m.touch;
    if (m.touch2) t.touch2 = last - *m.touch2;
    if (t.touch2 && *t.touch2 < t.touch) std::swap(*t.touch2, t.touch);
    t.line = Line::through(q, chain.vertices[t.touch]);
  }
  // Every vertex must sit weakly on the region side.
  const LineSide bad = chain.side == ChainSide::Lower ? LineSide::Below : LineSide::Above;
  for (std::size_t idx : {t.touch, t.touch == 0 ? t.touch : t.touch - 1,
                          t.touch + 1 < chain.size() ? t.touch + 1 : t.touch}) {
    if (side_of_line(chain.vertices[idx], t.line) == bad) {
      throw DegenerateTangent("no tangent of the requested kind");
    }
  }
  return t;
}

bool point_in_triangle_interior(const Point& pt, const Point& a, const Point& b, const Point& c) {
  const auto base = orientation(a, b, c);
  if (base == Orientation::Collinear) throw DegenerateTriangle("collinear triangle");
  return orientation(a, b, pt) == base && orientation(b, c, pt) == base &&
         orientation(c, a, pt) == base;
}

}  // namespace hpcolor
