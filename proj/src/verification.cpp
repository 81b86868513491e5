#include "hpcolor/verification.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace hpcolor {

DepthResult depth(const Instance& inst, const Point& pt) {
  DepthResult r;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (inst.halfplanes[i].contains(pt)) r.covering.push_back(i);
  }
  r.depth = r.covering.size();
  return r;
}

namespace {

struct Direction {
  Rational dx;
  Rational dy;
};

// Directions strictly inside each of the 2k wedges around a vertex crossed by
// lines with the given (sorted, distinct) slopes.
std::vector<Direction> wedge_directions(const std::vector<Rational>& slopes) {
  std::vector<Direction> dirs;
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
    Rational mid = (slopes[i] + slopes[i + 1]) / 2;
    dirs.push_back({1, mid});
    dirs.push_back({-1, -mid});
  }
  dirs.push_back({0, 1});
  dirs.push_back({0, -1});
  return dirs;
}

}  // namespace

std::vector<Point> arrangement_samples(const Instance& inst) {
  std::vector<Line> lines;
  {
    std::set<std::pair<Rational, Rational>> seen;
    for (const auto& h : inst.halfplanes) {
      if (seen.insert({h.a, h.b}).second) lines.push_back(h.boundary());
    }
  }
  std::vector<Point> samples;
  if (lines.empty()) {
    samples.push_back({0, 0});
    return samples;
  }

  std::map<std::pair<Rational, Rational>, std::set<std::size_t>> vertices;
  std::vector<std::vector<Rational>> crossings(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].slope == lines[j].slope) continue;
      Rational x = (lines[j].intercept - lines[i].intercept) / (lines[i].slope - lines[j].slope);
      Rational y = lines[i].at(x);
      crossings[i].push_back(x);
      crossings[j].push_back(x);
      auto& through = vertices[{std::move(x), std::move(y)}];
      through.insert(i);
      through.insert(j);
    }
  }

  if (vertices.empty()) {
    // All boundaries parallel: one strip sample between each consecutive pair.
    std::vector<Rational> intercepts;
    for (const auto& ln : lines) intercepts.push_back(ln.intercept);
    std::sort(intercepts.begin(), intercepts.end());
    auto at_zero = [](const Rational& off) { return Point{0, off}; };
    samples.push_back(at_zero(intercepts.front() - 1));
    for (std::size_t i = 0; i < intercepts.size(); ++i) {
      samples.push_back(at_zero(intercepts[i]));
      if (i + 1 < intercepts.size()) {
        samples.push_back(at_zero((intercepts[i] + intercepts[i + 1]) / 2));
      }
    }
    samples.push_back(at_zero(intercepts.back() + 1));
    return samples;
  }

  for (const auto& [key, through] : vertices) {
    const Point v{key.first, key.second};
    samples.push_back(v);
    std::vector<Rational> slopes;
    for (std::size_t li : through) slopes.push_back(lines[li].slope);
    std::sort(slopes.begin(), slopes.end());
    const auto dirs = wedge_directions(slopes);

    // Largest step before any other boundary changes sign, halved, capped at 1.
    Rational step = 1;
    for (std::size_t li = 0; li < lines.size(); ++li) {
      if (through.count(li) != 0) continue;
      const Rational gap = v.y - lines[li].at(v.x);
      for (const auto& d : dirs) {
        const Rational rate = d.dy - lines[li].slope * d.dx;
        if (sgn(rate) == 0) continue;
        const Rational hit = -gap / rate;
        if (sgn(hit) > 0 && hit / 2 < step) step = hit / 2;
      }
    }
    for (const auto& d : dirs) samples.push_back({v.x + step * d.dx, v.y + step * d.dy});
  }

  for (std::size_t li = 0; li < lines.size(); ++li) {
    auto& xs = crossings[li];
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) {
      samples.push_back({0, lines[li].at(0)});
      continue;
    }
    const Rational left = xs.front() - 1;
    samples.push_back({left, lines[li].at(left)});
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const Rational mid = (xs[i] + xs[i + 1]) / 2;
      samples.push_back({mid, lines[li].at(mid)});
    }
    const Rational right = xs.back() + 1;
    samples.push_back({right, lines[li].at(right)});
  }
  return samples;
}

std::vector<Hyperedge> hyperedges(const Instance& inst, std::size_t k) {
  std::vector<Hyperedge> out;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& s : arrangement_samples(inst)) {
    auto d = depth(inst, s);
    if (d.depth < k || d.depth == 0) continue;
    if (seen.insert(d.covering).second) out.push_back({std::move(d.covering), s});
  }
  return out;
}

namespace {

__extension__ typedef __int128 Wide;

int sign_of(const Rational& v) { return sgn(v); }
int sign_of(Wide v) { return (v > 0) - (v < 0); }

// Boundary lines in a common number type. For integer-scalable inputs the
// lines are multiplied by one positive common denominator, which keeps every
// sign below unchanged and lets the scan run in 128-bit integers.
template <class T>
struct ScanLine {
  T a;
  T b;
  bool upper = true;
  bool blue = true;
};

// Sign of boundary k at the crossing of line i with a line whose crossing
// x-coordinate is num/den (den > 0).
template <class T>
int offset_sign(const ScanLine<T>& i, const ScanLine<T>& k, const T& num, const T& den) {
  return sign_of((k.a - i.a) * num + (k.b - i.b) * den);
}

struct Probe {
  std::size_t vertex_line = 0;  // owning line
  std::size_t other_line = 0;   // any line crossing it at the vertex
  int dir_kind = 0;             // 0 vertex, 1 wedge between slopes, 2 along a slope, 3 vertical
  std::size_t s1 = 0, s2 = 0;   // slope owners (line indices)
  int orient = 1;               // +1 toward larger x (or up), -1 opposite
};

// Scans the neighbourhood of every arrangement vertex. Every face and edge of
// an arrangement with at least one vertex touches a vertex, so this visits
// all covering sets. Returns the first monochromatic probe.
template <class T>
std::optional<Probe> scan_vertices(const std::vector<ScanLine<T>>& lines, std::size_t k,
                                   bool& any_vertex) {
  const std::size_t n = lines.size();
  any_vertex = false;
  struct Cross {
    T num;
    T den;
    std::size_t j;
  };
  std::vector<Cross> cross;
  std::vector<int> val(n);
  std::vector<std::size_t> through;
  for (std::size_t i = 0; i < n; ++i) {
    cross.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || lines[j].a == lines[i].a) continue;
      T num = lines[j].b - lines[i].b;
      T den = lines[i].a - lines[j].a;
      if (sign_of(den) < 0) {
        num = -num;
        den = -den;
      }
      cross.push_back({num, den, j});
    }
    if (cross.empty()) continue;
    any_vertex = true;
    std::sort(cross.begin(), cross.end(), [](const Cross& l, const Cross& r) {
      return sign_of(l.num * r.den - r.num * l.den) < 0;
    });
    for (std::size_t g = 0; g < cross.size();) {
      std::size_t e = g + 1;
      while (e < cross.size() && sign_of(cross[g].num * cross[e].den - cross[e].num * cross[g].den) == 0) ++e;
      bool owned = true;
      for (std::size_t t = g; t < e; ++t) owned = owned && cross[t].j > i;
      // Parallel copies of line i also pass through; they must not own it either.
      if (owned) {
        through.clear();
        std::size_t base = 0, base_blue = 0;
        for (std::size_t q = 0; q < n; ++q) {
          val[q] = q == i ? 0 : offset_sign(lines[i], lines[q], cross[g].num, cross[g].den);
          if (val[q] == 0) {
            through.push_back(q);
          } else if ((val[q] > 0) == lines[q].upper) {
            ++base;
            if (lines[q].blue) ++base_blue;
          }
        }
        if (through.front() < i) owned = false;
        if (owned) {
          // Distinct slopes through the vertex, ascending.
          std::vector<std::size_t> slopes = through;
          std::sort(slopes.begin(), slopes.end(), [&](std::size_t l, std::size_t r) {
            return sign_of(lines[l].a - lines[r].a) < 0;
          });
          slopes.erase(std::unique(slopes.begin(), slopes.end(),
                                   [&](std::size_t l, std::size_t r) { return lines[l].a == lines[r].a; }),
                       slopes.end());
          auto check = [&](auto&& contains) -> bool {
            std::size_t total = base, blue = base_blue;
            for (std::size_t q : through) {
              if (contains(lines[q])) {
                ++total;
                if (lines[q].blue) ++blue;
              }
            }
            return total >= k && total > 0 && (blue == 0 || blue == total);
          };
          Probe probe{i, cross[g].j, 0, 0, 0, 1};
          if (check([](const ScanLine<T>&) { return true; })) return probe;
          for (int o : {1, -1}) {
            // Along each line direction: contained iff o*(s - a) <= 0 for upper.
            for (std::size_t s : slopes) {
              auto in = [&](const ScanLine<T>& q) {
                const int d = o * sign_of(lines[s].a - q.a);
                return q.upper ? d <= 0 : d >= 0;
              };
              if (check(in)) return Probe{i, cross[g].j, 2, s, s, o};
            }
            // Strictly inside the wedge between consecutive slopes.
            for (std::size_t t = 0; t + 1 < slopes.size(); ++t) {
              const auto& l1 = lines[slopes[t]];
              const auto& l2 = lines[slopes[t + 1]];
              auto in = [&](const ScanLine<T>& q) {
                const int d = o * sign_of(l1.a + l2.a - q.a - q.a);
                return q.upper ? d <= 0 : d >= 0;
              };
              if (check(in)) return Probe{i, cross[g].j, 1, slopes[t], slopes[t + 1], o};
            }
            // Vertical wedges: above every line (o=+1) or below (o=-1).
            auto in = [&](const ScanLine<T>& q) { return q.upper ? o < 0 : o > 0; };
            if (check(in)) return Probe{i, cross[g].j, 3, 0, 0, o};
          }
        }
      }
      g = e;
    }
  }
  return std::nullopt;
}

Point probe_point(const Instance& inst, const Probe& pr) {
  const Line li = inst.halfplanes[pr.vertex_line].boundary();
  const Line lj = inst.halfplanes[pr.other_line].boundary();
  const Rational x = (lj.intercept - li.intercept) / (li.slope - lj.slope);
  const Point v{x, li.at(x)};
  if (pr.dir_kind == 0) return v;
  Direction d{0, 1};
  if (pr.dir_kind == 1) {
    d = {2, inst.halfplanes[pr.s1].a + inst.halfplanes[pr.s2].a};
  } else if (pr.dir_kind == 2) {
    d = {1, inst.halfplanes[pr.s1].a};
  }
  d.dx *= pr.orient;
  d.dy *= pr.orient;
  // Stay below half the distance to the first other boundary met along d.
  Rational step = 1;
  for (const auto& h : inst.halfplanes) {
    const Line ln = h.boundary();
    const Rational gap = v.y - ln.at(v.x);
    if (sgn(gap) == 0) continue;
    const Rational rate = d.dy - ln.slope * d.dx;
    if (sgn(rate) == 0) continue;
    const Rational hit = -gap / rate;
    if (sgn(hit) > 0 && hit / 2 < step) step = hit / 2;
  }
  return {v.x + step * d.dx, v.y + step * d.dy};
}

bool fits_wide(const mpz_class& z) {
  static const mpz_class limit = mpz_class(1) << 59;
  return abs(z) < limit;
}

Wide to_wide(const mpz_class& z) {
  // |z| < 2^59 fits a signed long on LP64.
  return static_cast<Wide>(z.get_si());
}

std::optional<Violation> violation_at(const Instance& inst, const Coloring& coloring, const Point& s,
                                      std::size_t k) {
  auto d = depth(inst, s);
  if (d.depth < k || d.depth == 0) return std::nullopt;
  bool blue = false, red = false;
  for (std::size_t i : d.covering) (coloring.colors[i] == Color::Blue ? blue : red) = true;
  if (blue && red) return std::nullopt;
  return Violation{s, std::move(d.covering), blue ? Color::Blue : Color::Red};
}

}  // namespace

std::optional<Violation> verify(const Instance& inst, const Coloring& coloring, std::size_t k) {
  if (coloring.size() != inst.size()) {
    throw LengthMismatch("coloring has " + std::to_string(coloring.size()) + " entries, instance has " +
                         std::to_string(inst.size()));
  }
  if (inst.size() < k) return std::nullopt;

  mpz_class common = 1;
  for (const auto& h : inst.halfplanes) {
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), h.a.get_den_mpz_t());
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), h.b.get_den_mpz_t());
  }
  bool small = fits_wide(common);
  std::vector<mpz_class> sa, sb;
  for (const auto& h : inst.halfplanes) {
    if (!small) break;
    sa.emplace_back(h.a.get_num() * (common / h.a.get_den()));
    sb.emplace_back(h.b.get_num() * (common / h.b.get_den()));
    small = fits_wide(sa.back()) && fits_wide(sb.back());
  }

  bool any_vertex = false;
  std::optional<Probe> hit;
  if (small) {
    std::vector<ScanLine<Wide>> lines;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      lines.push_back({to_wide(sa[i]), to_wide(sb[i]), inst.halfplanes[i].side == Side::Upper,
                       coloring.colors[i] == Color::Blue});
    }
    hit = scan_vertices(lines, k, any_vertex);
  } else {
    std::vector<ScanLine<Rational>> lines;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const auto& h = inst.halfplanes[i];
      lines.push_back({h.a, h.b, h.side == Side::Upper, coloring.colors[i] == Color::Blue});
    }
    hit = scan_vertices(lines, k, any_vertex);
  }
  if (hit) {
    const Point s = probe_point(inst, *hit);
    if (auto v = violation_at(inst, coloring, s, k)) return v;
    throw std::logic_error("verify: probe and witness disagree");
  }
  if (any_vertex) return std::nullopt;
  // No vertex at all: every boundary is parallel; the sample set is small.
  for (const auto& s : arrangement_samples(inst)) {
    if (auto v = violation_at(inst, coloring, s, k)) return v;
  }
  return std::nullopt;
}

namespace {

std::vector<std::uint32_t> edge_masks(const Instance& inst, std::size_t k) {
  if (inst.size() > kOracleMaxSize) {
    throw TooLarge("oracle limited to " + std::to_string(kOracleMaxSize) + " half-planes");
  }
  std::vector<std::uint32_t> masks;
  for (const auto& e : hyperedges(inst, k)) {
    std::uint32_t m = 0;
    for (std::size_t i : e.covering) m |= std::uint32_t{1} << i;
    masks.push_back(m);
  }
  return masks;
}

// Bit i of `red` set means half-plane i is red.
template <class OnGood>
void enumerate(std::size_t n, const std::vector<std::uint32_t>& masks, OnGood&& on_good) {
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t lex = 0; lex < total; ++lex) {
    std::uint32_t red = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((lex >> (n - 1 - i)) & 1U) red |= std::uint32_t{1} << i;
    }
    bool good = true;
    for (std::uint32_t m : masks) {
      const std::uint32_t r = red & m;
      if (r == 0 || r == m) {
        good = false;
        break;
      }
    }
    if (!good) continue;
    Coloring c;
    c.colors.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.colors[i] = (red >> i) & 1U ? Color::Red : Color::Blue;
    if (!on_good(std::move(c))) return;
  }
}

}  // namespace

std::optional<Coloring> oracle(const Instance& inst, std::size_t k) {
  const auto masks = edge_masks(inst, k);
  std::optional<Coloring> found;
  enumerate(inst.size(), masks, [&](Coloring c) {
    found = std::move(c);
    return false;
  });
  return found;
}

std::vector<Coloring> oracle_all(const Instance& inst, std::size_t k) {
  const auto masks = edge_masks(inst, k);
  std::vector<Coloring> all;
  enumerate(inst.size(), masks, [&](Coloring c) {
    all.push_back(std::move(c));
    return true;
  });
  return all;
}

}  // namespace hpcolor
