#include "hpcolor/cli_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace hpcolor {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Formats

std::string rational_text(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Rational scalar(const json& v, const char* what) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(mpz_class(v.dump(), 10));
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
  throw InvalidInput(std::string(what) + " must be a rational string or an integer");
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("halfplanes") || !doc["halfplanes"].is_array()) {
    throw InvalidInput("instance needs a \"halfplanes\" array");
  }
  Instance inst;
  for (const auto& h : doc["halfplanes"]) {
    if (!h.is_object() || !h.contains("a") || !h.contains("b") || !h.contains("side")) {
      throw InvalidInput("each half-plane needs \"a\", \"b\" and \"side\"");
    }
    HalfPlane hp;
    hp.a = scalar(h["a"], "a");
    hp.b = scalar(h["b"], "b");
    const auto& side = h["side"];
    if (side == "upper") {
      hp.side = Side::Upper;
    } else if (side == "lower") {
      hp.side = Side::Lower;
    } else {
      throw InvalidInput("side must be \"upper\" or \"lower\"");
    }
    inst.halfplanes.push_back(std::move(hp));
  }
  return inst;
}

std::string print_instance(const Instance& inst) {
  json arr = json::array();
  for (const auto& h : inst.halfplanes) {
    arr.push_back({{"a", rational_text(h.a)}, {"b", rational_text(h.b)},
                   {"side", h.side == Side::Upper ? "upper" : "lower"}});
  }
  return json{{"halfplanes", arr}}.dump(2) + "\n";
}

Coloring parse_coloring(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("colors") || !doc["colors"].is_array()) {
    throw InvalidInput("coloring needs a \"colors\" array");
  }
  Coloring c;
  for (const auto& v : doc["colors"]) {
    if (v == "blue") {
      c.colors.push_back(Color::Blue);
    } else if (v == "red") {
      c.colors.push_back(Color::Red);
    } else {
      throw InvalidInput("colors must be \"blue\" or \"red\"");
    }
  }
  return c;
}

namespace {
const char* color_name(Color c) { return c == Color::Blue ? "blue" : "red"; }
}  // namespace

std::string print_coloring(const Coloring& coloring) {
  json arr = json::array();
  for (Color c : coloring.colors) arr.push_back(color_name(c));
  return json{{"colors", arr}}.dump(2) + "\n";
}

std::string print_violation(const Violation& v) {
  json doc{{"witness", {{"x", rational_text(v.witness.x)}, {"y", rational_text(v.witness.y)}}},
           {"covering", v.covering},
           {"color", color_name(v.color)}};
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed for " + path);
}

// ---------------------------------------------------------------------------
// Generation

GenMode parse_gen_mode(const std::string& name) {
  if (name == "covered") return GenMode::Covered;
  if (name == "uncovered") return GenMode::Uncovered;
  if (name == "degenerate") return GenMode::Degenerate;
  if (name == "random") return GenMode::Random;
  throw InvalidInput("unknown mode '" + name + "'");
}

std::string to_string(GenMode mode) {
  switch (mode) {
    case GenMode::Covered: return "covered";
    case GenMode::Uncovered: return "uncovered";
    case GenMode::Degenerate: return "degenerate";
    case GenMode::Random: return "random";
  }
  return "?";
}

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// integers are drawn by plain reduction to keep files identical everywhere.
class Draw {
public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::int64_t in(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
  }
  bool coin() { return (rng_() >> 63) != 0; }

  // n distinct integers from [lo, hi].
  std::vector<std::int64_t> distinct(std::size_t n, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span <= 4 * static_cast<std::uint64_t>(n)) {
      std::vector<std::int64_t> all(span);
      for (std::uint64_t i = 0; i < span; ++i) all[i] = lo + static_cast<std::int64_t>(i);
      for (std::size_t i = 0; i < n; ++i) {
        std::swap(all[i], all[i + rng_() % (span - i)]);
        out.push_back(all[i]);
      }
      return out;
    }
    std::unordered_set<std::int64_t> used;
    while (out.size() < n) {
      const auto v = in(lo, hi);
      if (used.insert(v).second) out.push_back(v);
    }
    return out;
  }

private:
  std::mt19937_64 rng_;
};

HalfPlane make(std::int64_t a, std::int64_t b, bool upper) {
  return {Rational(static_cast<long>(a)), Rational(static_cast<long>(b)), upper ? Side::Upper : Side::Lower};
}

Instance random_instance(Draw& d, std::size_t n, std::int64_t bound) {
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = d.in(-bound, bound);
    const auto b = d.in(-bound, bound);
    inst.halfplanes.push_back(make(a, b, d.coin()));
  }
  return inst;
}

// Upper tips pushed above the x-axis and lower tips below it: any overlap of
// the two tip spans makes the dual hull regions meet.
Instance covered_candidate(Draw& d, std::size_t n, std::int64_t bound) {
  const std::int64_t slope_bound = std::max<std::int64_t>(bound, static_cast<std::int64_t>(n));
  const auto slopes = d.distinct(n, -slope_bound, slope_bound);
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    const bool upper = d.coin();
    const auto b = d.in(0, bound) + 1;
    inst.halfplanes.push_back(make(slopes[i], upper ? b : -b, upper));
  }
  return inst;
}

Instance uncovered_instance(Draw& d, std::size_t n, std::int64_t bound) {
  // Dual separator y = s*x + t: upper tips strictly below it, lower tips strictly above.
  const auto s = d.in(-bound, bound);
  const auto t = d.in(-bound, bound);
  const std::int64_t slope_bound = std::max<std::int64_t>(bound, static_cast<std::int64_t>(n));
  const auto xs = d.distinct(n, -slope_bound, slope_bound);
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    const bool upper = d.coin();
    const auto gap = d.in(1, bound + 1);
    const auto y = s * xs[i] + t + (upper ? -gap : gap);
    inst.halfplanes.push_back(make(-xs[i], y, upper));
  }
  return inst;
}

}  // namespace

Instance generate(const GenSpec& spec) {
  if (spec.bound < 1) throw InvalidInput("bound must be positive");
  Draw d(spec.seed);
  const std::size_t n = spec.n;
  switch (spec.mode) {
    case GenMode::Random: return random_instance(d, n, spec.bound);
    case GenMode::Uncovered: return uncovered_instance(d, n, spec.bound);
    case GenMode::Degenerate: {
      Instance inst = random_instance(d, n, spec.bound);
      auto& h = inst.halfplanes;
      if (n >= 2) {
        h[1].a = h[0].a;
        h[1].b = h[0].b + 1;
      }
      if (n >= 5) {
        const Rational x0(static_cast<long>(d.in(-spec.bound, spec.bound)));
        const Rational y0(static_cast<long>(d.in(-spec.bound, spec.bound)));
        for (std::size_t i = 2; i < 5; ++i) {
          h[i].a = Rational(static_cast<long>(i) - 3 + h[0].a);
          h[i].b = y0 - h[i].a * x0;
        }
      }
      return inst;
    }
    case GenMode::Covered: {
      if (n < 3) return covered_candidate(d, n, spec.bound);
      for (int tries = 0; tries < 10000; ++tries) {
        Instance inst = covered_candidate(d, n, spec.bound);
        if (coverage(dualize(inst)).covered) return inst;
      }
      throw InvalidInput("could not generate a covered instance");
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string num(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", r.get_d());
  return buf;
}

using Polygon = std::vector<Point>;

// Part of a convex polygon where sign(y - (a*x + b)) * dir >= 0.
Polygon cut(const Polygon& poly, const Line& ln, int dir) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const Rational vp = dir * (p.y - ln.at(p.x));
    const Rational vq = dir * (q.y - ln.at(q.x));
    if (sgn(vp) >= 0) out.push_back(p);
    if ((sgn(vp) > 0 && sgn(vq) < 0) || (sgn(vp) < 0 && sgn(vq) > 0)) {
      const Rational t = vp / (vp - vq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

bool has_area(const Polygon& poly) {
  if (poly.size() < 3) return false;
  Rational area = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    area += p.x * q.y - q.x * p.y;
  }
  return sgn(area) != 0;
}

}  // namespace

Window parse_window(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      v.push_back(parse_rational(part));
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(std::string("window: ") + e.what());
    }
  }
  if (v.size() != 4) throw InvalidInput("window needs four values x0,y0,x1,y1");
  Window w{v[0], v[1], v[2], v[3]};
  if (!(w.x0 < w.x1 && w.y0 < w.y1)) throw InvalidInput("window is degenerate");
  return w;
}

Window default_window(const Instance& inst) {
  std::optional<Window> box;
  const auto& hs = inst.halfplanes;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      if (hs[i].a == hs[j].a) continue;
      const Rational x = (hs[j].b - hs[i].b) / (hs[i].a - hs[j].a);
      const Rational y = hs[i].a * x + hs[i].b;
      if (!box) {
        box = Window{x, y, x, y};
      } else {
        box->x0 = std::min(box->x0, x);
        box->x1 = std::max(box->x1, x);
        box->y0 = std::min(box->y0, y);
        box->y1 = std::max(box->y1, y);
      }
    }
  }
  if (!box) return {-10, -10, 10, 10};
  const Rational mx = (box->x1 - box->x0) / 4 + 1;
  const Rational my = (box->y1 - box->y0) / 4 + 1;
  return {box->x0 - mx, box->y0 - my, box->x1 + mx, box->y1 + my};
}

std::string render_svg(const Instance& inst, const std::optional<Coloring>& coloring, const Window& w) {
  if (coloring && coloring->size() != inst.size()) throw InvalidInput("coloring length does not match instance");
  // Split the window into the arrangement's cells.
  std::vector<Polygon> cells{{{w.x0, w.y0}, {w.x1, w.y0}, {w.x1, w.y1}, {w.x0, w.y1}}};
  for (const auto& h : inst.halfplanes) {
    std::vector<Polygon> next;
    for (const auto& cell : cells) {
      for (int dir : {1, -1}) {
        Polygon part = cut(cell, h.boundary(), dir);
        if (has_area(part)) next.push_back(std::move(part));
      }
    }
    cells = std::move(next);
  }
  const Rational width = w.x1 - w.x0;
  const Rational height = w.y1 - w.y0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(w.x0) << ' ' << num(-w.y1) << ' '
      << num(width) << ' ' << num(height) << "\" width=\"800\" height=\"" << num(800 * height / width) << "\">\n";
  out << "<rect x=\"" << num(w.x0) << "\" y=\"" << num(-w.y1) << "\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" fill=\"white\"/>\n";
  out << "<g class=\"deep-cells\" fill=\"#c8c8c8\" stroke=\"none\">\n";
  for (const auto& cell : cells) {
    Point c{0, 0};
    for (const auto& p : cell) {
      c.x += p.x;
      c.y += p.y;
    }
    const Rational k(static_cast<long>(cell.size()));
    c.x /= k;
    c.y /= k;
    if (depth(inst, c).depth < 3) continue;
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < cell.size(); ++i) {
      out << (i ? " " : "") << num(cell[i].x) << ',' << num(-cell[i].y);
    }
    out << "\"/>\n";
  }
  out << "</g>\n<g class=\"boundaries\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\">\n";
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& h = inst.halfplanes[i];
    Rational lo = w.x0, hi = w.x1;
    if (sgn(h.a) == 0) {
      if (h.b < w.y0 || h.b > w.y1) continue;
    } else {
      Rational xa = (w.y0 - h.b) / h.a;
      Rational xb = (w.y1 - h.b) / h.a;
      if (xb < xa) std::swap(xa, xb);
      lo = std::max(lo, xa);
      hi = std::min(hi, xb);
      if (!(lo < hi)) continue;
    }
    const char* stroke = !coloring ? "#555555" : (coloring->colors[i] == Color::Blue ? "#1f5fbf" : "#d03030");
    out << "<line x1=\"" << num(lo) << "\" y1=\"" << num(-h.boundary().at(lo)) << "\" x2=\"" << num(hi)
        << "\" y2=\"" << num(-h.boundary().at(hi)) << "\" stroke=\"" << stroke << "\" vector-effect=\"non-scaling-stroke\""
        << (h.side == Side::Lower ? " stroke-dasharray=\"6 3\"" : "") << "/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Benchmark

std::vector<BenchRecord> run_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed, int repetitions) {
  std::vector<BenchRecord> rows;
  SolveOptions opts;
  opts.verify = false;
  opts.max_attempts = max_attempts_from_env();
  for (std::size_t n : sizes) {
    GenSpec spec;
    spec.n = n;
    spec.mode = GenMode::Covered;
    spec.seed = seed + n;
    spec.bound = std::int64_t{1} << 30;
    const Instance inst = generate(spec);
    std::vector<double> times;
    BenchRecord rec;
    rec.n = n;
    for (int r = 0; r < std::max(repetitions, 1); ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const SolveReport rep = solve_report(inst, opts);
      const auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
      rec.case_path = rep.case_path();
      rec.attempts = rep.attempts;
    }
    std::sort(times.begin(), times.end());
    rec.seconds = times[times.size() / 2];
    rows.push_back(std::move(rec));
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRecord>& rows) {
  std::ostringstream out;
  out << "n,seconds,case_path\n";
  for (const auto& r : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
    out << r.n << ',' << buf << ',' << r.case_path << '\n';
  }
  return out.str();
}

}  // namespace hpcolor
