#pragma once

// File formats, seeded instance generation, SVG rendering and the scaling
// benchmark behind the command-line tool.

#include "hpcolor/coloring_engine.hpp"
#include "hpcolor/verification.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpcolor {

/// Malformed or ill-shaped input (exit code 3 at the command line).
class InvalidInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Canonical "num/den" form, used for every serialized scalar.
std::string rational_text(const Rational& r);

Instance parse_instance(const std::string& json_text);
std::string print_instance(const Instance& inst);
Coloring parse_coloring(const std::string& json_text);
std::string print_coloring(const Coloring& coloring);
std::string print_violation(const Violation& v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

enum class GenMode : std::uint8_t { Covered, Uncovered, Degenerate, Random };

GenMode parse_gen_mode(const std::string& name);
std::string to_string(GenMode mode);

struct GenSpec {
  std::size_t n = 8;
  GenMode mode = GenMode::Random;
  std::uint64_t seed = 0;
  std::int64_t bound = 100;  ///< slopes and intercepts lie in [-bound, bound] before shifts
};

/// Deterministic in (n, mode, seed, bound). Covered instances have distinct
/// slopes; uncovered ones leave some point outside every half-plane;
/// degenerate ones contain a parallel pair and, from n = 5, a concurrent triple.
Instance generate(const GenSpec& spec);

struct Window {
  Rational x0, y0, x1, y1;
};

/// Parses "x0,y0,x1,y1"; throws InvalidInput unless x0 < x1 and y0 < y1.
Window parse_window(const std::string& text);
/// Box around every pairwise crossing with a margin.
Window default_window(const Instance& inst);

/// Boundaries clipped to the window, depth >= 3 cells shaded, colors as strokes.
std::string render_svg(const Instance& inst, const std::optional<Coloring>& coloring, const Window& window);

struct BenchRecord {
  std::size_t n = 0;
  double seconds = 0;  ///< median over repetitions, solve only
  std::string case_path;
  int attempts = 0;
};

std::vector<BenchRecord> run_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed, int repetitions);
std::string bench_csv(const std::vector<BenchRecord>& rows);

}  // namespace hpcolor
