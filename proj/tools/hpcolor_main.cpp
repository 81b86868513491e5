// hpcolor: color, verify, oracle, gen, render, bench.
// Exit codes: 0 success, 2 verification failure, 3 invalid input, 4 no coloring exists.

#include "hpcolor/cli_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

using namespace hpcolor;

constexpr int kOk = 0;
constexpr int kNotGood = 2;
constexpr int kInvalid = 3;
constexpr int kNoColoring = 4;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

int cmd_color(const std::string& in, const std::string& out, bool no_verify) {
  const Instance inst = parse_instance(read_file(in));
  SolveOptions opts;
  opts.verify = !no_verify;
  opts.max_attempts = max_attempts_from_env();
  SolveReport rep;
  try {
    rep = solve_report(inst, opts);
  } catch (const InternalError& e) {
    std::cerr << "color: " << e.what() << '\n';
    return kNotGood;
  }
  emit(out, print_coloring(rep.coloring));
  return kOk;
}

int cmd_verify(const std::string& in, const std::string& col, int k) {
  const Instance inst = parse_instance(read_file(in));
  const Coloring coloring = parse_coloring(read_file(col));
  if (coloring.size() != inst.size()) throw InvalidInput("coloring length does not match instance");
  if (k < 1) throw InvalidInput("threshold must be at least 1");
  if (auto v = verify(inst, coloring, static_cast<std::size_t>(k))) {
    std::cout << print_violation(*v);
    return kNotGood;
  }
  std::cout << "Ok\n";
  return kOk;
}

int cmd_oracle(const std::string& in, int k, bool all) {
  const Instance inst = parse_instance(read_file(in));
  if (k < 1) throw InvalidInput("threshold must be at least 1");
  try {
    if (all) {
      const auto found = oracle_all(inst, static_cast<std::size_t>(k));
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : found) arr.push_back(nlohmann::json::parse(print_coloring(c)));
      std::cout << nlohmann::json{{"colorings", arr}}.dump(2) << '\n';
      return found.empty() ? kNoColoring : kOk;
    }
    const auto found = oracle(inst, static_cast<std::size_t>(k));
    if (!found) {
      std::cout << "null\n";
      return kNoColoring;
    }
    std::cout << print_coloring(*found);
    return kOk;
  } catch (const TooLarge& e) {
    throw InvalidInput(e.what());
  }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(part, &used);
      if (used != part.size() || v == 0) throw std::invalid_argument(part);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw InvalidInput("bad size '" + part + "'");
    }
  }
  if (out.empty()) throw InvalidInput("no sizes given");
  if (!std::is_sorted(out.begin(), out.end())) throw InvalidInput("sizes must be ascending");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Good 2-colorings of half-plane families"};
  app.require_subcommand(1);

  std::string in, out, col, window, mode = "random", sizes, csv;
  bool no_verify = false, all = false;
  int k = kDefaultThreshold, reps = 5;
  std::size_t n = 8;
  std::uint64_t seed = 0;
  std::int64_t bound = 100;

  auto* color = app.add_subcommand("color", "Compute a good coloring");
  color->add_option("input", in, "Instance JSON")->required();
  color->add_option("output", out, "Coloring JSON (default stdout)");
  color->add_flag("--no-verify", no_verify, "Skip the final check on the input instance");

  auto* ver = app.add_subcommand("verify", "Check a coloring");
  ver->add_option("input", in, "Instance JSON")->required();
  ver->add_option("coloring", col, "Coloring JSON")->required();
  ver->add_option("--threshold", k, "Minimum depth of a constrained point");

  auto* orc = app.add_subcommand("oracle", "Exhaustive search (n <= 20)");
  orc->add_option("input", in, "Instance JSON")->required();
  orc->add_option("--threshold", k, "Minimum depth of a constrained point");
  orc->add_flag("--all", all, "List every good coloring");

  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  gen->add_option("--n", n, "Number of half-planes");
  gen->add_option("--mode", mode, "covered | uncovered | degenerate | random");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--bound", bound, "Coordinate bound");
  gen->add_option("-o,--output", out, "Output path (default stdout)");

  auto* ren = app.add_subcommand("render", "Draw the arrangement as SVG");
  ren->add_option("input", in, "Instance JSON")->required();
  ren->add_option("--coloring", col, "Coloring JSON");
  ren->add_option("--window", window, "x0,y0,x1,y1");
  ren->add_option("-o,--output", out, "Output path (default stdout)");

  auto* bench = app.add_subcommand("bench", "Time the solver on covered instances");
  bench->add_option("--sizes", sizes, "Ascending comma-separated sizes")->required();
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--reps", reps, "Repetitions per size (median is reported)");
  bench->add_option("--csv", csv, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  }

  try {
    if (*color) return cmd_color(in, out, no_verify);
    if (*ver) return cmd_verify(in, col, k);
    if (*orc) return cmd_oracle(in, k, all);
    if (*gen) {
      GenSpec spec{n, parse_gen_mode(mode), seed, bound};
      emit(out, print_instance(generate(spec)));
      return kOk;
    }
    if (*ren) {
      const Instance inst = parse_instance(read_file(in));
      std::optional<Coloring> c;
      if (!col.empty()) c = parse_coloring(read_file(col));
      const Window w = window.empty() ? default_window(inst) : parse_window(window);
      emit(out, render_svg(inst, c, w));
      return kOk;
    }
    if (*bench) {
      emit(csv, bench_csv(run_bench(parse_sizes(sizes), seed, reps)));
      return kOk;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const LengthMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
