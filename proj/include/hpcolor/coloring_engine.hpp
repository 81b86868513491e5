#pragma once

// Covered-case coloring: pivot discovery on the two dual hulls, the case
// machine around the pivot, the separated-hull finishing subroutine, and the
// top-level solve loop (perturb, dualize, color, verify, retry).

#include "hpcolor/dual_model.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hpcolor {

/// Tips of both families sorted by x, with their instance indices. `swapped`
/// records an odd number of color swaps relative to the instance.
struct Frame {
  std::vector<Point> u;
  std::vector<Point> l;
  std::vector<std::size_t> src_u;
  std::vector<std::size_t> src_l;
  bool swapped = false;

  static Frame from_scene(const DualScene& scene);
  static Frame from_scene(DualScene&& scene);
  /// Negates x; indices reverse (i -> n-1-i).
  Frame x_flipped() const;
  /// Negates y and exchanges the families.
  Frame y_flipped() const;
  Frame color_swapped() const;
};

/// A frame with both outer hull chains (indices into the x-sorted tips).
struct OrientedFrame {
  Frame frame;
  std::vector<std::size_t> hull_u;  ///< upper hull of u
  std::vector<std::size_t> hull_l;  ///< lower hull of l
  /// Tip coordinates rounded to double, for filters ahead of exact tests.
  std::vector<std::pair<double, double>> approx_u, approx_l;

  explicit OrientedFrame(Frame f);

  /// Mirror images; hulls are carried over instead of recomputed.
  OrientedFrame x_flipped() const;
  OrientedFrame y_flipped() const;

private:
  OrientedFrame(Frame f, std::vector<std::size_t> upper, std::vector<std::size_t> lower,
                std::vector<std::pair<double, double>> au, std::vector<std::pair<double, double>> al);
};

/// Pivot p on the upper hull of u, inside the lower-hull region of l, with its
/// hull neighbours. All indices refer to the x-sorted tips of `frame()`.
struct PivotConfig {
  std::shared_ptr<const OrientedFrame> oriented;
  std::size_t p = 0;
  std::optional<std::size_t> l_u, r_u;
  std::size_t l_l = 0, r_l = 0;
  std::optional<std::size_t> l_l2, r_l2;

  const Frame& frame() const { return oriented->frame; }
  const std::vector<Point>& pu() const { return oriented->frame.u; }
  const std::vector<Point>& pl() const { return oriented->frame.l; }
};

enum class CaseTag : std::uint8_t { A, B, C, D, SingletonU };

std::string to_string(CaseTag tag);

struct Coverage {
  bool covered = false;
  Point witness;   ///< in both hull regions (covered)
  Line separator;  ///< every u tip strictly below, every l tip strictly above (separated)
};

Coverage coverage(const DualScene& scene);

/// Every valid pivot over the four axis orientations, in a fixed order.
std::vector<PivotConfig> pivot_candidates(const DualScene& scene);

/// Preferred pivot: the candidate whose case ranks first in A, C, D,
/// SingletonU, B. Throws InternalError when the scene is not covered.
PivotConfig find_pivot(const DualScene& scene);

/// Throws InternalError when r_L is above h while the segments cross.
CaseTag classify(const PivotConfig& cfg);

/// Partial coloring by instance index; unset entries are nullopt.
class Painter {
public:
  explicit Painter(std::size_t n) : colors_(n) {}

  void set(const Frame& fr, std::size_t src, Color c);
  /// Only colors entries that are still unset.
  void fill(const Frame& fr, std::size_t src, Color c);
  std::optional<Color> get(const Frame& fr, std::size_t src) const;
  /// Throws InternalError if an entry is unset.
  Coloring finish() const;

private:
  std::vector<std::optional<Color>> colors_;
};

enum class ObsBranch : std::uint8_t { Both, Left, Mirrored };

/// Finishing step on a separated pair: every active u tip is at x <= x(p),
/// every active l tip at x >= x(q). Deleted tips are skipped. Only unset
/// entries are painted. Throws InternalError when the guards fail.
ObsBranch obs_separated(const Frame& fr, std::size_t p, std::size_t q, Painter& paint,
                        const std::vector<bool>& deleted_u = {},
                        const std::vector<bool>& deleted_l = {});

/// Runs the case machine from one pivot. `trace` collects case labels.
Coloring color_pivot(const PivotConfig& cfg, std::vector<std::string>* trace = nullptr);

/// Covered scene: tries pivots in preference order until one completes.
Coloring color_covered(const DualScene& scene, std::vector<std::string>* trace = nullptr);

struct SolveOptions {
  int max_attempts = 8;
  bool verify = true;
};

struct SolveReport {
  Coloring coloring;
  int attempts = 0;
  bool covered = true;
  std::vector<std::string> trace;

  /// Case labels joined by '/' ("uncovered" on the polar path).
  std::string case_path() const;
};

/// Reads HPCOLOR_MAX_ATTEMPTS (default 8).
int max_attempts_from_env();

SolveReport solve_report(const Instance& inst, const SolveOptions& opts = {});
Coloring solve(const Instance& inst);

}  // namespace hpcolor
