#pragma once

// Independent ground truth in the primal plane: every cell, edge and vertex
// of the boundary arrangement is sampled exactly, so hyperedges and coloring
// goodness can be checked without touching the dual machinery.

#include "hpcolor/dual_model.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace hpcolor {

inline constexpr int kDefaultThreshold = 3;
inline constexpr std::size_t kOracleMaxSize = 20;

struct Hyperedge {
  std::vector<std::size_t> covering;  ///< sorted half-plane indices
  Point witness;

  std::size_t depth() const { return covering.size(); }
};

struct Violation {
  Point witness;
  std::vector<std::size_t> covering;
  Color color = Color::Blue;
};

class LengthMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class TooLarge : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct DepthResult {
  std::size_t depth = 0;
  std::vector<std::size_t> covering;
};

DepthResult depth(const Instance& inst, const Point& pt);

/// A finite point set meeting every face, edge and vertex of the arrangement
/// of boundary lines. Works for degenerate instances (parallel classes,
/// concurrent lines, duplicates).
std::vector<Point> arrangement_samples(const Instance& inst);

/// Distinct covering sets of depth >= k, in first-seen sample order.
std::vector<Hyperedge> hyperedges(const Instance& inst, std::size_t k);

/// nullopt when every hyperedge at threshold k sees both colors; otherwise the
/// first monochromatic one in sample order. Throws LengthMismatch.
std::optional<Violation> verify(const Instance& inst, const Coloring& coloring,
                                 std::size_t k = kDefaultThreshold);

/// First good coloring in lexicographic order (blue < red, index 0 most
/// significant), or nullopt. Throws TooLarge above kOracleMaxSize.
std::optional<Coloring> oracle(const Instance& inst, std::size_t k = kDefaultThreshold);

/// Every good coloring in lexicographic order.
std::vector<Coloring> oracle_all(const Instance& inst, std::size_t k = kDefaultThreshold);

}  // namespace hpcolor
