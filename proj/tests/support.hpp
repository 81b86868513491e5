#pragma once

// Small builders shared by the unit suites.

#include "hpcolor/dual_model.hpp"

#include <string>
#include <vector>

namespace hpcolor::test {

inline Rational q(const std::string& text) { return parse_rational(text); }
// mpq_class(num, den) does not reduce; GMP arithmetic needs reduced operands.
inline Rational frac(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}
inline Point pt(const std::string& x, const std::string& y) { return {q(x), q(y)}; }
inline Point pt(long x, long y) { return {Rational(x), Rational(y)}; }

inline HalfPlane up(const std::string& a, const std::string& b) { return {q(a), q(b), Side::Upper}; }
inline HalfPlane low(const std::string& a, const std::string& b) { return {q(a), q(b), Side::Lower}; }

// y <= x, y <= -x + 2, y >= 0: a single depth-3 triangle.
inline Instance three_triangle() { return {{up("1", "0"), up("-1", "2"), low("0", "0")}}; }

// Outward half-planes of a triangle: every corner has depth 2, nothing has depth 3.
inline Instance outward_triangle() { return {{up("0", "0"), low("3/2", "0"), low("-3/2", "6")}}; }

// All upper: points far above are uncovered.
inline Instance all_upper() { return {{up("1", "0"), up("2", "1"), up("-1", "5")}}; }

inline Coloring colors(std::initializer_list<Color> cs) { return {std::vector<Color>(cs)}; }

inline Coloring from_bits(std::size_t n, unsigned bits) {
  Coloring c;
  for (std::size_t i = 0; i < n; ++i) c.colors.push_back((bits >> i) & 1U ? Color::Red : Color::Blue);
  return c;
}

}  // namespace hpcolor::test
