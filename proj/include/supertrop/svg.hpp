#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "supertrop/errors.hpp"
#include "supertrop/polynomial.hpp"

namespace supertrop {

namespace detail {

inline std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace detail

/// Scatter plot of 2-D points. The viewport is derived from the data bounds and
/// all coordinates are printed with fixed precision, so equal input gives equal bytes.
inline void emit_svg(const std::vector<TropicalPoint>& points, std::ostream& out) {
  constexpr double size = 400.0;
  constexpr double margin = 20.0;
  Rational lo[2], hi[2];
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != 2) throw precondition_error("SVG output needs 2-D points");
    for (int k = 0; k < 2; ++k) {
      if (points[i][k].is_zero()) throw precondition_error("cannot plot a -inf coordinate");
      const Rational& v = points[i][k].group_value();
      if (i == 0 || v < lo[k]) lo[k] = v;
      if (i == 0 || hi[k] < v) hi[k] = v;
    }
  }
  auto scale = [&](const Rational& v, int k) {
    const Rational span = hi[k] - lo[k];
    const double t = span == 0 ? 0.5 : static_cast<double>(Rational((v - lo[k]) / span));
    return k == 0 ? margin + t * (size - 2 * margin) : size - margin - t * (size - 2 * margin);
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"white\" stroke=\"black\"/>\n";
  if (!points.empty()) {
    out << "<!-- x: " << render_rational(lo[0]) << ".." << render_rational(hi[0]) << " y: " << render_rational(lo[1])
        << ".." << render_rational(hi[1]) << " -->\n";
  }
  for (const auto& p : points) {
    out << "<circle cx=\"" << detail::fixed3(scale(p[0].group_value(), 0)) << "\" cy=\""
        << detail::fixed3(scale(p[1].group_value(), 1)) << "\" r=\"3\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
}

inline void emit_svg(const std::vector<TropicalPoint>& points, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw precondition_error("cannot open " + path + " for writing");
  emit_svg(points, file);
  if (!file) throw precondition_error("failed writing " + path);
}

}  // namespace supertrop
