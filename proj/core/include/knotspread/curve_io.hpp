#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "knotspread/curve.hpp"

namespace knotspread {

/// Raw contents of a curve-format file: data points in order plus the '#' comment lines.
struct CurveFile {
    std::vector<Vertex3> points;
    std::vector<std::string> comments;  ///< comment text with the leading '#' and one space stripped
};

/// Parses the line-oriented "x y z" format. Throws Error(Parse) on malformed input.
CurveFile parse_curve_text(std::istream& in);
CurveFile read_curve_file(const std::filesystem::path& path);

/// Parses and builds a closed curve (at least 3 data lines).
PolygonalCurve read_curve(const std::filesystem::path& path);

/// Writes comments (each prefixed with "# ") followed by one vertex per line at 17 significant digits.
void write_points(std::ostream& out, const std::vector<Vertex3>& points,
                  const std::vector<std::string>& comments = {});
void write_curve(std::ostream& out, const PolygonalCurve& curve,
                 const std::vector<std::string>& comments = {});
void write_curve_file(const std::filesystem::path& path, const PolygonalCurve& curve,
                      const std::vector<std::string>& comments = {});

}  // namespace knotspread
