#include "knotspread/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "knotspread/error.hpp"

namespace knotspread {

CurveFile parse_curve_text(std::istream& in) {
    CurveFile file;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::string text = line.substr(first + 1);
            if (!text.empty() && text.front() == ' ') text.erase(0, 1);
            while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.pop_back();
            file.comments.push_back(std::move(text));
            continue;
        }
        std::istringstream fields(line);
        Vertex3 v;
        std::string extra;
        if (!(fields >> v.x >> v.y >> v.z) || (fields >> extra)) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected three reals \"x y z\"");
        }
        if (!is_finite(v)) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": non-finite coordinate");
        }
        file.points.push_back(v);
    }
    return file;
}

CurveFile read_curve_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open curve file " + path.string());
    return parse_curve_text(in);
}

PolygonalCurve read_curve(const std::filesystem::path& path) {
    CurveFile file = read_curve_file(path);
    if (file.points.size() < 3) {
        throw Error(ErrorKind::Parse, path.string() + ": at least 3 vertices required");
    }
    try {
        return PolygonalCurve(std::move(file.points));
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
    }
}

void write_points(std::ostream& out, const std::vector<Vertex3>& points, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    char buf[96];
    for (const auto& v : points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
}

void write_curve(std::ostream& out, const PolygonalCurve& curve, const std::vector<std::string>& comments) {
    write_points(out, {curve.vertices().begin(), curve.vertices().end()}, comments);
}

void write_curve_file(const std::filesystem::path& path, const PolygonalCurve& curve,
                      const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    write_curve(out, curve, comments);
}

}  // namespace knotspread
