#include "knotspread/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "knotspread/error.hpp"

namespace knotspread {

namespace {

// Each arc samples a closed knotted space curve (scaled by 0.1) opened at its
// outermost point; one loose end is routed over the top at height 0.2.
const std::vector<Vertex3> kTrefoil = {
    {-1.000000, 0.000000, 0.000000},  {-0.900000, 0.000000, 0.000000},
    {-0.400000, 0.000000, 0.200000},  {0.285175, 0.069787, 0.200000},
    {0.285175, 0.069787, 0.035227},   {0.100357, 0.173248, 0.100000},
    {-0.029523, 0.102392, 0.035631},  {-0.118214, 0.062194, -0.074752},
    {-0.233751, -0.077836, -0.088600}, {-0.128449, -0.270314, 0.011971},
    {0.079355, -0.209451, 0.097082},  {0.108287, -0.046151, 0.056820},
    {0.108287, 0.046151, -0.056820},  {0.079355, 0.209451, -0.097082},
    {-0.128449, 0.270314, -0.011971}, {-0.233751, 0.077836, 0.088600},
    {-0.118214, -0.062194, 0.074752}, {-0.029523, -0.102392, -0.035631},
    {0.100357, -0.173248, -0.100000}, {0.285175, -0.069787, -0.035227},
    {0.900000, 0.000000, 0.000000},   {1.000000, 0.000000, 0.000000},
};

const std::vector<Vertex3> kFigureEight = {
    {-1.000000, 0.000000, 0.000000},  {-0.900000, 0.000000, 0.000000},
    {-0.400000, 0.000000, 0.200000},  {0.278087, 0.104673, 0.200000},
    {0.278087, 0.104673, 0.046178},   {0.000540, 0.250124, 0.086746},
    {-0.160987, 0.061391, -0.053241}, {-0.074063, -0.083349, -0.082411},
    {0.048744, -0.093138, 0.059950},  {0.155951, 0.018804, 0.077530},
    {0.056456, 0.228560, -0.066263},  {-0.240278, 0.165911, -0.072136},
    {-0.240278, -0.165911, 0.072136}, {0.056456, -0.228560, 0.066263},
    {0.155951, -0.018804, -0.077530}, {0.048744, 0.093138, -0.059950},
    {-0.074063, 0.083349, 0.082411},  {-0.160987, -0.061391, 0.053241},
    {0.000540, -0.250124, -0.086746}, {0.278087, -0.104673, -0.046178},
    {0.900000, 0.000000, 0.000000},   {1.000000, 0.000000, 0.000000},
};

[[noreturn]] void bad_pattern(const std::string& name, const std::string& why) {
    throw Error(ErrorKind::InvalidArgument, "pattern '" + name + "': " + why);
}

/// Parameter of the point where the segment a->b crosses the sphere |x - m| = r.
/// `entering` selects the crossing from outside to inside (a outside, b inside).
double sphere_crossing(const Vec3& a, const Vec3& b, const Vec3& m, double r, bool entering) {
    const Vec3 d = b - a;
    const Vec3 f = a - m;
    const double qa = dot(d, d);
    const double qb = 2.0 * dot(f, d);
    const double qc = dot(f, f) - r * r;
    const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
    const double root = std::sqrt(disc);
    // Stable quadratic roots.
    const double q = -0.5 * (qb + std::copysign(root, qb));
    double t1 = q / qa;
    double t2 = (q != 0.0) ? qc / q : t1;
    if (t1 > t2) std::swap(t1, t2);
    return std::clamp(entering ? t1 : t2, 0.0, 1.0);
}

/// Number of edges on the top strand: odd, about a quarter of n.
int stadium_top_edges(int n) {
    int interior = (n - 2 * (n / 4) - 2) / 2;
    if (interior % 2 != 0) --interior;
    return interior + 1;
}

}  // namespace

double KnotArcPattern::arc_length() const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < arc_vertices.size(); ++i) {
        total += distance(arc_vertices[i], arc_vertices[i + 1]);
    }
    return total;
}

PolygonalCurve KnotArcPattern::closed_by_axis() const {
    std::vector<Vertex3> pts = arc_vertices;
    pts.push_back({1.5, 0.0, 0.0});
    pts.push_back({1.5, 0.0, -1.5});
    pts.push_back({-1.5, 0.0, -1.5});
    pts.push_back({-1.5, 0.0, 0.0});
    return PolygonalCurve(std::move(pts));
}

void validate_pattern(const KnotArcPattern& p) {
    const auto& v = p.arc_vertices;
    if (v.size() < 2) bad_pattern(p.name, "needs at least 2 vertices");
    if (v.front() != Vertex3{-1, 0, 0} || v.back() != Vertex3{1, 0, 0}) {
        bad_pattern(p.name, "arc must run from (-1,0,0) to (1,0,0)");
    }
    if (p.expected_determinant % 2 == 0) bad_pattern(p.name, "expected determinant must be odd");
    for (const auto& x : v) {
        if (!is_finite(x) || norm(x) > 1.0 + 1e-12) bad_pattern(p.name, "vertex outside the unit ball");
    }
    if (v.size() > 2) {
        const Vertex3& first = v[1];
        const Vertex3& last = v[v.size() - 2];
        if (first.y != 0.0 || first.z != 0.0 || !(first.x > -1.0) || last.y != 0.0 || last.z != 0.0 ||
            !(last.x < 1.0)) {
            bad_pattern(p.name, "collars must lie on the x axis");
        }
    }
    const double scale = p.arc_length();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (distance(v[i], v[i + 1]) <= 1e-12 * scale) bad_pattern(p.name, "repeated vertex");
        for (std::size_t j = i + 2; j + 1 < v.size(); ++j) {
            if (segment_distance({v[i], v[i + 1]}, {v[j], v[j + 1]}).distance <= 1e-12 * scale) {
                bad_pattern(p.name, "arc is not embedded");
            }
        }
    }
}

KnotArcPattern builtin_pattern(const std::string& name) {
    if (name == "trefoil") return {name, kTrefoil, 3};
    if (name == "figure_eight" || name == "figure-eight") return {"figure_eight", kFigureEight, 5};
    throw Error(ErrorKind::InvalidArgument, "unknown pattern '" + name + "'");
}

KnotArcPattern straight_pattern() { return {"straight", {{-1, 0, 0}, {1, 0, 0}}, 1}; }

KnotArcPattern pattern_from_file(const CurveFile& file) {
    KnotArcPattern p;
    p.name = "unnamed";
    bool have_det = false;
    for (const auto& line : file.comments) {
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
        };
        trim(key);
        trim(value);
        if (key == "name") {
            p.name = value;
        } else if (key == "expected_determinant") {
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), p.expected_determinant);
            if (ec != std::errc{} || ptr != value.data() + value.size()) {
                throw Error(ErrorKind::Parse, "bad expected_determinant '" + value + "'");
            }
            have_det = true;
        }
    }
    if (!have_det) throw Error(ErrorKind::Parse, "pattern file lacks an expected_determinant header");
    p.arc_vertices = file.points;
    validate_pattern(p);
    return p;
}

CurveFile pattern_to_file(const KnotArcPattern& pattern) {
    CurveFile f;
    f.points = pattern.arc_vertices;
    f.comments.push_back("name: " + pattern.name);
    f.comments.push_back("expected_determinant: " + std::to_string(pattern.expected_determinant));
    return f;
}

PolygonalCurve regular_ngon(int n, double r) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "regular_ngon needs n >= 3");
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "regular_ngon needs r > 0");
    std::vector<Vertex3> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double a = std::numbers::pi * (2.0 * k + 1.0) / n;
        pts[static_cast<std::size_t>(k)] = {r * std::cos(a), r * std::sin(a), 0.0};
    }
    return PolygonalCurve(std::move(pts));
}

PolygonalCurve insert_local_knot(const PolygonalCurve& host, const KnotArcPattern& pattern,
                                 std::size_t edge_index, double r) {
    validate_pattern(pattern);
    const std::size_t n = host.size();
    if (edge_index >= n) throw Error(ErrorKind::InvalidArgument, "edge index out of range");
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "insertion radius must be positive");
    require_embedded(host);

    const auto e = static_cast<std::ptrdiff_t>(edge_index);
    const Vec3 m = 0.5 * (host.vertex(e) + host.vertex(e + 1));
    auto inside = [&](std::ptrdiff_t i) { return distance(host.vertex(i), m) < r; };

    // Walk back and forward from the midpoint until the path leaves the ball.
    std::ptrdiff_t a = e;  // last vertex before the entry point
    std::ptrdiff_t b = e + 1;  // first vertex after the exit point
    std::size_t steps = 0;
    while (inside(a)) {
        --a;
        if (++steps >= n) throw Error(ErrorKind::Locality, "insertion ball contains the whole host");
    }
    while (inside(b)) {
        ++b;
        if (++steps >= n) throw Error(ErrorKind::Locality, "insertion ball contains the whole host");
    }
    if (b - a + 1 > static_cast<std::ptrdiff_t>(n) - 1) {
        throw Error(ErrorKind::Locality, "insertion ball meets too much of the host");
    }

    Vec3 entry, exit;
    if (a == e) {
        entry = m - normalized(host.vertex(e + 1) - host.vertex(e)) * r;
    } else {
        const double t = sphere_crossing(host.vertex(a), host.vertex(a + 1), m, r, true);
        entry = host.vertex(a) + (host.vertex(a + 1) - host.vertex(a)) * t;
    }
    if (b == e + 1) {
        exit = m + normalized(host.vertex(e + 1) - host.vertex(e)) * r;
    } else {
        const double t = sphere_crossing(host.vertex(b - 1), host.vertex(b), m, r, false);
        exit = host.vertex(b - 1) + (host.vertex(b) - host.vertex(b - 1)) * t;
    }

    // Every edge outside the chain a..b must stay clear of the ball.
    for (std::ptrdiff_t i = b; i < a + static_cast<std::ptrdiff_t>(n); ++i) {
        const double d = point_segment_distance(m, host.edge(i)).distance;
        if (d <= r) {
            std::ostringstream msg;
            msg << "ball of radius " << r << " around edge " << edge_index << " also meets edge " << host.wrap(i)
                << " (distance " << d << ")";
            throw Error(ErrorKind::Locality, msg.str());
        }
    }

    const double chord = distance(entry, exit);
    const double s = 0.5 * chord;
    const Vec3 x_axis = (exit - entry) / chord;
    const Vec3 helper = std::abs(x_axis.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    const Vec3 y_axis = normalized(cross(helper, x_axis));
    const Vec3 z_axis = cross(x_axis, y_axis);
    const Vec3 center = 0.5 * (entry + exit);

    const double merge_tol = 1e-12 * length(host);
    std::vector<Vertex3> pts;
    pts.reserve(n + pattern.arc_vertices.size());
    for (std::ptrdiff_t i = b; i <= a + static_cast<std::ptrdiff_t>(n); ++i) pts.push_back(host.vertex(i));
    if (distance(pts.back(), entry) > merge_tol) pts.push_back(entry);
    const auto& arc = pattern.arc_vertices;
    for (std::size_t i = 1; i + 1 < arc.size(); ++i) {
        const Vertex3& p = arc[i];
        pts.push_back(center + (x_axis * p.x + y_axis * p.y + z_axis * p.z) * s);
    }
    if (distance(exit, host.vertex(b)) > merge_tol) pts.push_back(exit);

    PolygonalCurve out(std::move(pts));
    const EmbeddingReport rep = validate_embedded(out);
    if (!rep.is_embedded) {
        std::ostringstream msg;
        msg << "inserted pattern intersects the host";
        if (rep.offending_pair) msg << " (edges " << rep.offending_pair->first << ", " << rep.offending_pair->second << ")";
        throw Error(ErrorKind::Locality, msg.str());
    }
    return out;
}

PolygonalCurve stadium_curve(double R, double eps, int n) {
    if (!(eps > 0.0) || !(R > 0.0)) throw Error(ErrorKind::InvalidArgument, "stadium needs R, eps > 0");
    if (eps >= R) throw Error(ErrorKind::InvalidArgument, "stadium needs eps < R");
    if (n < 16) throw Error(ErrorKind::InvalidArgument, "stadium needs n >= 16");
    const int k = n / 4;  // edges per cap
    const int top = stadium_top_edges(n) - 1;
    const int bottom = n - 2 * k - 2 - top;

    std::vector<Vertex3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    // top strand, right to left: (R, eps) ... (-R, eps)
    for (int i = 0; i <= top; ++i) {
        pts.push_back({R - 2.0 * R * i / (top + 1), eps, 0.0});
    }
    // left cap, centre (-R, 0), from angle pi/2 to 3pi/2
    for (int i = 0; i <= k; ++i) {
        const double a = std::numbers::pi * (0.5 + static_cast<double>(i) / k);
        pts.push_back({-R + eps * std::cos(a), eps * std::sin(a), 0.0});
    }
    // bottom strand interior, left to right
    for (int i = 1; i <= bottom; ++i) {
        pts.push_back({-R + 2.0 * R * i / (bottom + 1), -eps, 0.0});
    }
    // right cap, centre (R, 0), from -pi/2 to pi/2 (endpoint excluded: it is the first vertex)
    for (int i = 0; i < k; ++i) {
        const double a = std::numbers::pi * (-0.5 + static_cast<double>(i) / k);
        pts.push_back({R + eps * std::cos(a), eps * std::sin(a), 0.0});
    }
    return PolygonalCurve(std::move(pts));
}

PolygonalCurve stadium_with_knot(double R, double eps, int n, const KnotArcPattern& pattern) {
    const PolygonalCurve base = stadium_curve(R, eps, n);
    // Top strand edges come first; the middle one is centred on x = 0.
    const auto middle = static_cast<std::size_t>(stadium_top_edges(n) / 2);
    PolygonalCurve out = insert_local_knot(base, pattern, middle, 0.5 * eps);

    // Containment in a 2 eps neighbourhood of the core segment.
    const Segment core{{-R, 0, 0}, {R, 0, 0}};
    for (const auto& v : out.vertices()) {
        if (point_segment_distance(v, core).distance > 2.0 * eps * (1.0 + 1e-12)) {
            throw Error(ErrorKind::DegenerateGeometry, "knotted stadium leaves the core neighbourhood");
        }
    }
    return out;
}

PolygonalCurve random_embedded_polygon(int n, std::mt19937_64& rng) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "random polygon needs n >= 3");
    std::uniform_real_distribution<double> jitter(0.1, 0.9);
    std::uniform_real_distribution<double> radius(0.4, 1.6);
    std::uniform_real_distribution<double> height(-0.6, 0.6);
    std::vector<Vertex3> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * (i + jitter(rng)) / n;
        const double rho = radius(rng);
        pts[static_cast<std::size_t>(i)] = {rho * std::cos(a), rho * std::sin(a), height(rng)};
    }
    return PolygonalCurve(std::move(pts));
}

}  // namespace knotspread
