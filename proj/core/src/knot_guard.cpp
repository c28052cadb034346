#include "knotspread/knot_guard.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "knotspread/error.hpp"

namespace knotspread {

namespace {

constexpr double kParamMargin = 1e-9;
constexpr double kHeightMargin = 1e-9;
constexpr int kMaxTries = 64;

struct P2 {
    double x, y;
};

double cross2(P2 a, P2 b) { return a.x * b.y - a.y * b.x; }
P2 sub2(P2 a, P2 b) { return {a.x - b.x, a.y - b.y}; }

[[noreturn]] void degenerate(const std::string& why) {
    throw Error(ErrorKind::DegenerateGeometry, "non-generic projection: " + why);
}

using BigInt = boost::multiprecision::cpp_int;

/// Fraction-free Gaussian elimination (Bareiss), exact for integer input.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
    const std::size_t m = a.size();
    if (m == 0) return 1;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < m && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == m) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j < m; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[m - 1][m - 1];
}

}  // namespace

Diagram project_diagram(const PolygonalCurve& curve, const Vec3& axis_in) {
    if (!(norm(axis_in) > 0.0)) throw Error(ErrorKind::InvalidArgument, "projection axis is zero");
    const Vec3 axis = normalized(axis_in);
    const Vec3 helper = std::abs(axis.x) < 0.6 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 e1 = normalized(cross(axis, helper));
    const Vec3 e2 = cross(axis, e1);

    const std::size_t n = curve.size();
    std::vector<P2> q(n);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& v = curve.vertex(static_cast<std::ptrdiff_t>(i));
        q[i] = {dot(v, e1), dot(v, e2)};
        h[i] = dot(v, axis);
    }
    const double height_tol = kHeightMargin * length(curve);

    Diagram d;
    d.axis = axis;
    for (std::size_t i = 0; i < n; ++i) {
        const P2 a = q[i];
        const P2 r = sub2(q[(i + 1) % n], a);
        // Adjacent edges whose images fold back onto each other.
        const P2 r_next = sub2(q[(i + 2) % n], q[(i + 1) % n]);
        const double rn = std::hypot(r.x, r.y);
        const double rnn = std::hypot(r_next.x, r_next.y);
        if (rn < 1e-12 || rnn < 1e-12) degenerate("edge projects to a point");
        if (std::abs(cross2(r, r_next)) < 1e-12 * rn * rnn && r.x * r_next.x + r.y * r_next.y < 0.0) {
            degenerate("adjacent edges overlap");
        }
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const P2 c = q[j];
            const P2 s = sub2(q[(j + 1) % n], c);
            const P2 ca = sub2(c, a);
            const double den = cross2(r, s);
            const double sn = std::hypot(s.x, s.y);
            if (std::abs(den) < 1e-12 * rn * sn) {
                // Parallel images: only a problem when they are collinear and overlap.
                if (std::abs(cross2(ca, r)) < 1e-12 * rn * std::max(rn, std::hypot(ca.x, ca.y))) {
                    const double t0 = (ca.x * r.x + ca.y * r.y) / (rn * rn);
                    const double t1 = t0 + (s.x * r.x + s.y * r.y) / (rn * rn);
                    if (std::max(t0, t1) >= -kParamMargin && std::min(t0, t1) <= 1.0 + kParamMargin) {
                        degenerate("collinear overlapping edges");
                    }
                }
                continue;
            }
            const double t = cross2(ca, s) / den;
            const double u = cross2(ca, r) / den;
            if (t < -kParamMargin || t > 1.0 + kParamMargin || u < -kParamMargin || u > 1.0 + kParamMargin) {
                continue;
            }
            if (t < kParamMargin || t > 1.0 - kParamMargin || u < kParamMargin || u > 1.0 - kParamMargin) {
                degenerate("crossing at a vertex");
            }
            const double hi = h[i] + t * (h[(i + 1) % n] - h[i]);
            const double hj = h[j] + u * (h[(j + 1) % n] - h[j]);
            if (std::abs(hi - hj) < height_tol) degenerate("strands meet in the projection direction");
            Crossing x;
            if (hi > hj) {
                x = {i, t, j, u, cross2(r, s) > 0.0 ? 1 : -1};
            } else {
                x = {j, u, i, t, cross2(s, r) > 0.0 ? 1 : -1};
            }
            d.crossings.push_back(x);
        }
    }
    return d;
}

KnotGuardReport knot_determinant_along(const PolygonalCurve& curve, const Vec3& axis) {
    const Diagram d = project_diagram(curve, axis);
    KnotGuardReport out;
    out.projection_axis = d.axis;
    out.crossings_used = d.crossings.size();
    const std::size_t c = d.crossings.size();
    if (c == 0) return out;

    // Ccw slot order at each crossing. Slots: +o, -o, +u, -u.
    enum Role { OutOver = 0, InOver = 1, OutUnder = 2, InUnder = 3 };
    std::vector<std::array<int, 4>> slot_of(c);  // role -> ccw position
    for (std::size_t k = 0; k < c; ++k) {
        if (d.crossings[k].turn > 0) {
            slot_of[k] = {0, 2, 1, 3};  // +o, +u, -o, -u
        } else {
            slot_of[k] = {0, 2, 3, 1};  // +o, -u, -o, +u
        }
    }

    // Walk the curve; consecutive crossing passages are joined by diagram edges.
    struct Passage {
        double pos;
        std::size_t crossing;
        bool over;
    };
    std::vector<Passage> walk;
    walk.reserve(2 * c);
    for (std::size_t k = 0; k < c; ++k) {
        const Crossing& x = d.crossings[k];
        walk.push_back({static_cast<double>(x.over_edge) + x.over_t, k, true});
        walk.push_back({static_cast<double>(x.under_edge) + x.under_t, k, false});
    }
    std::sort(walk.begin(), walk.end(), [](const Passage& a, const Passage& b) { return a.pos < b.pos; });

    // dart (crossing, slot) -> (crossing, slot) at the other end of its edge
    std::vector<std::array<std::pair<std::size_t, int>, 4>> other(c);
    for (std::size_t w = 0; w < walk.size(); ++w) {
        const Passage& from = walk[w];
        const Passage& to = walk[(w + 1) % walk.size()];
        const int s_from = slot_of[from.crossing][from.over ? OutOver : OutUnder];
        const int s_to = slot_of[to.crossing][to.over ? InOver : InUnder];
        other[from.crossing][s_from] = {to.crossing, s_to};
        other[to.crossing][s_to] = {from.crossing, s_from};
    }

    // Trace faces: arrive through slot q, leave through the next slot ccw.
    std::vector<std::array<int, 4>> face(c, {-1, -1, -1, -1});
    int faces = 0;
    for (std::size_t k = 0; k < c; ++k) {
        for (int q = 0; q < 4; ++q) {
            if (face[k][q] >= 0) continue;
            std::size_t ck = k;
            int cq = q;
            while (face[ck][cq] < 0) {
                face[ck][cq] = faces;
                const auto [nk, nq] = other[ck][cq];
                ck = nk;
                cq = (nq + 1) % 4;
            }
            ++faces;
        }
    }
    if (static_cast<std::size_t>(faces) != c + 2) {
        std::ostringstream msg;
        msg << "diagram has " << faces << " faces, expected " << c + 2;
        throw Error(ErrorKind::DegenerateGeometry, msg.str());
    }

    // Checkerboard colouring: the two sides of an edge differ.
    std::vector<std::vector<int>> adj(faces);
    for (std::size_t k = 0; k < c; ++k) {
        for (int q = 0; q < 4; ++q) {
            const auto [nk, nq] = other[k][q];
            adj[face[k][q]].push_back(face[nk][nq]);
        }
    }
    std::vector<int> colour(faces, -1);
    std::queue<int> todo;
    colour[0] = 0;
    todo.push(0);
    while (!todo.empty()) {
        const int f = todo.front();
        todo.pop();
        for (int g : adj[f]) {
            if (colour[g] < 0) {
                colour[g] = 1 - colour[f];
                todo.push(g);
            } else if (colour[g] == colour[f]) {
                throw Error(ErrorKind::DegenerateGeometry, "diagram is not checkerboard colourable");
            }
        }
    }

    // Goeritz matrix over the shaded (colour 1) faces. The face in the sector
    // between slots s and s+1 is the one traced by the dart leaving through s+1.
    std::map<int, std::size_t> shaded;
    for (int f = 0; f < faces; ++f) {
        if (colour[f] == 1) shaded.emplace(f, shaded.size());
    }
    const std::size_t m = shaded.size();
    std::vector<std::vector<BigInt>> g(m, std::vector<BigInt>(m, 0));
    for (std::size_t k = 0; k < c; ++k) {
        const int f0 = face[k][1];
        const int f1 = face[k][2];
        const int f2 = face[k][3];
        const int f3 = face[k][0];
        int a, b, eta;
        if (colour[f0] == 1) {
            a = f0;
            b = f2;
            eta = 1;  // sectors swept by turning the over strand counterclockwise
        } else {
            a = f1;
            b = f3;
            eta = -1;
        }
        if (a == b) continue;
        const std::size_t ia = shaded.at(a);
        const std::size_t ib = shaded.at(b);
        g[ia][ib] -= eta;
        g[ib][ia] -= eta;
        g[ia][ia] += eta;
        g[ib][ib] += eta;
    }
    std::vector<std::vector<BigInt>> minor(m > 0 ? m - 1 : 0);
    for (std::size_t i = 1; i < m; ++i) {
        minor[i - 1].assign(g[i].begin() + 1, g[i].end());
    }
    const BigInt det = abs(bareiss_determinant(std::move(minor)));
    if (det == 0 || det > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        throw Error(ErrorKind::DegenerateGeometry, "determinant is zero or out of range");
    }
    out.determinant = det.convert_to<std::uint64_t>();
    return out;
}

KnotGuardReport knot_determinant(const PolygonalCurve& curve, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::string last;
    for (int attempt = 0; attempt < kMaxTries; ++attempt) {
        const Vec3 axis{gauss(rng), gauss(rng), gauss(rng)};
        if (norm(axis) < 1e-3) continue;
        try {
            return knot_determinant_along(curve, axis);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateGeometry) throw;
            last = e.what();
        }
    }
    throw Error(ErrorKind::DegenerateGeometry, "no generic projection found (" + last + ")");
}

}  // namespace knotspread
