#include "knotspread/spread.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "knotspread/error.hpp"

namespace knotspread {

const char* to_string(SpreadMethod method) noexcept {
    switch (method) {
        case SpreadMethod::ExactP2: return "exact-p2";
        case SpreadMethod::ClosedForm: return "closed-form";
        case SpreadMethod::Quadrature: return "quadrature";
        case SpreadMethod::Diameter: return "diameter";
    }
    return "unknown";
}

double chord_integral_same_segment(double edge_length, const Exponent& exponent) {
    if (!(edge_length > 0.0)) throw Error(ErrorKind::InvalidArgument, "segment length must be positive");
    if (exponent.is_diameter()) {
        throw Error(ErrorKind::InvalidArgument, "chord integrals are undefined for the Diameter regime");
    }
    const double l = edge_length;
    if (exponent.is_log()) return l * l * (std::log(l) - 1.5);
    const double p = exponent.p();
    return 2.0 * std::pow(l, p + 2.0) / ((p + 1.0) * (p + 2.0));
}

double chord_integral_pair_p2(const Segment& a, const Segment& b) {
    const Vec3 d = a.a - b.a;
    const Vec3 u = a.delta();
    const Vec3 w = b.delta();
    const double unit = norm2(d) + dot(d, u) - dot(d, w) + norm2(u) / 3.0 + norm2(w) / 3.0 - 0.5 * dot(u, w);
    return a.length() * b.length() * unit;
}

namespace {

/// Separation below which a pair is bisected before any rule is tried, in units of the longer edge.
constexpr double kAdmissibleSeparation = 1.0;
/// Smallest interior angle at a shared vertex the corner grading accepts.
constexpr double kMinCornerAngle = 1e-6;

class PairIntegrator {
public:
    PairIntegrator(const Exponent& exponent, const QuadratureConfig& cfg)
        : exponent_(exponent),
          cfg_(cfg),
          fine_(gauss_legendre(cfg.base_nodes)),
          coarse_(gauss_legendre(std::max(1, cfg.base_nodes - 2))) {}

    PairIntegral integrate(const Segment& a, const Segment& b) const {
        if (!(a.length() > 0.0) || !(b.length() > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "segments must have positive length");
        }
        if ((a.a == b.a && a.b == b.b) || (a.a == b.b && a.b == b.a)) {
            return {chord_integral_same_segment(a.length(), exponent_), 0.0, true};
        }
        // Orient both segments away from a shared vertex, if any.
        if (a.a == b.a) return corner(a, b);
        if (a.a == b.b) return corner(a, b.reversed());
        if (a.b == b.a) return corner(a.reversed(), b);
        if (a.b == b.b) return corner(a.reversed(), b.reversed());
        return separated(a, b, 0);
    }

private:
    double kernel(double r2) const {
        if (exponent_.is_log()) return 0.5 * std::log(r2);
        return std::pow(r2, 0.5 * exponent_.p());
    }

    double tensor(const Segment& a, const Segment& b, const GaussRule& rule) const {
        const Vec3 da = a.delta();
        const Vec3 db = b.delta();
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const Vec3 x = a.a + da * rule.nodes[i];
            double row = 0.0;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                row += rule.weights[j] * kernel(norm2(x - (b.a + db * rule.nodes[j])));
            }
            acc += rule.weights[i] * row;
        }
        return acc * a.length() * b.length();
    }

    double tolerance(double value, double la, double lb) const {
        // Log errors add directly to log D_0; power errors enter D_p divided by p.
        if (exponent_.is_log()) return cfg_.rel_tol * la * lb;
        return cfg_.rel_tol * std::min(1.0, std::abs(exponent_.p())) * std::abs(value);
    }

    static std::pair<Segment, Segment> halves(const Segment& s) {
        const Vec3 m = s.at(0.5);
        return {Segment{s.a, m}, Segment{m, s.b}};
    }

    PairIntegral split(const Segment& a, const Segment& b, int depth) const {
        const double la = a.length();
        const double lb = b.length();
        PairIntegral out;
        auto add = [&out](const PairIntegral& r) {
            out.value += r.value;
            out.error += r.error;
            out.converged = out.converged && r.converged;
        };
        if (la > 2.0 * lb) {
            const auto [a0, a1] = halves(a);
            add(separated(a0, b, depth + 1));
            add(separated(a1, b, depth + 1));
        } else if (lb > 2.0 * la) {
            const auto [b0, b1] = halves(b);
            add(separated(a, b0, depth + 1));
            add(separated(a, b1, depth + 1));
        } else {
            const auto [a0, a1] = halves(a);
            const auto [b0, b1] = halves(b);
            add(separated(a0, b0, depth + 1));
            add(separated(a0, b1, depth + 1));
            add(separated(a1, b0, depth + 1));
            add(separated(a1, b1, depth + 1));
        }
        return out;
    }

    PairIntegral separated(const Segment& a, const Segment& b, int depth) const {
        const double la = a.length();
        const double lb = b.length();
        const bool at_limit = depth >= cfg_.max_depth;
        const double gap = segment_distance(a, b).distance;
        if (gap < kAdmissibleSeparation * std::max(la, lb) && !at_limit) return split(a, b, depth);

        const double fine = tensor(a, b, fine_);
        const double err = std::abs(fine - tensor(a, b, coarse_));
        if (err <= tolerance(fine, la, lb)) return {fine, err, true};
        if (at_limit) return {fine, err, false};
        return split(a, b, depth);
    }

    /// Both segments start at the shared vertex. Panels halve toward the corner; by
    /// homogeneity of the kernel every level is a scaled copy of the first, so the
    /// infinite graded sum is closed in geometric-series form.
    PairIntegral corner(const Segment& a, const Segment& b) const {
        const double alpha = angle_between(a.delta(), b.delta());
        if (alpha < kMinCornerAngle) {
            std::ostringstream msg;
            msg << "shared-vertex angle " << alpha << " rad is below " << kMinCornerAngle
                << "; the corner singularity is too strong";
            throw Error(ErrorKind::SingularityTooStrong, msg.str());
        }
        const auto [a_near, a_far] = halves(a);
        const auto [b_near, b_far] = halves(b);
        PairIntegral s;
        for (const PairIntegral& r : {separated(a_near, b_far, 1), separated(a_far, b_near, 1),
                                      separated(a_far, b_far, 1)}) {
            s.value += r.value;
            s.error += r.error;
            s.converged = s.converged && r.converged;
        }
        if (exponent_.is_log()) {
            // I(a,b) = S + I(a/2,b/2) and I(a/2,b/2) = (I(a,b) - ab log 2) / 4
            const double ab = a.length() * b.length();
            return {(4.0 * s.value - ab * std::numbers::ln2) / 3.0, 4.0 * s.error / 3.0, s.converged};
        }
        // I(a/2,b/2) = 2^-(p+2) I(a,b)
        const double factor = 1.0 / (1.0 - std::exp2(-(exponent_.p() + 2.0)));
        return {s.value * factor, s.error * factor, s.converged};
    }

    const Exponent& exponent_;
    const QuadratureConfig& cfg_;
    const GaussRule& fine_;
    const GaussRule& coarse_;
};

struct PairSum {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

bool is_exact_p2(const Exponent& exponent) { return exponent.is_finite() && exponent.p() == 2.0; }

/// Row i of the ordered double sum: self term plus twice every pair (i, j > i).
PairSum row_sum(const PolygonalCurve& curve, std::size_t i, const Exponent& exponent, const PairIntegrator* integrator) {
    const std::size_t n = curve.size();
    const Segment ei = curve.edge(static_cast<std::ptrdiff_t>(i));
    PairSum row;
    row.value = chord_integral_same_segment(ei.length(), exponent);
    double off = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
        const Segment ej = curve.edge(static_cast<std::ptrdiff_t>(j));
        if (integrator == nullptr) {
            off += chord_integral_pair_p2(ei, ej);
            continue;
        }
        const PairIntegral r = integrator->integrate(ei, ej);
        off += r.value;
        row.error += 2.0 * r.error;
        row.converged = row.converged && r.converged;
    }
    row.value += 2.0 * off;
    return row;
}

PairSum total_sum(const PolygonalCurve& curve, const Exponent& exponent, const QuadratureConfig& cfg,
                  const PairIntegrator* integrator) {
    const std::size_t n = curve.size();
    const auto threads = static_cast<std::size_t>(std::max(1, std::min<int>(cfg.threads, static_cast<int>(n))));
    PairSum total;

    if (cfg.deterministic) {
        // Rows are independent; the final reduction runs in index order whatever the thread count.
        std::vector<PairSum> rows(n);
        auto work = [&](std::size_t first) {
            for (std::size_t i = first; i < n; i += threads) rows[i] = row_sum(curve, i, exponent, integrator);
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
        }
        for (const PairSum& r : rows) {
            total.value += r.value;
            total.error += r.error;
            total.converged = total.converged && r.converged;
        }
        return total;
    }

    std::atomic<std::size_t> next{0};
    std::vector<PairSum> partial(threads);
    auto work = [&](std::size_t t) {
        for (std::size_t i = next++; i < n; i = next++) {
            const PairSum r = row_sum(curve, i, exponent, integrator);
            partial[t].value += r.value;
            partial[t].error += r.error;
            partial[t].converged = partial[t].converged && r.converged;
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (const PairSum& r : partial) {
        total.value += r.value;
        total.error += r.error;
        total.converged = total.converged && r.converged;
    }
    return total;
}

/// Converts the raw double integral into D_p and its relative error estimate.
SpreadValue finish(double integral, double error, double total_length, const Exponent& exponent, SpreadMethod method) {
    SpreadValue out;
    out.method = method;
    const double l2 = total_length * total_length;
    out.raw_moment = integral / l2;
    double rel_err = 0.0;
    if (exponent.is_log()) {
        out.value = std::exp(out.raw_moment);
        rel_err = error / l2;
    } else {
        if (!(out.raw_moment > 0.0)) throw Error(ErrorKind::Quadrature, "non-positive moment");
        const double p = exponent.p();
        out.value = std::exp(std::log(out.raw_moment) / p);
        rel_err = (error / integral) / std::abs(p);
    }
    out.err_estimate = out.value * rel_err;
    return out;
}

double relative_error(const PairSum& sum, double total_length, const Exponent& exponent) {
    if (exponent.is_log()) return sum.error / (total_length * total_length);
    return sum.error / std::abs(sum.value) / std::min(1.0, std::abs(exponent.p()));
}

}  // namespace

PairIntegral chord_integral_pair(const Segment& a, const Segment& b, const Exponent& exponent,
                                 const QuadratureConfig& cfg) {
    cfg.validate();
    if (exponent.is_diameter()) {
        throw Error(ErrorKind::InvalidArgument, "chord integrals are undefined for the Diameter regime");
    }
    return PairIntegrator(exponent, cfg).integrate(a, b);
}

SpreadValue spread(const PolygonalCurve& curve, const Exponent& exponent, const QuadratureConfig& cfg,
                   bool force_quadrature) {
    cfg.validate();
    require_embedded(curve);
    if (exponent.is_diameter()) {
        const double d = diameter(curve);
        return {d, d, 0.0, SpreadMethod::Diameter};
    }
    const double total_length = length(curve);
    if (is_exact_p2(exponent) && !force_quadrature) {
        const PairSum sum = total_sum(curve, exponent, cfg, nullptr);
        SpreadValue out = finish(sum.value, 0.0, total_length, exponent, SpreadMethod::ExactP2);
        out.err_estimate = 4.0 * std::numeric_limits<double>::epsilon() * curve.size() * out.value;
        return out;
    }
    const PairIntegrator integrator(exponent, cfg);
    const PairSum sum = total_sum(curve, exponent, cfg, &integrator);
    if (!sum.converged && relative_error(sum, total_length, exponent) > cfg.rel_tol) {
        std::ostringstream msg;
        msg << "quadrature did not reach rel_tol " << cfg.rel_tol << " within max_depth " << cfg.max_depth
            << " (estimated relative error " << relative_error(sum, total_length, exponent) << ")";
        throw Error(ErrorKind::Quadrature, msg.str());
    }
    return finish(sum.value, sum.error, total_length, exponent, SpreadMethod::Quadrature);
}

double density_ratio(const PolygonalCurve& curve, const Exponent& exponent, const QuadratureConfig& cfg) {
    return length(curve) / spread(curve, exponent, cfg).value;
}

PLimitCheck spread_p_limit_check(const PolygonalCurve& curve, const QuadratureConfig& cfg) {
    PLimitCheck out;
    out.d_plus = spread(curve, Exponent::finite(1e-3), cfg).value;
    out.d_minus = spread(curve, Exponent::finite(-1e-3), cfg).value;
    out.d_zero = spread(curve, Exponent::log(), cfg).value;
    return out;
}

// ---------------------------------------------------------------------------
// SpreadEvaluator

SpreadEvaluator::SpreadEvaluator(const PolygonalCurve& curve, Exponent exponent, QuadratureConfig cfg)
    : curve_(curve), exponent_(exponent), cfg_(cfg) {
    cfg_.validate();
    reset(curve);
}

std::size_t SpreadEvaluator::index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    const std::size_t n = curve_.size();
    return i * n - (i * (i - 1)) / 2 + (j - i);
}

void SpreadEvaluator::reset(const PolygonalCurve& curve) {
    pending_.reset();
    curve_ = curve;
    length_ = length(curve_);
    if (exponent_.is_diameter()) {
        pairs_.clear();
        return;
    }
    const std::size_t n = curve_.size();
    pairs_.assign(n * (n + 1) / 2, PairIntegral{});
    for (std::size_t i = 0; i < n; ++i) compute_row(i);
}

void SpreadEvaluator::compute_row(std::size_t i) {
    const std::size_t n = curve_.size();
    const Segment ei = curve_.edge(static_cast<std::ptrdiff_t>(i));
    const PairIntegrator integrator(exponent_, cfg_);
    for (std::size_t j = i; j < n; ++j) {
        const Segment ej = curve_.edge(static_cast<std::ptrdiff_t>(j));
        PairIntegral& slot = pairs_[index(i, j)];
        if (i == j) {
            slot = {chord_integral_same_segment(ei.length(), exponent_), 0.0, true};
        } else if (is_exact_p2(exponent_)) {
            slot = {chord_integral_pair_p2(ei, ej), 0.0, true};
        } else {
            slot = integrator.integrate(ei, ej);
        }
    }
}

std::vector<std::pair<std::size_t, PairIntegral>> SpreadEvaluator::updates_for(
    std::size_t k, const PolygonalCurve& moved) const {
    const std::size_t n = curve_.size();
    if (moved.size() != n) throw Error(ErrorKind::InvalidArgument, "vertex count changed");
    std::vector<std::pair<std::size_t, PairIntegral>> updates;
    if (exponent_.is_diameter()) return updates;
    const std::size_t e0 = moved.wrap(static_cast<std::ptrdiff_t>(k) - 1);
    const std::size_t e1 = moved.wrap(static_cast<std::ptrdiff_t>(k));
    const PairIntegrator integrator(exponent_, cfg_);
    updates.reserve(2 * n);
    for (const std::size_t e : {e0, e1}) {
        const Segment se = moved.edge(static_cast<std::ptrdiff_t>(e));
        for (std::size_t j = 0; j < n; ++j) {
            if (e == e1 && j == e0) continue;  // already done in the e0 pass
            const Segment sj = moved.edge(static_cast<std::ptrdiff_t>(j));
            PairIntegral value;
            if (j == e) {
                value = {chord_integral_same_segment(se.length(), exponent_), 0.0, true};
            } else if (is_exact_p2(exponent_)) {
                value = {chord_integral_pair_p2(se, sj), 0.0, true};
            } else {
                value = integrator.integrate(se, sj);
            }
            updates.emplace_back(index(e, j), value);
        }
    }
    return updates;
}

void SpreadEvaluator::move_vertex(std::size_t k, const PolygonalCurve& moved) {
    // Updates are computed before anything is touched, so a throwing pair leaves the cache intact.
    auto updates = updates_for(k, moved);
    for (const auto& [slot, value] : updates) pairs_[slot] = value;
    curve_ = moved;
    length_ = length(curve_);
    pending_.reset();
}

SpreadValue SpreadEvaluator::propose(std::size_t k, const PolygonalCurve& moved) {
    pending_.reset();
    Pending next{moved, updates_for(k, moved)};
    // Swap the new entries in, evaluate, swap back.
    for (auto& [slot, value] : next.updates) std::swap(pairs_[slot], value);
    std::swap(curve_, next.curve);
    const double old_length = length_;
    length_ = length(curve_);
    SpreadValue out;
    try {
        out = value();
    } catch (...) {
        std::swap(curve_, next.curve);
        length_ = old_length;
        for (auto& [slot, value] : next.updates) std::swap(pairs_[slot], value);
        throw;
    }
    std::swap(curve_, next.curve);
    length_ = old_length;
    for (auto& [slot, value] : next.updates) std::swap(pairs_[slot], value);
    pending_ = std::move(next);
    return out;
}

void SpreadEvaluator::commit() {
    if (!pending_) throw Error(ErrorKind::InvalidArgument, "no proposed move to commit");
    for (const auto& [slot, value] : pending_->updates) pairs_[slot] = value;
    curve_ = std::move(pending_->curve);
    length_ = length(curve_);
    pending_.reset();
}

void SpreadEvaluator::rescale(double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
    pending_.reset();
    const std::size_t n = curve_.size();
    std::vector<double> lengths(n);
    for (std::size_t i = 0; i < n; ++i) lengths[i] = curve_.edge_length(static_cast<std::ptrdiff_t>(i));
    curve_ = scaled(curve_, factor);
    length_ = length(curve_);
    if (exponent_.is_diameter()) return;
    const double f2 = factor * factor;
    const double value_factor = exponent_.is_log() ? f2 : std::pow(factor, exponent_.p() + 2.0);
    const double shift = exponent_.is_log() ? f2 * std::log(factor) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            PairIntegral& slot = pairs_[index(i, j)];
            slot.value = slot.value * value_factor + shift * lengths[i] * lengths[j];
            slot.error *= value_factor;
        }
    }
}

SpreadValue SpreadEvaluator::value() const {
    if (exponent_.is_diameter()) {
        const double d = diameter(curve_);
        return {d, d, 0.0, SpreadMethod::Diameter};
    }
    const std::size_t n = curve_.size();
    double integral = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // Same association as the row sums in spread(), so both routes agree bit for bit.
        double row = pairs_[index(i, i)].value;
        double off = 0.0;
        double row_error = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            off += pairs_[index(i, j)].value;
            row_error += 2.0 * pairs_[index(i, j)].error;
        }
        row += 2.0 * off;
        integral += row;
        error += row_error;
    }
    const SpreadMethod method = is_exact_p2(exponent_) ? SpreadMethod::ExactP2 : SpreadMethod::Quadrature;
    return finish(integral, error, length_, exponent_, method);
}

}  // namespace knotspread
