#include "knotspread/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "knotspread/error.hpp"
#include "knotspread/reference.hpp"
#include "knotspread/spread.hpp"

namespace knotspread {

namespace {

constexpr double kFoldMargin = 1e-4;   // turning angles stay below pi - kFoldMargin
constexpr double kShrink = 1e-9;       // edges sharing a swept vertex are pulled back by this fraction
constexpr double kCapMargin = 1e-12;   // length cap is enforced with this relative margin

struct Eval {
    double objective = 0.0;  // minimized
    double ratio = 0.0;      // reported quantity
    double thickness = 0.0;
    double length = 0.0;
    double ropelength = 0.0;
    bool feasible = true;
    Vertex3 witness[3] = {};  // min_rad vertex, then the dcsd pair
    bool rad_binding = true;
};

PolygonalCurve with_vertex(const PolygonalCurve& c, std::size_t k, const Vertex3& p) {
    std::vector<Vertex3> v(c.vertices().begin(), c.vertices().end());
    v[k] = p;
    return PolygonalCurve(std::move(v));
}

std::size_t nearest_vertex(const PolygonalCurve& c, const Vertex3& x) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double d = norm2(c.vertex(static_cast<std::ptrdiff_t>(i)) - x);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

class Annealer {
public:
    Annealer(OptimizerMode mode, const PolygonalCurve& initial, const OptimizerConfig& cfg,
             std::optional<Exponent> exponent, std::optional<WindowConfig> window)
        : mode_(mode), cfg_(cfg), exponent_(exponent), window_(window), cur_curve_(initial), best_curve_(initial) {}

    OptimizationResult run();

private:
    bool burn_in() const { return iteration_ <= cfg_.max_iters / 10; }
    double cap() const { return window_->lambda * window_->rop_reference; }

    /// Evaluates a candidate; nullopt means a hard constraint rejected it.
    /// `k` is the moved vertex, or npos for a full re-evaluation.
    std::optional<Eval> evaluate(const PolygonalCurve& c, std::size_t k);
    void accept(const PolygonalCurve& c, const Eval& e);
    void consider_best();
    void resample();
    void record_trace();

    OptimizerMode mode_;
    OptimizerConfig cfg_;
    std::optional<Exponent> exponent_;
    std::optional<WindowConfig> window_;
    std::optional<SpreadEvaluator> evaluator_;

    PolygonalCurve cur_curve_;
    Eval cur_{};
    PolygonalCurve best_curve_;
    std::optional<double> best_;
    double initial_length_ = 0.0;

    long iteration_ = 0;
    long accepted_ = 0;
    long rejected_ = 0;
    std::vector<TracePoint> trace_;

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

std::optional<Eval> Annealer::evaluate(const PolygonalCurve& c, std::size_t k) {
    Eval e;
    e.length = length(c);
    if (mode_ == OptimizerMode::Ropelength || mode_ == OptimizerMode::Windowed) {
        const ThicknessReport t = thickness_unchecked(c);
        e.thickness = t.thickness;
        e.ropelength = t.ropelength;
        e.witness[0] = t.min_rad_at;
        e.witness[1] = t.dcsd_at[0];
        e.witness[2] = t.dcsd_at[1];
        e.rad_binding = t.min_rad <= 0.5 * t.dcsd;
    }
    switch (mode_) {
        case OptimizerMode::Ropelength:
            e.objective = e.ropelength;
            e.ratio = e.ropelength;
            return e;
        case OptimizerMode::Windowed: {
            const double excess = std::max(0.0, e.ropelength / cap() - 1.0);
            e.feasible = e.ropelength <= cap() * (1.0 - kCapMargin);
            if (k != npos && !burn_in() && !e.feasible && (cur_.feasible || e.ropelength >= cur_.ropelength)) {
                return std::nullopt;
            }
            const SpreadValue d = (k == npos) ? (evaluator_->reset(c), evaluator_->value()) : evaluator_->propose(k, c);
            e.ratio = e.length / d.value;
            double penalty = cfg_.penalty_length * excess;
            if (burn_in() && k != npos) {
                penalty += cfg_.penalty_thickness * std::max(0.0, 1.0 - e.thickness / cur_.thickness);
            }
            e.objective = e.ratio * (1.0 + penalty);
            return e;
        }
        case OptimizerMode::Explore: {
            const SpreadValue d = (k == npos) ? (evaluator_->reset(c), evaluator_->value()) : evaluator_->propose(k, c);
            e.ratio = d.value / e.length;
            e.objective = e.length / d.value;
            return e;
        }
    }
    return std::nullopt;
}

void Annealer::accept(const PolygonalCurve& c, const Eval& e) {
    cur_curve_ = c;
    cur_ = e;
    if (mode_ == OptimizerMode::Explore) return;
    // Keep the state at unit thickness; length becomes the ropelength.
    const double factor = 1.0 / e.thickness;
    cur_curve_ = scaled(cur_curve_, factor);
    if (evaluator_) evaluator_->rescale(factor);
    cur_.thickness = e.thickness * factor;
    cur_.length = e.length * factor;
    for (auto& w : cur_.witness) w = w * factor;
}

void Annealer::consider_best() {
    if (!cur_.feasible) return;
    const bool better = !best_ || (mode_ == OptimizerMode::Explore ? cur_.ratio > *best_ : cur_.ratio < *best_);
    if (better) {
        best_ = cur_.ratio;
        best_curve_ = cur_curve_;
    }
}

void Annealer::record_trace() {
    TracePoint tp{iteration_, cur_.ratio, best_.value_or(cur_.ratio), cur_.thickness, cur_.length};
    if (mode_ == OptimizerMode::Explore) tp.thickness = thickness_unchecked(cur_curve_).thickness;
    trace_.push_back(tp);
}

void Annealer::resample() {
    const std::size_t n = cur_curve_.size();
    PolygonalCurve next = cur_curve_;
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        const Vertex3& a = next.vertex(si - 1);
        const Vertex3& p = next.vertex(si);
        const Vertex3& b = next.vertex(si + 1);
        const double l1 = distance(a, p);
        const double l2 = distance(p, b);
        const double s = 0.5 * (l1 + l2);
        const Vertex3 q = (s <= l1) ? a + (p - a) * (s / l1) : p + (b - p) * ((s - l1) / l2);
        if (distance(q, p) <= 1e-6 * s) continue;
        if (!move_admissible(next, i, q)) continue;
        next = with_vertex(next, i, q);
        changed = true;
    }
    if (!changed) return;
    if (mode_ == OptimizerMode::Explore) next = scaled(next, initial_length_ / length(next));

    const PolygonalCurve saved_curve = cur_curve_;
    const Eval saved = cur_;
    std::optional<Eval> e;
    try {
        e = evaluate(next, npos);
    } catch (const Error&) {
        e.reset();
    }
    if (!e || (mode_ == OptimizerMode::Windowed && !burn_in() && saved.feasible && !e->feasible)) {
        // Keep the old state; the evaluator cache must match it again.
        if (evaluator_) evaluator_->reset(saved_curve);
        cur_curve_ = saved_curve;
        cur_ = saved;
        return;
    }
    accept(next, *e);
    consider_best();
}

OptimizationResult Annealer::run() {
    cfg_.validate();
    require_embedded(cur_curve_);
    const std::size_t n = cur_curve_.size();
    if (n < 4) throw Error(ErrorKind::InvalidArgument, "optimizer needs at least 4 vertices");

    OptimizationResult out{.mode = mode_, .best_curve = cur_curve_};
    out.window = window_;
    out.exponent = exponent_;
    out.guard_start = knot_determinant(cur_curve_);
    initial_length_ = length(cur_curve_);

    if (exponent_) evaluator_.emplace(cur_curve_, *exponent_, cfg_.quadrature);
    {
        const auto e = evaluate(cur_curve_, npos);
        accept(cur_curve_, *e);
        consider_best();
        out.initial_ratio = e->ratio;
    }

    std::mt19937_64 rng(cfg_.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const long trace_every = cfg_.trace_every > 0 ? cfg_.trace_every : std::max(1L, cfg_.max_iters / 200);
    double temperature = cfg_.temp0;
    // Step multiplier adapted per block of proposals: a stalled chain shrinks its moves.
    double step_scale = 1.0;
    const long block = std::max<long>(50, static_cast<long>(n));
    long block_accepts = 0;

    record_trace();
    for (iteration_ = 1; iteration_ <= cfg_.max_iters; ++iteration_) {
        if (cfg_.resample_every > 0 && iteration_ % cfg_.resample_every == 0) resample();

        std::size_t k = pick(rng);
        const double bias = unit(rng);
        if (mode_ != OptimizerMode::Explore && bias < 0.5) {
            // Half the proposals go near whatever currently limits the thickness.
            const Vertex3& w = cur_.rad_binding ? cur_.witness[0] : cur_.witness[1 + k % 2];
            const std::size_t c = nearest_vertex(cur_curve_, w);
            k = cur_curve_.wrap(static_cast<std::ptrdiff_t>(c) + static_cast<std::ptrdiff_t>((k / 2) % 5) - 2);
        }
        const double heat = cfg_.temp0 > 0.0 ? 0.1 + 0.9 * temperature / cfg_.temp0 : 1.0;
        const double sigma = cfg_.initial_step * step_scale * (cur_.length / static_cast<double>(n)) * heat;
        const Vec3 step{gauss(rng), gauss(rng), gauss(rng)};
        const double u = unit(rng);
        const Vertex3 target = cur_curve_.vertex(static_cast<std::ptrdiff_t>(k)) + step * sigma;

        bool ok = false;
        if (move_admissible(cur_curve_, k, target)) {
            const PolygonalCurve cand = with_vertex(cur_curve_, k, target);
            std::optional<Eval> e;
            try {
                e = evaluate(cand, k);
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::Quadrature && err.kind() != ErrorKind::SingularityTooStrong &&
                    err.kind() != ErrorKind::DegenerateGeometry) {
                    throw;
                }
            }
            if (e) {
                const double delta = (e->objective - cur_.objective) / std::abs(cur_.objective);
                ok = delta <= 0.0 || (temperature > 0.0 && u < std::exp(-delta / temperature));
                if (ok) {
                    if (evaluator_) evaluator_->commit();
                    accept(cand, *e);
                    consider_best();
                }
            }
        }
        if (ok) {
            ++accepted_;
            ++block_accepts;
            if (accepted_ % static_cast<long>(n) == 0) temperature *= cfg_.cooling;
        } else {
            ++rejected_;
        }
        if (iteration_ % block == 0) {
            const double rate = static_cast<double>(block_accepts) / static_cast<double>(block);
            if (rate < 0.05) step_scale = std::max(1e-3, 0.5 * step_scale);
            else if (rate > 0.4) step_scale = std::min(1.0, 1.5 * step_scale);
            block_accepts = 0;
        }
        if (iteration_ % trace_every == 0 || iteration_ == cfg_.max_iters) record_trace();
    }

    if (!best_) {
        std::ostringstream msg;
        msg << "no state met the window (lambda * rop_reference = " << cap() << ", best ropelength reached "
            << cur_.ropelength << ")";
        throw Error(ErrorKind::Infeasible, msg.str());
    }

    PolygonalCurve best = best_curve_;
    switch (mode_) {
        case OptimizerMode::Ropelength:
            best = normalize_to_unit_thickness(best);
            out.best_ratio = thickness(best).ropelength;
            break;
        case OptimizerMode::Windowed: {
            best = normalize_to_unit_thickness(best);
            out.best_ratio = density_ratio(best, *exponent_, cfg_.quadrature);
            const WindowCheck w = window_feasible(best, *window_);
            if (!w.feasible) {
                std::ostringstream msg;
                msg << "best curve misses the window (thi_slack " << w.thi_slack << ", len_slack " << w.len_slack << ")";
                throw Error(ErrorKind::Infeasible, msg.str());
            }
            break;
        }
        case OptimizerMode::Explore:
            best = scaled(best, initial_length_ / length(best));
            out.best_ratio = spread(best, *exponent_, cfg_.quadrature).value / length(best);
            out.circle_reference = circle_spread(1.0, *exponent_);
            out.banner = kExplorerBanner;
            break;
    }
    require_embedded(best);
    out.guard_end = knot_determinant(best);
    if (out.guard_end.determinant != out.guard_start.determinant) {
        std::ostringstream msg;
        msg << "knot determinant changed from " << out.guard_start.determinant << " to "
            << out.guard_end.determinant;
        throw Error(ErrorKind::GuardMismatch, msg.str());
    }
    out.best_curve = std::move(best);
    out.trace = std::move(trace_);
    out.accepted = accepted_;
    out.rejected = rejected_;
    return out;
}

}  // namespace

void OptimizerConfig::validate() const {
    auto fail = [](const char* what) { throw Error(ErrorKind::InvalidArgument, what); };
    if (max_iters < 0) fail("max_iters must be non-negative");
    if (!(initial_step > 0.0)) fail("initial_step must be positive");
    if (!(cooling > 0.0 && cooling < 1.0)) fail("cooling must lie in (0, 1)");
    if (!(temp0 >= 0.0)) fail("temp0 must be non-negative");
    if (!(penalty_thickness >= 0.0) || !(penalty_length >= 0.0)) fail("penalties must be non-negative");
    if (resample_every < 0) fail("resample_every must be non-negative");
    if (trace_every < 0) fail("trace_every must be non-negative");
    quadrature.validate();
}

const char* to_string(OptimizerMode mode) noexcept {
    switch (mode) {
        case OptimizerMode::Ropelength: return "ropelength";
        case OptimizerMode::Windowed: return "windowed";
        case OptimizerMode::Explore: return "explore";
    }
    return "unknown";
}

bool move_admissible(const PolygonalCurve& curve, std::size_t k, const Vertex3& target) {
    const std::size_t n = curve.size();
    const auto sk = static_cast<std::ptrdiff_t>(k);
    const std::size_t ia = curve.wrap(sk - 1);
    const std::size_t ib = curve.wrap(sk + 1);
    const Vertex3& a = curve.vertex(sk - 1);
    const Vertex3& p = curve.vertex(sk);
    const Vertex3& b = curve.vertex(sk + 1);
    if (!is_finite(target)) return false;
    const double tol = 1e-9 * length(curve);
    if (distance(target, a) <= tol || distance(target, b) <= tol) return false;

    const double limit = std::numbers::pi - kFoldMargin;
    if (angle_between(target - a, b - target) >= limit) return false;
    if (angle_between(a - curve.vertex(sk - 2), target - a) >= limit) return false;
    if (angle_between(b - target, curve.vertex(sk + 2) - b) >= limit) return false;

    const std::size_t e_in = ia;  // edge a -> target
    const std::size_t e_out = k;  // edge target -> b
    const Segment new_in{a, target};
    const Segment new_out{target, b};
    for (std::size_t j = 0; j < n; ++j) {
        if (j == e_in || j == e_out) continue;
        const std::size_t j1 = (j + 1) % n;
        Vertex3 u = curve.vertex(static_cast<std::ptrdiff_t>(j));
        Vertex3 w = curve.vertex(static_cast<std::ptrdiff_t>(j1));
        const Vertex3 u0 = u;
        if (j == ia || j == ib) u = u + (w - u) * kShrink;
        if (j1 == ia || j1 == ib) w = w + (u0 - w) * kShrink;
        const Segment seg{u, w};
        if (segment_intersects_triangle(seg, a, p, target) || segment_intersects_triangle(seg, p, target, b)) {
            return false;
        }
        const Segment full = curve.edge(static_cast<std::ptrdiff_t>(j));
        if (!edges_adjacent(n, j, e_in) && segment_distance(full, new_in).distance <= tol) return false;
        if (!edges_adjacent(n, j, e_out) && segment_distance(full, new_out).distance <= tol) return false;
    }
    return true;
}

OptimizationResult minimize_ropelength(const PolygonalCurve& initial, const OptimizerConfig& cfg) {
    return Annealer(OptimizerMode::Ropelength, initial, cfg, std::nullopt, std::nullopt).run();
}

OptimizationResult minimize_windowed_density(const PolygonalCurve& initial, const Exponent& exponent,
                                             const WindowConfig& window, const OptimizerConfig& cfg) {
    if (!(window.lambda >= 1.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be >= 1");
    if (!(window.rop_reference > 0.0)) throw Error(ErrorKind::InvalidArgument, "rop_reference must be positive");
    // No closed curve has ropelength below that of the round circle.
    if (window.lambda * window.rop_reference < 2.0 * std::numbers::pi) {
        std::ostringstream msg;
        msg << "window cap " << window.lambda * window.rop_reference << " is below 2*pi";
        throw Error(ErrorKind::Infeasible, msg.str());
    }
    return Annealer(OptimizerMode::Windowed, initial, cfg, exponent, window).run();
}

OptimizationResult maximize_spread_ratio(const Exponent& exponent, const OptimizerConfig& cfg,
                                         const PolygonalCurve& initial) {
    if (!exponent.is_finite() || exponent.p() < 2.0) {
        throw Error(ErrorKind::InvalidArgument, "the explorer needs a finite exponent p >= 2");
    }
    return Annealer(OptimizerMode::Explore, initial, cfg, exponent, std::nullopt).run();
}

}  // namespace knotspread
