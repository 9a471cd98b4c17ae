#include "ggq/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ggq/densesolve.hpp"

namespace ggq {

namespace {

bool log_enabled() {
    static const bool on = std::getenv("GGQ_LOG") != nullptr;
    return on;
}

void logf(const char* fmt, ...) {
    if (!log_enabled()) return;
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
    va_end(args);
}

double max_residual_of(const std::vector<double>& residuals) {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
}

char phase_char(Objective o) { return o == Objective::F ? 'F' : 'G'; }

struct PhaseContext {
    const ChebyshevSet& set;
    const MomentVector& moments;
    const ComputeControls& controls;
    double a, b;

    double phase_scale(int m) const {
        double s = 1.0;
        for (int j = 0; j <= m && j < moments.size(); ++j)
            s = std::max(s, std::abs(moments[j]));
        return s;
    }
};

TraceSample make_sample(const NodeWeightState& s, Objective phase, double objective,
                        bool breakpoint) {
    return TraceSample{s.xi, s.k, phase, breakpoint, objective, s.points, s.weights};
}

NodeWeightState with_xi(const NodeWeightState& base, double xi) {
    NodeWeightState s = base;
    s.xi = xi;
    s.points[0] = xi;
    return s;
}

// Linear prediction of a state at xi_new from a converged state and its
// tangent (or from two recent states in derivative-free mode).
NodeWeightState predict(const NodeWeightState& cur, const NodeWeightState* prev,
                        const ChebyshevSet& set, double xi_new, double a, double b) {
    NodeWeightState guess = with_xi(cur, xi_new);
    const double h = xi_new - cur.xi;
    if (set.differentiable()) {
        try {
            Tangent t = tangent(cur, set);
            for (int i = 1; i < cur.active_count(); ++i)
                guess.points[static_cast<size_t>(i)] += h * t.dpoints[static_cast<size_t>(i)];
            for (int i = 0; i < cur.active_count(); ++i)
                guess.weights[static_cast<size_t>(i)] += h * t.dweights[static_cast<size_t>(i)];
        } catch (const SingularSystemError&) {
            // near a breakpoint: fall back to the unshifted values
            guess = with_xi(cur, xi_new);
        }
    } else if (prev && prev->active_count() == cur.active_count() &&
               std::abs(cur.xi - prev->xi) > 0.0) {
        const double slope = h / (cur.xi - prev->xi);
        for (int i = 1; i < cur.active_count(); ++i)
            guess.points[static_cast<size_t>(i)] +=
                slope * (cur.points[static_cast<size_t>(i)] - prev->points[static_cast<size_t>(i)]);
        for (int i = 0; i < cur.active_count(); ++i)
            guess.weights[static_cast<size_t>(i)] +=
                slope * (cur.weights[static_cast<size_t>(i)] - prev->weights[static_cast<size_t>(i)]);
    }
    if (!guess.ordered(a, b)) guess = with_xi(cur, xi_new);
    return guess;
}

// Interpolate two converged bracket states for a bisection trial.
NodeWeightState interpolate(const NodeWeightState& lo, const NodeWeightState& hi, double xi) {
    const double t = (xi - lo.xi) / (hi.xi - lo.xi);
    NodeWeightState s = with_xi(lo, xi);
    for (int i = 1; i < lo.active_count(); ++i)
        s.points[static_cast<size_t>(i)] =
            lo.points[static_cast<size_t>(i)] +
            t * (hi.points[static_cast<size_t>(i)] - lo.points[static_cast<size_t>(i)]);
    for (int i = 0; i < lo.active_count(); ++i)
        s.weights[static_cast<size_t>(i)] =
            lo.weights[static_cast<size_t>(i)] +
            t * (hi.weights[static_cast<size_t>(i)] - lo.weights[static_cast<size_t>(i)]);
    return s;
}

} // namespace

WeightSpec default_weight(const BasisDescriptor& descriptor) {
    WeightSpec w;
    w.kind = (descriptor.family == Family::MonicLaguerreType ||
              descriptor.family == Family::LaguerreTypePlusLog)
                 ? WeightSpec::Kind::ExpDecay
                 : WeightSpec::Kind::Unit;
    return w;
}

NodeWeightState init_one_point(const ChebyshevSet& set, const MomentVector& moments) {
    if (moments.size() < 2) throw std::invalid_argument("need at least two moments");
    const double a = set.domain().a, b = set.domain().b;
    const double target = moments[1] / moments[0];
    auto ratio = [&](double t) { return set.eval(1, t) / set.eval(0, t) - target; };

    // Bracket the root; the ratio is monotone for a Chebyshev pair. March
    // geometrically toward a in case u_1 is singular there.
    double hi = b, flo = 0.0, lo = b;
    const double fhi = ratio(b);
    bool bracketed = false;
    for (int i = 1; i <= 1100; ++i) {
        double t = a + (b - a) * std::pow(0.5, i);
        if (!(t > a)) break;
        double ft = ratio(t);
        if (std::isfinite(ft) && ft * fhi <= 0.0) {
            lo = t;
            flo = ft;
            bracketed = true;
            break;
        }
    }
    if (!bracketed)
        throw Error("one-point rule: u_1/u_0 - c_1/c_0 has no sign change on [a,b]; "
                    "the set does not look like a complete Chebyshev set for this weight");

    // Safeguarded Newton within [lo, hi], bisection fallback.
    double x = 0.5 * (lo + hi);
    double fx = ratio(x);
    double lo_s = lo, hi_s = hi, flo_s = flo;
    for (int iter = 0; iter < 200 && std::abs(fx) > 1e-15 * std::max(1.0, std::abs(target));
         ++iter) {
        if (fx * flo_s <= 0.0) hi_s = x;
        else {
            lo_s = x;
            flo_s = fx;
        }
        double xn = x;
        if (set.differentiable()) {
            const double u0 = set.eval(0, x), u1 = set.eval(1, x);
            const double d = (set.deriv(1, x) * u0 - u1 * set.deriv(0, x)) / (u0 * u0);
            if (d != 0.0) xn = x - fx / d;
        }
        if (!(xn > lo_s && xn < hi_s)) xn = 0.5 * (lo_s + hi_s);
        if (xn == x) break;
        x = xn;
        fx = ratio(x);
    }

    NodeWeightState s;
    s.k = 0;
    s.kind = CanonicalKind::LowerFree;
    s.xi = x;
    s.points = {x};
    s.weights = {moments[0] / set.eval(0, x)};
    return s;
}

PhaseResult advance_phase(const NodeWeightState& state0, const ChebyshevSet& set,
                          const MomentVector& moments, Objective phase,
                          const ComputeControls& controls) {
    PhaseContext ctx{set, moments, controls, set.domain().a, set.domain().b};
    const int m = state0.objective_index();
    if (moments.size() <= m)
        throw std::invalid_argument("phase objective needs one more moment than governed");
    const double target = moments[m];
    const double ptol = controls.phase_tol * ctx.phase_scale(m);
    const double min_step = 1e-13 * (ctx.b - ctx.a);
    const double trace_cap = controls.record_trace
                                 ? (ctx.b - ctx.a) / 200.0
                                 : std::numeric_limits<double>::infinity();

    PhaseResult out;
    NodeWeightState cur = newton_canonical(state0, set, moments, controls.newton_tol,
                                           controls.newton_max_iter);
    double fcur = eval_objective(cur, set, target, phase);
    if (std::abs(fcur) <= 0.01 * ptol) {
        out.root = cur;
        out.samples.push_back(make_sample(cur, phase, fcur, true));
        return out;
    }
    const double sign0 = fcur > 0.0 ? 1.0 : -1.0;

    double step = std::min((cur.xi - ctx.a) / 64.0, trace_cap);
    NodeWeightState prev = cur;
    bool have_prev = false;

    // March xi downward until the objective changes sign.
    NodeWeightState lo_state = cur;
    double flo = fcur;
    bool bracketed = false;
    for (long iter = 0; !bracketed; ++iter) {
        if (iter > 2000000)
            throw ContinuationError("continuation failed to bracket the phase root", cur.xi,
                                    phase_char(phase), std::abs(fcur));
        double xi_try = cur.xi - step;
        if (xi_try <= ctx.a + min_step) {
            if (step > min_step * 4.0) {
                step *= 0.5;
                continue;
            }
            throw ContinuationError(
                "phase objective did not change sign before xi reached the left endpoint",
                cur.xi, phase_char(phase), std::abs(fcur));
        }
        NodeWeightState guess = predict(cur, have_prev ? &prev : nullptr, set, xi_try, ctx.a, ctx.b);
        NodeWeightState next;
        try {
            next = newton_canonical(guess, set, moments, controls.newton_tol,
                                    controls.newton_max_iter);
        } catch (const NewtonDivergenceError&) {
            step *= 0.5;
            if (step < min_step)
                throw ContinuationError("continuation step underflow (Newton kept failing)",
                                        cur.xi, phase_char(phase), std::abs(fcur));
            continue;
        }
        const double fnext = eval_objective(next, set, target, phase);
        if (fnext * sign0 > 0.0 && std::abs(fnext) > ptol) {
            prev = cur;
            have_prev = true;
            cur = next;
            fcur = fnext;
            out.samples.push_back(make_sample(cur, phase, fcur, false));
            step = std::min({step * 1.5, trace_cap, (cur.xi - ctx.a) * 0.5});
            continue;
        }
        lo_state = next;
        flo = fnext;
        bracketed = true;
    }

    // Root refinement on [lo, hi]: bisection with converged Newton solves
    // at every trial, then a few Newton steps on xi itself.
    NodeWeightState hi_state = cur;
    double fhi = fcur;
    NodeWeightState best = std::abs(flo) < std::abs(fhi) ? lo_state : hi_state;
    double fbest = std::abs(flo) < std::abs(fhi) ? flo : fhi;
    int newton_polish = 0;
    for (int iter = 0; iter < 300 && std::abs(fbest) > ptol; ++iter) {
        double xi_next = 0.5 * (lo_state.xi + hi_state.xi);
        // Prefer a Newton step on xi once we are close (up to 5).
        if (set.differentiable() && newton_polish < 5 && std::abs(fbest) < std::abs(sign0) * 1e3 * ptol) {
            try {
                Tangent t = tangent(best, set);
                const double d = eval_objective_derivative(best, t, set, phase);
                const double xi_newton = best.xi - fbest / d;
                if (std::isfinite(xi_newton) && xi_newton > lo_state.xi && xi_newton < hi_state.xi) {
                    xi_next = xi_newton;
                    ++newton_polish;
                }
            } catch (const Error&) {
                // keep bisection
            }
        }
        NodeWeightState guess = interpolate(lo_state, hi_state, xi_next);
        if (!guess.ordered(ctx.a, ctx.b)) guess = with_xi(hi_state, xi_next);
        NodeWeightState mid;
        try {
            mid = newton_canonical(guess, set, moments, controls.newton_tol,
                                   controls.newton_max_iter);
        } catch (const NewtonDivergenceError&) {
            // retry from the other bracket end before giving up
            try {
                mid = newton_canonical(with_xi(lo_state, xi_next), set, moments,
                                       controls.newton_tol, controls.newton_max_iter);
            } catch (const NewtonDivergenceError&) {
                throw ContinuationError("Newton failed inside the root bracket", xi_next,
                                        phase_char(phase), std::abs(fbest));
            }
        }
        const double fmid = eval_objective(mid, set, target, phase);
        if (std::abs(fmid) < std::abs(fbest)) {
            best = mid;
            fbest = fmid;
        }
        if (fmid * sign0 > 0.0) {
            hi_state = mid;
            fhi = fmid;
        } else {
            lo_state = mid;
            flo = fmid;
        }
        if (hi_state.xi - lo_state.xi < 4e-16 * std::max(1.0, std::abs(hi_state.xi))) break;
    }
    if (std::abs(fbest) > ptol)
        throw ContinuationError("phase root not resolved to tolerance", best.xi,
                                phase_char(phase), std::abs(fbest));
    logf("[ggq] %c-phase k=%d root xi=%.17g |obj|=%.3g", phase_char(phase), state0.k,
         best.xi, std::abs(fbest));
    out.root = best;
    out.samples.push_back(make_sample(best, phase, fbest, true));
    return out;
}

namespace {

QuadratureRule make_rule(const NodeWeightState& s, RuleLabel label, const ChebyshevSet& set,
                         const MomentVector& moments) {
    QuadratureRule r;
    r.points = s.points;
    r.weights = s.weights;
    r.label = label;
    r.exact_count = s.governed_moments() + 1;
    r.domain = set.domain();
    r.residuals.resize(static_cast<size_t>(r.exact_count));
    for (int j = 0; j < r.exact_count; ++j) {
        double sum = 0.0;
        for (size_t i = 0; i < r.points.size(); ++i)
            sum += r.weights[i] * set.eval(j, r.points[i]);
        r.residuals[static_cast<size_t>(j)] = (sum - moments[j]) / moments.scale(j);
    }
    r.condition_estimate = jacobian_condition(s, set, moments);
    return r;
}

ComputeResult compute_core(const ChebyshevSet& set, const MomentVector& mom, int l,
                           const ComputeControls& controls) {
    const double a = set.domain().a, b = set.domain().b;

    ComputeResult result;
    result.trace.breakpoints.lower.reserve(static_cast<size_t>(l));
    result.trace.breakpoints.upper.assign(1, b); // upper[0] = b by convention

    // Start at xi = b with the single active point parked there.
    NodeWeightState state;
    state.k = 0;
    state.kind = CanonicalKind::LowerFree;
    state.xi = b;
    state.points = {b};
    state.weights = {mom[0] / set.eval(0, b)};
    if (controls.record_trace)
        result.trace.samples.push_back(
            make_sample(state, Objective::G, eval_objective(state, set, mom[1], Objective::G), false));

    auto absorb = [&](PhaseResult&& pr) {
        if (controls.record_trace)
            result.trace.samples.insert(result.trace.samples.end(), pr.samples.begin(),
                                        pr.samples.end());
        return std::move(pr.root);
    };

    state = absorb(advance_phase(state, set, mom, Objective::G, controls));
    result.trace.breakpoints.lower.push_back(state.xi);
    result.all_rules.push_back(make_rule(state, RuleLabel::LowerPrincipal, set, mom));

    for (int k = 1; k < l; ++k) {
        // Append the right endpoint with weight zero: canonical
        // representation with the endpoint pinned.
        NodeWeightState upper = state;
        upper.k = k;
        upper.kind = CanonicalKind::UpperFixedB;
        upper.points.push_back(b);
        upper.weights.push_back(0.0);

        state = absorb(advance_phase(upper, set, mom, Objective::F, controls));
        result.trace.breakpoints.upper.push_back(state.xi);
        result.all_rules.push_back(make_rule(state, RuleLabel::UpperPrincipal, set, mom));

        // Release the endpoint: same representation viewed with a free
        // last point, one more governed moment.
        state.kind = CanonicalKind::LowerFree;
        state = absorb(advance_phase(state, set, mom, Objective::G, controls));
        result.trace.breakpoints.lower.push_back(state.xi);
        result.all_rules.push_back(make_rule(state, RuleLabel::LowerPrincipal, set, mom));
    }

    result.rule = result.all_rules.back();
    if (result.rule.max_residual() > controls.final_tol)
        throw ContinuationError("final rule failed re-verification", state.xi, 'G',
                                result.rule.max_residual());
    result.trace.mirrored = false;
    return result;
}

void mirror_rule(QuadratureRule& r, double a, double b) {
    std::reverse(r.points.begin(), r.points.end());
    std::reverse(r.weights.begin(), r.weights.end());
    for (double& x : r.points) x = a + b - x;
}

ComputeResult mirror_result(ComputeResult&& res, double a, double b) {
    ComputeResult out = std::move(res);
    mirror_rule(out.rule, a, b);
    for (auto& r : out.all_rules) mirror_rule(r, a, b);
    for (auto& s : out.trace.samples) {
        s.xi = a + b - s.xi;
        std::reverse(s.points.begin(), s.points.end());
        for (double& x : s.points) x = a + b - x;
        std::reverse(s.weights.begin(), s.weights.end());
    }
    for (double& x : out.trace.breakpoints.lower) x = a + b - x;
    for (double& x : out.trace.breakpoints.upper) x = a + b - x;
    out.trace.mirrored = true;
    return out;
}

} // namespace

double QuadratureRule::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
}

ComputeResult compute_rule(const ChebyshevSet& set, const WeightSpec& weight, int l,
                           const ComputeControls& controls) {
    if (l < 1) throw std::invalid_argument("l must be >= 1");
    if (set.size() < 2 * l)
        throw std::invalid_argument("set must have at least 2l elements");
    MomentVector mom = moments(set, weight, 2 * l, controls.moment_tol);

    if (controls.direction == Direction::Right) return compute_core(set, mom, l, controls);

    // direction=left: reflect the domain, run rightward, map back.
    const Interval dom = set.domain();
    const double a = dom.a, b = dom.b;
    // Appending at the reflected right endpoint means pinning the
    // original left endpoint; reject when the basis is singular there.
    try {
        (void)set.eval(set.size() - 1, a);
    } catch (const std::domain_error&) {
        throw std::invalid_argument(
            "direction=left would pin the singular left endpoint of this basis");
    }
    const ChebyshevSet* base = &set;
    ChebyshevSet mirrored = [&] {
        ChebyshevSet::EvalFn ev = [base, a, b](int j, double t) { return base->eval(j, a + b - t); };
        ChebyshevSet::EvalFn dv;
        if (set.differentiable())
            dv = [base, a, b](int j, double t) { return -base->deriv(j, a + b - t); };
        return make_custom_set(dom, set.size(), std::move(ev), std::move(dv));
    }();
    ComputeResult res = compute_core(mirrored, mom, l, controls);
    return mirror_result(std::move(res), a, b);
}

ComputeResult compute_rule(const BasisDescriptor& descriptor, int l,
                           const ComputeControls& controls) {
    ChebyshevSet set = make_set(descriptor);
    return compute_rule(set, default_weight(descriptor), l, controls);
}

} // namespace ggq
