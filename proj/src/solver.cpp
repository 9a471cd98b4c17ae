#include "ggq/solver.hpp"

#include <algorithm>
#include <cmath>

#include "ggq/densesolve.hpp"

namespace ggq {

namespace {

// Basis derivative, analytic or central finite differences near the
// interval edges for derivative-free sets.
double basis_deriv(const ChebyshevSet& set, int j, double x) {
    if (set.differentiable()) return set.deriv(j, x);
    const Interval& dom = set.domain();
    const double h = 3e-6 * dom.length();
    if (x + h > dom.b) return (set.eval(j, x) - set.eval(j, x - h)) / h;
    if (x - h <= dom.a) return (set.eval(j, x + h) - set.eval(j, x)) / h;
    return (set.eval(j, x + h) - set.eval(j, x - h)) / (2.0 * h);
}

struct UnknownLayout {
    int n_weights;     // k+1
    int n_free_points; // k-1 (UpperFixedB) or k (LowerFree)
    int size() const { return n_weights + n_free_points; }
    // Free point slots are points[1] .. points[n_free_points].
};

UnknownLayout layout_of(const NodeWeightState& s) {
    const int np = s.active_count();
    return {np, s.kind == CanonicalKind::UpperFixedB ? np - 2 : np - 1};
}

void check_shape(const NodeWeightState& s, const MomentVector& c) {
    const int np = s.active_count();
    if (static_cast<int>(s.points.size()) != np || static_cast<int>(s.weights.size()) != np)
        throw std::invalid_argument("state arrays must have k+1 entries");
    if (s.points[0] != s.xi) throw std::invalid_argument("points[0] must equal xi");
    if (c.size() < s.governed_moments())
        throw std::invalid_argument("not enough moments for this state");
    if (layout_of(s).size() != s.governed_moments())
        throw std::invalid_argument("unknown/equation count mismatch");
}

std::vector<double> scaled_residuals(const NodeWeightState& s, const ChebyshevSet& set,
                                     const MomentVector& c) {
    const int neq = s.governed_moments();
    std::vector<double> r(static_cast<size_t>(neq));
    for (int j = 0; j < neq; ++j) {
        double sum = 0.0;
        for (int i = 0; i < s.active_count(); ++i)
            sum += s.weights[static_cast<size_t>(i)] * set.eval(j, s.points[static_cast<size_t>(i)]);
        r[static_cast<size_t>(j)] = (sum - c[j]) / c.scale(j);
    }
    return r;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Jacobian of the scaled exactness equations in the free unknowns
// [w_0..w_k, x_1..x_free], with column equilibration factors returned
// so solutions can be unscaled.
struct ScaledJacobian {
    LuSolver lu;
    std::vector<double> colscale;
};

ScaledJacobian assemble_jacobian(const NodeWeightState& s, const ChebyshevSet& set,
                                 const MomentVector& c) {
    const UnknownLayout lay = layout_of(s);
    const int n = lay.size();
    std::vector<double> J(static_cast<size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        const double sj = c.scale(j);
        for (int i = 0; i < lay.n_weights; ++i)
            J[static_cast<size_t>(j) * n + i] = set.eval(j, s.points[static_cast<size_t>(i)]) / sj;
        for (int p = 0; p < lay.n_free_points; ++p) {
            const int idx = p + 1;
            J[static_cast<size_t>(j) * n + lay.n_weights + p] =
                s.weights[static_cast<size_t>(idx)] * basis_deriv(set, j, s.points[static_cast<size_t>(idx)]) / sj;
        }
    }
    std::vector<double> colscale(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            colscale[static_cast<size_t>(i)] = std::max(colscale[static_cast<size_t>(i)], std::abs(J[static_cast<size_t>(j) * n + i]));
    for (int i = 0; i < n; ++i)
        if (colscale[static_cast<size_t>(i)] == 0.0) colscale[static_cast<size_t>(i)] = 1.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) J[static_cast<size_t>(j) * n + i] /= colscale[static_cast<size_t>(i)];
    return {LuSolver(std::move(J), n), std::move(colscale)};
}

} // namespace

bool NodeWeightState::ordered(double a, double b) const {
    if (points.empty()) return false;
    if (!(points.front() >= a) || !(points.back() <= b)) return false;
    for (size_t i = 1; i < points.size(); ++i)
        if (!(points[i - 1] < points[i])) return false;
    return true;
}

double max_scaled_residual(const NodeWeightState& state, const ChebyshevSet& set,
                           const MomentVector& moments) {
    return max_abs(scaled_residuals(state, set, moments));
}

NodeWeightState newton_canonical(NodeWeightState state, const ChebyshevSet& set,
                                 const MomentVector& moments, double tol, int max_iter) {
    check_shape(state, moments);
    const Interval& dom = set.domain();
    if (!state.ordered(dom.a, dom.b))
        throw std::invalid_argument("starting state violates point ordering");

    const UnknownLayout lay = layout_of(state);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<double> r = scaled_residuals(state, set, moments);
        if (max_abs(r) <= tol) return state;

        std::vector<double> step;
        ScaledJacobian* jac = nullptr;
        ScaledJacobian storage = [&]() -> ScaledJacobian {
            try {
                return assemble_jacobian(state, set, moments);
            } catch (const SingularSystemError& e) {
                throw NewtonDivergenceError(std::string("singular Jacobian: ") + e.what());
            }
        }();
        jac = &storage;
        for (double& v : r) v = -v;
        step = jac->lu.solve(r);
        for (int i = 0; i < lay.size(); ++i) step[static_cast<size_t>(i)] /= jac->colscale[static_cast<size_t>(i)];

        // Halve the step until the updated points stay ordered in [a,b].
        bool accepted = false;
        double alpha = 1.0;
        for (int halving = 0; halving <= 20; ++halving, alpha *= 0.5) {
            NodeWeightState cand = state;
            for (int i = 0; i < lay.n_weights; ++i)
                cand.weights[static_cast<size_t>(i)] += alpha * step[static_cast<size_t>(i)];
            for (int p = 0; p < lay.n_free_points; ++p)
                cand.points[static_cast<size_t>(p + 1)] += alpha * step[static_cast<size_t>(lay.n_weights + p)];
            if (!cand.ordered(dom.a, dom.b)) continue;
            bool finite = true;
            for (double v : cand.weights) finite = finite && std::isfinite(v);
            for (double v : cand.points) finite = finite && std::isfinite(v);
            if (!finite) continue;
            state = std::move(cand);
            accepted = true;
            break;
        }
        if (!accepted)
            throw NewtonDivergenceError("Newton step violates point ordering after 20 halvings");
    }
    if (max_abs(scaled_residuals(state, set, moments)) <= tol) return state;
    throw NewtonDivergenceError("Newton did not converge within the iteration budget");
}

Tangent tangent(const NodeWeightState& state, const ChebyshevSet& set) {
    if (!set.differentiable())
        throw Error("tangent unavailable: set has no derivatives (derivative-free mode)");
    // The tangent system shares the exactness Jacobian; scales here only
    // equilibrate, so any positive per-equation scale works.
    MomentVector dummy;
    dummy.values.assign(static_cast<size_t>(state.governed_moments()), 0.0);
    check_shape(state, dummy);

    const UnknownLayout lay = layout_of(state);
    ScaledJacobian jac = assemble_jacobian(state, set, dummy);
    std::vector<double> rhs(static_cast<size_t>(lay.size()));
    for (int j = 0; j < lay.size(); ++j)
        rhs[static_cast<size_t>(j)] = -state.weights[0] * set.deriv(j, state.xi);
    std::vector<double> d = jac.lu.solve(rhs);
    for (int i = 0; i < lay.size(); ++i) d[static_cast<size_t>(i)] /= jac.colscale[static_cast<size_t>(i)];

    Tangent t;
    t.dweights.assign(d.begin(), d.begin() + lay.n_weights);
    t.dpoints.assign(static_cast<size_t>(state.active_count()), 0.0);
    t.dpoints[0] = 1.0;
    for (int p = 0; p < lay.n_free_points; ++p)
        t.dpoints[static_cast<size_t>(p + 1)] = d[static_cast<size_t>(lay.n_weights + p)];
    // For UpperFixedB the last point is pinned at b: derivative stays 0.
    return t;
}

double jacobian_condition(const NodeWeightState& state, const ChebyshevSet& set,
                          const MomentVector& moments) {
    ScaledJacobian jac = assemble_jacobian(state, set, moments);
    return jac.lu.condition_estimate();
}

double eval_objective(const NodeWeightState& state, const ChebyshevSet& set,
                      double target_moment, Objective which) {
    if ((which == Objective::F) != (state.kind == CanonicalKind::UpperFixedB))
        throw std::invalid_argument("objective kind does not match the state kind");
    const int m = state.objective_index();
    double sum = 0.0;
    for (int i = 0; i < state.active_count(); ++i)
        sum += state.weights[static_cast<size_t>(i)] * set.eval(m, state.points[static_cast<size_t>(i)]);
    return sum - target_moment;
}

double eval_objective_derivative(const NodeWeightState& state, const Tangent& tangent,
                                 const ChebyshevSet& set, Objective which) {
    if (!set.differentiable())
        throw Error("objective derivative unavailable: set has no derivatives");
    if ((which == Objective::F) != (state.kind == CanonicalKind::UpperFixedB))
        throw std::invalid_argument("objective kind does not match the state kind");
    const int m = state.objective_index();
    double sum = 0.0;
    for (int i = 0; i < state.active_count(); ++i) {
        const double x = state.points[static_cast<size_t>(i)];
        sum += tangent.dweights[static_cast<size_t>(i)] * set.eval(m, x);
        if (tangent.dpoints[static_cast<size_t>(i)] != 0.0)
            sum += state.weights[static_cast<size_t>(i)] * set.deriv(m, x) * tangent.dpoints[static_cast<size_t>(i)];
    }
    return sum;
}

} // namespace ggq
