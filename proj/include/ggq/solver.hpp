#pragma once

#include <vector>

#include "ggq/basis.hpp"

namespace ggq {

/// Which exactness system a canonical representation satisfies.
///
/// UpperFixedB: x_1 = xi and x_{k+1} = b are fixed, leaving 2k unknowns
/// (k+1 weights, k-1 interior points) for the 2k moment equations.
/// LowerFree: only x_1 = xi is fixed, 2k+1 unknowns for 2k+1 equations.
enum class CanonicalKind { UpperFixedB, LowerFree };

/// Points and weights of a canonical representation at continuation
/// parameter xi = x_1. Immutable snapshot; k+1 points total.
struct NodeWeightState {
    double xi = 0.0;
    int k = 0;
    CanonicalKind kind = CanonicalKind::LowerFree;
    std::vector<double> points;  // size k+1, strictly increasing, points[0] == xi
    std::vector<double> weights; // size k+1

    int active_count() const { return k + 1; }
    /// Number of moment equations this state is constrained by.
    int governed_moments() const { return kind == CanonicalKind::UpperFixedB ? 2 * k : 2 * k + 1; }
    /// Basis index of the monitored next moment (2k for F, 2k+1 for G).
    int objective_index() const { return governed_moments(); }
    bool ordered(double a, double b) const;
};

enum class Objective { F, G };

struct Tangent {
    std::vector<double> dpoints;  // d x_i / d xi; dpoints[0] == 1
    std::vector<double> dweights; // d w_i / d xi
};

/// Newton solve of the canonical exactness system at fixed xi, starting
/// from `state`. Steps are halved (up to 20 times) whenever a full step
/// would break the point ordering or leave the interval. Residuals are
/// scaled per equation by 1/max(|c_j|,1); converged means the scaled
/// max residual is <= tol. Throws NewtonDivergenceError when the budget
/// is exhausted, which callers treat as "shrink the xi step".
///
/// For non-differentiable sets the Jacobian falls back to central
/// finite differences of the basis elements.
NodeWeightState newton_canonical(NodeWeightState state, const ChebyshevSet& set,
                                 const MomentVector& moments, double tol = 1e-13,
                                 int max_iter = 50);

/// Scaled max residual of the governed moment equations.
double max_scaled_residual(const NodeWeightState& state, const ChebyshevSet& set,
                           const MomentVector& moments);

/// Derivatives of the free points and weights with respect to xi at a
/// converged state, from the tangent linear system of the exactness
/// conditions. dpoints[0] = 1 always; dpoints[k] = 0 for UpperFixedB.
/// Throws SingularSystemError near a breakpoint. Requires a
/// differentiable set.
Tangent tangent(const NodeWeightState& state, const ChebyshevSet& set);

/// Condition estimate of the exactness Jacobian at a converged state
/// (diagnostic only).
double jacobian_condition(const NodeWeightState& state, const ChebyshevSet& set,
                          const MomentVector& moments);

/// F_k(xi) = sum_i w_i u_{2k}(x_i) - c_{2k}   (UpperFixedB states)
/// G_k(xi) = sum_i w_i u_{2k+1}(x_i) - c_{2k+1} (LowerFree states)
/// target_moment is the corresponding c value.
double eval_objective(const NodeWeightState& state, const ChebyshevSet& set,
                      double target_moment, Objective which);

/// d/dxi of the phase objective at a converged state, combining the
/// tangent with the chain rule over the moving points. Requires a
/// differentiable set.
double eval_objective_derivative(const NodeWeightState& state, const Tangent& tangent,
                                 const ChebyshevSet& set, Objective which);

} // namespace ggq
