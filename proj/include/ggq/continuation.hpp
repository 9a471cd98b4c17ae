#pragma once

#include <optional>
#include <vector>

#include "ggq/basis.hpp"
#include "ggq/solver.hpp"

namespace ggq {

/// Critical continuation parameters. lower[k-1] holds the first root of
/// the lower principal representation with k points (the k-point Gauss
/// rule), k = 1..l. upper[k] holds the first root of the upper principal
/// representation reached at the end of the k-th F phase, with
/// upper[0] = b by convention. For a right-direction run the chain obeys
///   a < lower[l-1] < upper[l-1] < lower[l-2] < ... < upper[1] < lower[0] < upper[0] = b.
struct Breakpoints {
    std::vector<double> lower;
    std::vector<double> upper;
};

enum class RuleLabel { LowerPrincipal, UpperPrincipal };

/// A finalized representation: the k-point Gauss rule (LowerPrincipal,
/// exact for 2k moments, points interior) or the endpoint-including
/// Radau/Lobatto analogue (UpperPrincipal, exact for 2k+1 moments,
/// last point = b).
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
    RuleLabel label = RuleLabel::LowerPrincipal;
    int exact_count = 0; // number of moments integrated exactly
    std::vector<double> residuals; // per-moment scaled residuals
    double condition_estimate = 1.0;
    Interval domain{};

    double max_residual() const;
};

struct TraceSample {
    double xi = 0.0;
    int k = 0;
    Objective phase = Objective::G;
    bool is_breakpoint = false;
    double objective = 0.0;
    std::vector<double> points;
    std::vector<double> weights;
};

/// Sampled continuation path plus the breakpoint ledger. Points not yet
/// active at a given xi are parked at b with weight 0; samples store
/// only the active entries.
struct ContinuationTrace {
    std::vector<TraceSample> samples;
    Breakpoints breakpoints;
    bool mirrored = false; // true for direction=left runs
};

enum class Direction { Right, Left };

struct ComputeControls {
    double moment_tol = 1e-14;
    double newton_tol = 1e-13;
    int newton_max_iter = 50;
    /// Phase root accepted when |F|,|G| <= phase_tol * max|c_j|.
    double phase_tol = 1e-12;
    /// Final rules re-verified at this scaled residual.
    double final_tol = 1e-11;
    bool record_trace = false;
    Direction direction = Direction::Right;
};

struct ComputeResult {
    QuadratureRule rule;                  // the l-point generalized Gaussian rule
    std::vector<QuadratureRule> all_rules; // every intermediate principal representation
    ContinuationTrace trace;              // samples empty unless record_trace
};

/// Solves u_1(xi)/u_0(xi) = c_1/c_0 by safeguarded Newton/bisection on
/// [a,b]; the result is the 1-point rule exact for u_0, u_1. Throws
/// ggq::Error when the ratio equation has no sign change on [a,b].
NodeWeightState init_one_point(const ChebyshevSet& set, const MomentVector& moments);

struct PhaseResult {
    NodeWeightState root;
    std::vector<TraceSample> samples;
};

/// Drives xi down from state.xi until the phase objective vanishes.
/// For phase F the state must be an UpperFixedB representation whose
/// last point is b (appended with weight 0 at the phase start); for
/// phase G a LowerFree representation. Returns the root state, i.e. the
/// next upper (F) or lower (G) principal representation.
PhaseResult advance_phase(const NodeWeightState& state, const ChebyshevSet& set,
                          const MomentVector& moments, Objective phase,
                          const ComputeControls& controls);

/// Runs the full continuation: starting from the 1-point rule, each
/// F phase lifts exactness by one moment (adding the endpoint b), each
/// G phase by one more (releasing it), until the l-point rule exact for
/// 2l basis elements is reached. all_rules collects the Gauss rules
/// with 1..l points and the intermediate endpoint rules.
ComputeResult compute_rule(const ChebyshevSet& set, const WeightSpec& weight, int l,
                           const ComputeControls& controls = {});

/// Convenience: built-in family with its canonical weight
/// (unit weight on finite intervals, exp(-t) on the half-line).
ComputeResult compute_rule(const BasisDescriptor& descriptor, int l,
                           const ComputeControls& controls = {});

WeightSpec default_weight(const BasisDescriptor& descriptor);

} // namespace ggq
