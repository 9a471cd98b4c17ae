#pragma once

#include <string>
#include <vector>

#include "ggq/continuation.hpp"

namespace ggq {

struct CheckResult {
    std::string name;
    bool pass = false;
    double metric = 0.0; // worst-case quantity behind the verdict
    std::string note;
};

struct Certificate {
    std::vector<CheckResult> checks;
    bool overall = false;

    void add(CheckResult r);
};

/// Scaled exactness residuals: pass iff
/// max_j |sum_i w_i u_j(x_i) - c_j| / max(|c_j|,1) <= tol over the
/// rule's governed moments.
CheckResult check_exactness(const QuadratureRule& rule, const ChebyshevSet& set,
                            const MomentVector& moments, double tol);

/// All weights strictly positive; for LowerPrincipal rules every point
/// strictly inside (a,b), for UpperPrincipal the last point must be b.
CheckResult check_positivity_interior(const QuadratureRule& rule);

/// Strict interlacing of a k-point rule against a (k+1)-point rule of
/// the same set: exactly one rule_k point between consecutive rule_k1
/// points. Shared endpoints are exempt. Coincidence within 1e-14 is
/// reported as a failure with a near-degenerate note.
CheckResult check_interlacing(const QuadratureRule& rule_k, const QuadratureRule& rule_k1);

/// Trace sanity: x_1 = xi at every sample, points ordered within each
/// sample, per-point monotonicity along the path (slack 1e-12), and the
/// breakpoint chain ordered as documented in Breakpoints.
CheckResult check_trace(const ContinuationTrace& trace, const Interval& domain,
                        double slack = 1e-12);

/// Bundles exactness and positivity (plus trace when present) for one
/// computed result.
Certificate certify(const ComputeResult& result, const ChebyshevSet& set,
                    const MomentVector& moments, double tol);

} // namespace ggq
