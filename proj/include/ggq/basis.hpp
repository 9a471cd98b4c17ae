#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ggq/errors.hpp"

namespace ggq {

/// Integration domain. When half_line is set the logical domain is
/// [a, inf) and b holds the truncation point used as the right endpoint
/// of the continuation.
struct Interval {
    double a = -1.0;
    double b = 1.0;
    bool half_line = false;

    double length() const { return b - a; }
};

enum class Family {
    ChebyshevPoly,        // Chebyshev polynomials mapped to [a,b]
    ChebyshevPolyPlusLog, // polynomials followed by polynomial*log(t-a)
    MonicLaguerreType,    // half-line polynomials (monic Laguerre or monomials)
    LaguerreTypePlusLog,  // half-line polynomials followed by polynomial*log
    Custom,
};

/// Describes one of the built-in basis families.
///
/// count is the number of basis elements; the *PlusLog families require
/// an even count 2l and are split into l polynomial elements followed by
/// l polynomial-times-log elements. `monomial` switches the polynomial
/// part to plain monomials where the family supports them (exact
/// factorial-type moments, at the cost of conditioning; j <= 12).
struct BasisDescriptor {
    Family family = Family::ChebyshevPoly;
    int count = 2;
    Interval interval{};
    bool monomial = false;
};

/// Truncation point used to realize [0, inf) as [0, T].
double half_line_truncation(int count);

/// An ordered set of basis functions u_0..u_{count-1} on an interval,
/// assumed (not verified) to form a complete Chebyshev set. Immutable
/// and safe to share across threads.
class ChebyshevSet {
public:
    using EvalFn = std::function<double(int, double)>;

    ChebyshevSet(BasisDescriptor descriptor, Interval domain, EvalFn eval, EvalFn deriv);

    const BasisDescriptor& descriptor() const { return descriptor_; }
    /// Realized domain: equals descriptor().interval except for
    /// half-line families, where b is the truncation point.
    const Interval& domain() const { return domain_; }
    int size() const { return descriptor_.count; }
    bool differentiable() const { return static_cast<bool>(deriv_); }

    double eval(int j, double t) const;
    double deriv(int j, double t) const;

private:
    BasisDescriptor descriptor_;
    Interval domain_;
    EvalFn eval_;
    EvalFn deriv_;
};

/// Positive weight function on the open interval.
struct WeightSpec {
    enum class Kind { Unit, ExpDecay, Custom };

    Kind kind = Kind::Unit;
    std::function<double(double)> fn; // Custom only

    double operator()(double t) const;
};

enum class MomentSource { Analytic, AdaptiveQuadrature };

/// The first m moments c_j = int u_j(t) w(t) dt, the targets of the
/// continuation.
struct MomentVector {
    std::vector<double> values;
    MomentSource source = MomentSource::Analytic;

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int j) const { return values[static_cast<size_t>(j)]; }
    double max_abs() const;
    /// Per-equation residual scale max(|c_j|, 1).
    double scale(int j) const;
};

/// Builds a built-in family. Throws std::invalid_argument for an
/// invalid descriptor (unknown family, odd count for *PlusLog, ...).
ChebyshevSet make_set(const BasisDescriptor& descriptor);

/// Wraps user-supplied evaluators as a custom set. deriv may be null,
/// which puts downstream solvers into derivative-free mode.
ChebyshevSet make_custom_set(Interval interval, int count, ChebyshevSet::EvalFn eval,
                             ChebyshevSet::EvalFn deriv = nullptr);

/// First m moments of the set against the weight. Uses closed forms
/// where the family admits them and singularity-graded adaptive
/// quadrature otherwise; tol is absolute relative to max_j |c_j|.
MomentVector moments(const ChebyshevSet& set, const WeightSpec& weight, int m,
                     double tol = 1e-14);

/// Same contract as moments() but always integrates numerically.
/// Cross-check path for the closed forms.
MomentVector numeric_moments(const ChebyshevSet& set, const WeightSpec& weight, int m,
                             double tol = 1e-14);

/// int_0^inf x^j log(x) e^{-x} dx = Gamma'(j+1) = j! (H_j - gamma).
double laguerre_log_moment(int j);

Family family_from_name(const std::string& name);
std::string family_name(Family family);

} // namespace ggq
