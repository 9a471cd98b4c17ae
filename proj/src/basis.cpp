#include "ggq/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ggq/detail/quadrature.hpp"

namespace ggq {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

double cheb_t(int j, double x) {
    if (j == 0) return 1.0;
    if (j == 1) return x;
    double tm = 1.0, t = x;
    for (int i = 2; i <= j; ++i) {
        double tn = 2.0 * x * t - tm;
        tm = t;
        t = tn;
    }
    return t;
}

// C_j'(x) = j U_{j-1}(x)
double cheb_t_deriv(int j, double x) {
    if (j == 0) return 0.0;
    if (j == 1) return 1.0;
    double um = 1.0, u = 2.0 * x; // U_0, U_1
    for (int i = 2; i < j; ++i) {
        double un = 2.0 * x * u - um;
        um = u;
        u = un;
    }
    return j * u;
}

// Monic Laguerre polynomials: M_0 = 1, M_1 = t-1,
// M_{k+1} = (t - (2k+1)) M_k - k^2 M_{k-1}.
double monic_laguerre(int j, double t) {
    if (j == 0) return 1.0;
    double pm = 1.0, p = t - 1.0;
    for (int k = 1; k < j; ++k) {
        double pn = (t - (2.0 * k + 1.0)) * p - double(k) * k * pm;
        pm = p;
        p = pn;
    }
    return p;
}

double monic_laguerre_deriv(int j, double t) {
    if (j == 0) return 0.0;
    double pm = 1.0, p = t - 1.0;
    double dm = 0.0, d = 1.0;
    for (int k = 1; k < j; ++k) {
        double pn = (t - (2.0 * k + 1.0)) * p - double(k) * k * pm;
        double dn = p + (t - (2.0 * k + 1.0)) * d - double(k) * k * dm;
        pm = p; p = pn;
        dm = d; d = dn;
    }
    return d;
}

bool is_log_family(Family f) {
    return f == Family::ChebyshevPolyPlusLog || f == Family::LaguerreTypePlusLog;
}

bool is_half_line(Family f) {
    return f == Family::MonicLaguerreType || f == Family::LaguerreTypePlusLog;
}

void validate(const BasisDescriptor& d) {
    if (d.count < 2) throw std::invalid_argument("basis count must be >= 2");
    if (is_log_family(d.family) && d.count % 2 != 0)
        throw std::invalid_argument("polynomial+log families need an even count (2l)");
    if (!is_half_line(d.family) && !(d.interval.a < d.interval.b))
        throw std::invalid_argument("interval must satisfy a < b");
    if (d.monomial) {
        const int poly = is_log_family(d.family) ? d.count / 2 : d.count;
        if (poly - 1 > 12)
            throw std::invalid_argument(
                "monomial variant limited to degree 12 (conditioning)");
    }
}

} // namespace

double half_line_truncation(int count) { return 2.0 * count + 45.0; }

ChebyshevSet::ChebyshevSet(BasisDescriptor descriptor, Interval domain, EvalFn eval,
                           EvalFn deriv)
    : descriptor_(std::move(descriptor)), domain_(domain), eval_(std::move(eval)),
      deriv_(std::move(deriv)) {}

double ChebyshevSet::eval(int j, double t) const {
    if (j < 0 || j >= descriptor_.count) throw std::invalid_argument("basis index out of range");
    return eval_(j, t);
}

double ChebyshevSet::deriv(int j, double t) const {
    if (!deriv_) throw Error("basis has no derivatives (derivative-free mode)");
    if (j < 0 || j >= descriptor_.count) throw std::invalid_argument("basis index out of range");
    return deriv_(j, t);
}

double WeightSpec::operator()(double t) const {
    switch (kind) {
        case Kind::Unit: return 1.0;
        case Kind::ExpDecay: return std::exp(-t);
        case Kind::Custom: return fn(t);
    }
    return 1.0;
}

double MomentVector::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double MomentVector::scale(int j) const {
    return std::max(std::abs(values[static_cast<size_t>(j)]), 1.0);
}

ChebyshevSet make_set(const BasisDescriptor& descriptor) {
    validate(descriptor);
    BasisDescriptor d = descriptor;
    Interval domain = d.interval;
    if (is_half_line(d.family)) {
        domain.a = 0.0;
        domain.b = half_line_truncation(d.count);
        domain.half_line = true;
        d.interval = domain;
    }

    const double a = domain.a, b = domain.b;
    const int nlog = is_log_family(d.family) ? d.count / 2 : d.count;
    const bool monomial = d.monomial;

    auto poly = [=](int j, double t) -> double {
        switch (d.family) {
            case Family::ChebyshevPoly:
            case Family::ChebyshevPolyPlusLog: {
                if (monomial) return std::pow((t - a) / (b - a), j);
                const double x = (2.0 * t - a - b) / (b - a);
                return cheb_t(j, x);
            }
            case Family::MonicLaguerreType:
            case Family::LaguerreTypePlusLog:
                return monomial ? std::pow(t, j) : monic_laguerre(j, t);
            default: return 0.0;
        }
    };
    auto poly_deriv = [=](int j, double t) -> double {
        switch (d.family) {
            case Family::ChebyshevPoly:
            case Family::ChebyshevPolyPlusLog: {
                if (monomial)
                    return j == 0 ? 0.0 : j * std::pow((t - a) / (b - a), j - 1) / (b - a);
                const double x = (2.0 * t - a - b) / (b - a);
                return cheb_t_deriv(j, x) * 2.0 / (b - a);
            }
            case Family::MonicLaguerreType:
            case Family::LaguerreTypePlusLog:
                if (monomial) return j == 0 ? 0.0 : j * std::pow(t, j - 1);
                return monic_laguerre_deriv(j, t);
            default: return 0.0;
        }
    };

    ChebyshevSet::EvalFn eval, deriv;
    if (is_log_family(d.family)) {
        eval = [=](int j, double t) -> double {
            if (j < nlog) return poly(j, t);
            if (!(t > a))
                throw std::domain_error("log basis element undefined at the left endpoint");
            return poly(j - nlog, t) * std::log(t - a);
        };
        deriv = [=](int j, double t) -> double {
            if (j < nlog) return poly_deriv(j, t);
            if (!(t > a))
                throw std::domain_error("log basis element undefined at the left endpoint");
            const int m = j - nlog;
            return poly_deriv(m, t) * std::log(t - a) + poly(m, t) / (t - a);
        };
    } else {
        eval = poly;
        deriv = poly_deriv;
    }
    return ChebyshevSet(d, domain, std::move(eval), std::move(deriv));
}

ChebyshevSet make_custom_set(Interval interval, int count, ChebyshevSet::EvalFn eval,
                             ChebyshevSet::EvalFn deriv) {
    if (count < 2) throw std::invalid_argument("basis count must be >= 2");
    if (!(interval.a < interval.b)) throw std::invalid_argument("interval must satisfy a < b");
    if (!eval) throw std::invalid_argument("custom set requires an eval function");
    BasisDescriptor d;
    d.family = Family::Custom;
    d.count = count;
    d.interval = interval;
    return ChebyshevSet(d, interval, std::move(eval), std::move(deriv));
}

double laguerre_log_moment(int j) {
    if (j < 0) throw std::invalid_argument("index must be >= 0");
    double fact = 1.0, harmonic = 0.0;
    for (int i = 1; i <= j; ++i) {
        fact *= i;
        harmonic += 1.0 / i;
    }
    if (!std::isfinite(fact)) throw Error("factorial overflow in laguerre_log_moment");
    return fact * (harmonic - kEulerGamma);
}

namespace {

// Closed-form moment of basis element j, or nullopt when the family
// does not admit one for this weight.
std::optional<double> closed_form_moment(const BasisDescriptor& d, const Interval& dom,
                                         WeightSpec::Kind w, int j) {
    const int nlog = is_log_family(d.family) ? d.count / 2 : d.count;
    const double len = dom.length();
    switch (d.family) {
        case Family::ChebyshevPoly:
        case Family::ChebyshevPolyPlusLog: {
            if (w != WeightSpec::Kind::Unit) return std::nullopt;
            if (j < nlog) {
                if (d.monomial) return len / (j + 1.0);
                if (j % 2 == 1) return 0.0;
                return len / (1.0 - double(j) * j);
            }
            const int m = j - nlog;
            if (d.monomial) // int_a^b s^m log(t-a) dt, s = (t-a)/len
                return len * (std::log(len) - 1.0 / (m + 1.0)) / (m + 1.0);
            return std::nullopt; // Chebyshev-times-log: graded quadrature
        }
        case Family::MonicLaguerreType:
        case Family::LaguerreTypePlusLog: {
            if (w != WeightSpec::Kind::ExpDecay) return std::nullopt;
            if (j < nlog) {
                if (d.monomial) {
                    double f = 1.0;
                    for (int i = 1; i <= j; ++i) f *= i;
                    return f;
                }
                return j == 0 ? 1.0 : 0.0;
            }
            const int m = j - nlog;
            if (d.monomial) return laguerre_log_moment(m);
            // int_0^inf M_m(t) log t e^{-t} dt
            if (m == 0) return -kEulerGamma;
            double f = 1.0;
            for (int i = 1; i < m; ++i) f *= i;
            return (m % 2 == 0 ? -1.0 : 1.0) * f;
        }
        default:
            return std::nullopt;
    }
}

double numeric_moment(const ChebyshevSet& set, const WeightSpec& weight, int j,
                      double abs_tol) {
    const Interval& dom = set.domain();
    auto f = [&](double t) { return set.eval(j, t) * weight(t); };
    const bool singular = is_log_family(set.descriptor().family) ||
                          set.descriptor().family == Family::Custom;
    if (singular) return detail::graded_singular(f, dom.a, dom.b, abs_tol);
    return detail::adaptive_panels(f, dom.a, dom.b, abs_tol);
}

} // namespace

MomentVector moments(const ChebyshevSet& set, const WeightSpec& weight, int m, double tol) {
    if (m > set.size()) throw std::invalid_argument("more moments requested than basis elements");
    if (m < 2) throw std::invalid_argument("need at least 2 moments");
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");

    MomentVector out;
    out.values.resize(static_cast<size_t>(m));
    out.source = MomentSource::Analytic;

    std::vector<int> pending;
    double scale = 0.0;
    for (int j = 0; j < m; ++j) {
        auto cf = closed_form_moment(set.descriptor(), set.domain(), weight.kind, j);
        if (cf) {
            out.values[static_cast<size_t>(j)] = *cf;
            scale = std::max(scale, std::abs(*cf));
        } else {
            pending.push_back(j);
        }
    }
    if (!pending.empty()) {
        out.source = MomentSource::AdaptiveQuadrature;
        const double abs_tol = tol * std::max(scale, 1.0);
        for (int j : pending) out.values[static_cast<size_t>(j)] = numeric_moment(set, weight, j, abs_tol);
    }
    if (!(out.values[0] > 0.0))
        throw Error("first moment must be positive (u_0 against a positive weight)");
    return out;
}

MomentVector numeric_moments(const ChebyshevSet& set, const WeightSpec& weight, int m,
                             double tol) {
    if (m > set.size()) throw std::invalid_argument("more moments requested than basis elements");
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    MomentVector out;
    out.source = MomentSource::AdaptiveQuadrature;
    out.values.resize(static_cast<size_t>(m));
    double scale = 1.0;
    for (int j = 0; j < m; ++j) {
        const double v = numeric_moment(set, weight, j, tol * scale);
        out.values[static_cast<size_t>(j)] = v;
        scale = std::max(scale, std::abs(v));
    }
    return out;
}

Family family_from_name(const std::string& name) {
    if (name == "legendre" || name == "cheb-poly") return Family::ChebyshevPoly;
    if (name == "cheb-log") return Family::ChebyshevPolyPlusLog;
    if (name == "laguerre") return Family::MonicLaguerreType;
    if (name == "laguerre-log") return Family::LaguerreTypePlusLog;
    if (name == "custom") return Family::Custom;
    throw std::invalid_argument("unknown family: " + name);
}

std::string family_name(Family family) {
    switch (family) {
        case Family::ChebyshevPoly: return "legendre";
        case Family::ChebyshevPolyPlusLog: return "cheb-log";
        case Family::MonicLaguerreType: return "laguerre";
        case Family::LaguerreTypePlusLog: return "laguerre-log";
        case Family::Custom: return "custom";
    }
    return "unknown";
}

} // namespace ggq
