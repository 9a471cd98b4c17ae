#include "ggq/verify.hpp"

#include <algorithm>
#include <cmath>

namespace ggq {

void Certificate::add(CheckResult r) {
    overall = checks.empty() ? r.pass : (overall && r.pass);
    checks.push_back(std::move(r));
}

CheckResult check_exactness(const QuadratureRule& rule, const ChebyshevSet& set,
                            const MomentVector& moments, double tol) {
    CheckResult res;
    res.name = "exactness";
    if (moments.size() < rule.exact_count) {
        res.pass = false;
        res.note = "not enough moments supplied";
        return res;
    }
    double worst = 0.0;
    for (int j = 0; j < rule.exact_count; ++j) {
        double sum = 0.0;
        for (size_t i = 0; i < rule.points.size(); ++i)
            sum += rule.weights[i] * set.eval(j, rule.points[i]);
        worst = std::max(worst, std::abs(sum - moments[j]) / moments.scale(j));
    }
    res.metric = worst;
    res.pass = worst <= tol;
    return res;
}

CheckResult check_positivity_interior(const QuadratureRule& rule) {
    CheckResult res;
    res.name = "positivity_interior";
    res.pass = true;
    double min_w = std::numeric_limits<double>::infinity();
    for (double w : rule.weights) min_w = std::min(min_w, w);
    res.metric = min_w;
    if (!(min_w > 0.0)) {
        res.pass = false;
        res.note = "nonpositive weight";
        return res;
    }
    const double a = rule.domain.a, b = rule.domain.b;
    const auto& x = rule.points;
    if (rule.label == RuleLabel::LowerPrincipal) {
        for (double p : x)
            if (!(p > a && p < b)) {
                res.pass = false;
                res.note = "lower principal point not strictly interior";
                return res;
            }
    } else {
        // Endpoint rules attach at b (right-direction runs) or at a
        // (mirrored runs); the remaining points must be interior.
        const bool at_b = x.back() == b;
        const bool at_a = x.front() == a;
        if (!at_b && !at_a) {
            res.pass = false;
            res.note = "upper principal representation does not include an endpoint";
            return res;
        }
        for (size_t i = at_a ? 1 : 0; i + (at_b ? 1 : 0) < x.size(); ++i)
            if (!(x[i] > a && x[i] < b)) {
                res.pass = false;
                res.note = "interior point of upper representation out of range";
                return res;
            }
    }
    return res;
}

CheckResult check_interlacing(const QuadratureRule& rule_k, const QuadratureRule& rule_k1) {
    CheckResult res;
    res.name = "interlacing";
    if (rule_k1.points.size() != rule_k.points.size() + 1) {
        res.pass = false;
        res.note = "rules must have k and k+1 points";
        return res;
    }
    // Shared endpoints are exempt from the strict comparison.
    std::vector<double> small = rule_k.points, big = rule_k1.points;
    auto drop_shared = [&](bool front) {
        if (small.empty() || big.empty()) return;
        if (front && small.front() == big.front()) {
            small.erase(small.begin());
            big.erase(big.begin());
        } else if (!front && small.back() == big.back()) {
            small.pop_back();
            big.pop_back();
        }
    };
    drop_shared(true);
    drop_shared(false);

    double closest = std::numeric_limits<double>::infinity();
    bool ok = big.size() == small.size() + 1;
    if (ok) {
        for (size_t i = 0; i < small.size(); ++i) {
            // exactly one small point between big[i] and big[i+1]
            if (!(big[i] < small[i] && small[i] < big[i + 1])) ok = false;
            closest = std::min({closest, std::abs(small[i] - big[i]),
                                std::abs(big[i + 1] - small[i])});
        }
    }
    res.metric = closest;
    res.pass = ok;
    if (!ok && closest < 1e-14) res.note = "near-degenerate: points coincide within 1e-14";
    return res;
}

CheckResult check_trace(const ContinuationTrace& trace, const Interval& domain, double slack) {
    CheckResult res;
    res.name = "trace";
    res.pass = true;
    if (trace.samples.empty()) return res; // vacuously fine

    const bool mir = trace.mirrored;
    double worst = 0.0;
    const TraceSample* prev = nullptr;
    for (const auto& s : trace.samples) {
        // First-point identity: the moving endpoint equals xi.
        const double anchor = mir ? s.points.back() : s.points.front();
        if (anchor != s.xi) {
            res.pass = false;
            res.note = "moving point does not equal xi";
            return res;
        }
        for (size_t i = 1; i < s.points.size(); ++i)
            if (!(s.points[i - 1] < s.points[i])) {
                res.pass = false;
                res.note = "sample points not strictly increasing";
                return res;
            }
        if (prev) {
            const bool forward = mir ? s.xi > prev->xi : s.xi < prev->xi;
            if (!forward) {
                res.pass = false;
                res.note = "xi not strictly monotone along the trace";
                return res;
            }
            // Points move toward the far endpoint, monotonically up to slack.
            // Compare trailing points (new points appear at the moving end).
            const size_t n = std::min(prev->points.size(), s.points.size());
            for (size_t i = 0; i < n; ++i) {
                const size_t ip = mir ? prev->points.size() - 1 - i : i;
                const size_t ic = mir ? s.points.size() - 1 - i : i;
                const double drift = mir ? prev->points[ip] - s.points[ic]
                                         : s.points[ic] - prev->points[ip];
                worst = std::max(worst, drift);
                if (drift > slack) {
                    res.pass = false;
                    res.note = "point trajectory not monotone";
                    res.metric = drift;
                    return res;
                }
            }
        }
        prev = &s;
    }
    res.metric = worst;

    // Breakpoint chain ordering.
    const auto& bp = trace.breakpoints;
    std::vector<double> chain;
    const size_t n = std::max(bp.lower.size(), bp.upper.size());
    for (size_t k = 0; k < n; ++k) {
        if (k < bp.upper.size()) chain.push_back(bp.upper[k]);
        if (k < bp.lower.size()) chain.push_back(bp.lower[k]);
    }
    for (size_t i = 1; i < chain.size(); ++i) {
        const bool ordered = mir ? chain[i] > chain[i - 1] : chain[i] < chain[i - 1];
        if (!ordered) {
            res.pass = false;
            res.note = "breakpoint chain out of order";
            return res;
        }
    }
    if (!chain.empty()) {
        const double edge = mir ? domain.a : domain.b;
        if (chain.front() != edge) {
            res.pass = false;
            res.note = "chain must start at the append endpoint";
        }
    }
    return res;
}

Certificate certify(const ComputeResult& result, const ChebyshevSet& set,
                    const MomentVector& moments, double tol) {
    Certificate cert;
    cert.add(check_exactness(result.rule, set, moments, tol));
    cert.add(check_positivity_interior(result.rule));
    for (size_t i = 0; i < result.all_rules.size(); ++i) {
        const auto& r = result.all_rules[i];
        CheckResult ex = check_exactness(r, set, moments, tol);
        ex.name = "exactness[" + std::to_string(i) + "]";
        cert.add(std::move(ex));
        CheckResult po = check_positivity_interior(r);
        po.name = "positivity[" + std::to_string(i) + "]";
        cert.add(std::move(po));
    }
    // Consecutive Gauss rules interlace.
    const QuadratureRule* prev_lower = nullptr;
    for (const auto& r : result.all_rules) {
        if (r.label != RuleLabel::LowerPrincipal) continue;
        if (prev_lower) {
            CheckResult il = check_interlacing(*prev_lower, r);
            il.name = "interlacing[" + std::to_string(r.points.size()) + "]";
            cert.add(std::move(il));
        }
        prev_lower = &r;
    }
    if (!result.trace.samples.empty())
        cert.add(check_trace(result.trace, result.rule.domain));
    return cert;
}

} // namespace ggq
