#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ggq/io.hpp"
#include "ggq/special.hpp"

namespace py = pybind11;
using namespace ggq;

namespace {

BasisDescriptor make_descriptor(const std::string& family, double a, double b, int count,
                                bool monomial) {
    BasisDescriptor d;
    d.family = family_from_name(family);
    d.count = count;
    d.interval = {a, b};
    d.monomial = monomial;
    return d;
}

py::dict rule_to_dict(const QuadratureRule& r) {
    py::dict d;
    d["points"] = r.points;
    d["weights"] = r.weights;
    d["label"] = r.label == RuleLabel::LowerPrincipal ? "lower-principal" : "upper-principal";
    d["exact_count"] = r.exact_count;
    d["residuals"] = r.residuals;
    d["max_residual"] = r.max_residual();
    d["condition_estimate"] = r.condition_estimate;
    d["interval"] = py::make_tuple(r.domain.a, r.domain.b);
    return d;
}

py::dict result_to_dict(const ComputeResult& res, bool with_trace) {
    py::dict d;
    d["rule"] = rule_to_dict(res.rule);
    py::list all;
    for (const auto& r : res.all_rules) all.append(rule_to_dict(r));
    d["all_rules"] = all;
    py::dict bp;
    bp["lower"] = res.trace.breakpoints.lower;
    bp["upper"] = res.trace.breakpoints.upper;
    d["breakpoints"] = bp;
    if (with_trace) {
        py::list samples;
        for (const auto& s : res.trace.samples) {
            py::dict sd;
            sd["xi"] = s.xi;
            sd["k"] = s.k;
            sd["phase"] = s.phase == Objective::F ? "F" : "G";
            sd["is_breakpoint"] = s.is_breakpoint;
            sd["objective"] = s.objective;
            sd["points"] = s.points;
            sd["weights"] = s.weights;
            samples.append(sd);
        }
        d["trace"] = samples;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_ggq, m) {
    m.doc() = "generalized Gaussian quadrature for complete Chebyshev sets";

    m.def(
        "compute_rule",
        [](const std::string& family, int l, double a, double b, double tol,
           const std::string& direction, bool trace, bool monomial) {
            BasisDescriptor d = make_descriptor(family, a, b, 2 * l, monomial);
            ComputeControls c;
            c.phase_tol = tol;
            c.final_tol = std::max(1e-11, 10.0 * tol);
            c.record_trace = trace;
            c.direction = direction == "left" ? Direction::Left : Direction::Right;
            return result_to_dict(compute_rule(d, l, c), trace);
        },
        py::arg("family"), py::arg("l"), py::arg("a") = -1.0, py::arg("b") = 1.0,
        py::arg("tol") = 1e-12, py::arg("direction") = "right", py::arg("trace") = false,
        py::arg("monomial") = false,
        "Compute the l-point generalized Gaussian rule for a built-in family.");

    m.def(
        "moments",
        [](const std::string& family, int m, double a, double b, bool monomial) {
            BasisDescriptor d = make_descriptor(family, a, b, std::max(2, m), monomial);
            ChebyshevSet set = make_set(d);
            return ggq::moments(set, default_weight(d), m).values;
        },
        py::arg("family"), py::arg("m"), py::arg("a") = -1.0, py::arg("b") = 1.0,
        py::arg("monomial") = false);

    m.def(
        "certify_rule",
        [](const std::string& json_text, double tol) {
            RuleDocument doc = rule_document_from_json(json_text);
            ChebyshevSet set = make_set(doc.basis);
            WeightSpec w;
            w.kind = doc.weight;
            doc.rule.domain = set.domain();
            MomentVector mom = ggq::moments(set, w, doc.rule.exact_count);
            Certificate cert;
            cert.add(check_exactness(doc.rule, set, mom, tol));
            cert.add(check_positivity_interior(doc.rule));
            py::dict out;
            out["overall"] = cert.overall;
            out["report"] = certificate_report(cert);
            return out;
        },
        py::arg("json_text"), py::arg("tol") = 1e-11);

    m.def("rule_to_json", [](const std::string& family, int l, double a, double b) {
        BasisDescriptor d = make_descriptor(family, a, b, 2 * l, false);
        ComputeResult res = compute_rule(d, l);
        RuleDocument doc;
        doc.basis = d;
        if (d.interval.half_line) doc.basis.interval = res.rule.domain;
        doc.weight = default_weight(d).kind;
        doc.rule = res.rule;
        doc.breakpoints = res.trace.breakpoints;
        return to_json(doc);
    });

    m.def("laguerre_log_moment", &laguerre_log_moment, py::arg("j"));
    m.def("bessel_k0", &bessel_k0, py::arg("x"));
    m.def("bessel_k0_scaled", &bessel_k0_scaled, py::arg("x"));
    m.def("hankel0_shifted", &hankel0_shifted, py::arg("z"));

    m.def(
        "demo_cell",
        [](int K, double k) {
            DemoResult r = run_demo_cell(K, k);
            py::dict d;
            d["approx"] = r.approx;
            d["reference"] = r.reference;
            d["abs_error"] = r.abs_error;
            return d;
        },
        py::arg("K"), py::arg("k"),
        "One cell of the oscillatory-integral error table.");

    py::register_exception<Error>(m, "GgqError");
}
