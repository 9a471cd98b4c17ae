#include "ggq/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ggq {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string weight_name(WeightSpec::Kind k) {
    switch (k) {
        case WeightSpec::Kind::Unit: return "unit";
        case WeightSpec::Kind::ExpDecay: return "exp-decay";
        case WeightSpec::Kind::Custom: return "custom";
    }
    return "unit";
}

WeightSpec::Kind weight_from_name(const std::string& s) {
    if (s == "unit") return WeightSpec::Kind::Unit;
    if (s == "exp-decay") return WeightSpec::Kind::ExpDecay;
    throw std::invalid_argument("unsupported weight kind in document: " + s);
}

std::string label_name(RuleLabel l) {
    return l == RuleLabel::LowerPrincipal ? "lower-principal" : "upper-principal";
}

RuleLabel label_from_name(const std::string& s) {
    if (s == "lower-principal") return RuleLabel::LowerPrincipal;
    if (s == "upper-principal") return RuleLabel::UpperPrincipal;
    throw std::invalid_argument("unknown rule label: " + s);
}

} // namespace

std::string to_json(const RuleDocument& doc) {
    json j;
    j["schema_version"] = doc.schema_version;
    j["basis"] = {
        {"family", family_name(doc.basis.family)},
        {"count", doc.basis.count},
        {"interval", {doc.basis.interval.a, doc.basis.interval.b}},
        {"half_line", doc.basis.interval.half_line},
        {"monomial", doc.basis.monomial},
    };
    j["weight"] = weight_name(doc.weight);
    j["direction"] = doc.direction == Direction::Right ? "right" : "left";
    j["label"] = label_name(doc.rule.label);
    j["exact_count"] = doc.rule.exact_count;
    j["points"] = doc.rule.points;
    j["weights"] = doc.rule.weights;
    j["residuals"] = doc.rule.residuals;
    j["condition_estimate"] = doc.rule.condition_estimate;
    j["breakpoints"] = {{"lower", doc.breakpoints.lower}, {"upper", doc.breakpoints.upper}};
    return j.dump(2) + "\n";
}

RuleDocument rule_document_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed rule document: ") + e.what());
    }
    try {
        RuleDocument doc;
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != 1)
            throw std::invalid_argument("unsupported schema_version");
        const auto& b = j.at("basis");
        doc.basis.family = family_from_name(b.at("family").get<std::string>());
        if (doc.basis.family == Family::Custom)
            throw std::invalid_argument("custom-family documents cannot be reloaded");
        doc.basis.count = b.at("count").get<int>();
        doc.basis.interval.a = b.at("interval").at(0).get<double>();
        doc.basis.interval.b = b.at("interval").at(1).get<double>();
        doc.basis.interval.half_line = b.at("half_line").get<bool>();
        doc.basis.monomial = b.value("monomial", false);
        doc.weight = weight_from_name(j.at("weight").get<std::string>());
        doc.direction =
            j.value("direction", "right") == std::string("left") ? Direction::Left : Direction::Right;
        doc.rule.label = label_from_name(j.at("label").get<std::string>());
        doc.rule.exact_count = j.at("exact_count").get<int>();
        doc.rule.points = j.at("points").get<std::vector<double>>();
        doc.rule.weights = j.at("weights").get<std::vector<double>>();
        doc.rule.residuals = j.value("residuals", std::vector<double>{});
        doc.rule.condition_estimate = j.value("condition_estimate", 1.0);
        doc.rule.domain = doc.basis.interval;
        if (j.contains("breakpoints")) {
            doc.breakpoints.lower = j["breakpoints"].value("lower", std::vector<double>{});
            doc.breakpoints.upper = j["breakpoints"].value("upper", std::vector<double>{});
        }
        if (doc.rule.points.size() != doc.rule.weights.size())
            throw std::invalid_argument("points/weights length mismatch");
        if (doc.rule.points.empty()) throw std::invalid_argument("empty rule");
        return doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed rule document: ") + e.what());
    }
}

void write_trace_csv(std::ostream& os, const ContinuationTrace& trace, int l,
                     double park_endpoint) {
    os << "xi";
    for (int i = 1; i <= l; ++i) os << ",x_" << i;
    for (int i = 1; i <= l; ++i) os << ",w_" << i;
    os << ",phase,is_breakpoint\n";
    for (const auto& s : trace.samples) {
        std::vector<double> px(static_cast<size_t>(l), park_endpoint);
        std::vector<double> pw(static_cast<size_t>(l), 0.0);
        const int n = static_cast<int>(s.points.size());
        for (int i = 0; i < n && i < l; ++i) {
            // Active entries keep their ascending slots; parked points sit
            // at the append endpoint (b on the right, a when mirrored).
            const int slot = trace.mirrored ? l - n + i : i;
            px[static_cast<size_t>(slot)] = s.points[static_cast<size_t>(i)];
            pw[static_cast<size_t>(slot)] = s.weights[static_cast<size_t>(i)];
        }
        os << format_double(s.xi);
        for (double v : px) os << ',' << format_double(v);
        for (double v : pw) os << ',' << format_double(v);
        os << ',' << (s.phase == Objective::F ? 'F' : 'G') << ','
           << (s.is_breakpoint ? 1 : 0) << '\n';
    }
}

void write_breakpoints_text(std::ostream& os, const Breakpoints& bp) {
    os << "# breakpoint chain (descending xi): upper[k] ends phase F_k, "
          "lower[k] is the first point of the k-point rule\n";
    const size_t n = std::max(bp.lower.size(), bp.upper.size());
    for (size_t k = 0; k < n; ++k) {
        if (k < bp.upper.size())
            os << "upper[" << k << "] = " << format_double(bp.upper[k]) << "\n";
        if (k < bp.lower.size())
            os << "lower[" << k + 1 << "] = " << format_double(bp.lower[k]) << "\n";
    }
}

std::string certificate_report(const Certificate& cert) {
    std::ostringstream os;
    for (const auto& c : cert.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name << "  metric=" << format_double(c.metric);
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    os << (cert.overall ? "OVERALL PASS" : "OVERALL FAIL") << "\n";
    return os.str();
}

} // namespace ggq
