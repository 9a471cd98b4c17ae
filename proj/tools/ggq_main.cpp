#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ggq/io.hpp"
#include "ggq/special.hpp"

namespace {

using namespace ggq;

struct ComputeArgs {
    std::string family;
    std::vector<double> interval;
    int l = 0;
    double tol = 1e-12;
    std::string direction = "right";
    std::string output;
    std::string trace_path;
};

BasisDescriptor descriptor_from(const ComputeArgs& args, int l) {
    BasisDescriptor d;
    d.family = family_from_name(args.family);
    const bool log_family = d.family == Family::ChebyshevPolyPlusLog ||
                            d.family == Family::LaguerreTypePlusLog;
    d.count = 2 * l;
    if (d.family == Family::ChebyshevPoly && args.interval.empty()) d.interval = {-1.0, 1.0};
    else if (log_family && args.interval.empty()) d.interval = {0.0, 1.0};
    else if (!args.interval.empty()) d.interval = {args.interval[0], args.interval[1]};
    return d;
}

ComputeControls controls_from(const ComputeArgs& args, bool trace) {
    ComputeControls c;
    c.phase_tol = args.tol;
    c.final_tol = std::max(1e-11, 10.0 * args.tol);
    c.record_trace = trace;
    c.direction = args.direction == "left" ? Direction::Left : Direction::Right;
    return c;
}

void print_rule_summary(const QuadratureRule& rule) {
    std::printf("%-4s %-25s %s\n", "i", "point", "weight");
    for (size_t i = 0; i < rule.points.size(); ++i)
        std::printf("%-4zu %-25s %s\n", i + 1, format_double(rule.points[i]).c_str(),
                    format_double(rule.weights[i]).c_str());
    std::printf("max residual        %s\n", format_double(rule.max_residual()).c_str());
    std::printf("condition estimate  %s\n", format_double(rule.condition_estimate).c_str());
}

int run_compute(const ComputeArgs& args, bool trace_mode) {
    BasisDescriptor desc = descriptor_from(args, args.l);
    ChebyshevSet set = make_set(desc);
    WeightSpec weight = default_weight(desc);
    ComputeControls controls = controls_from(args, trace_mode || !args.trace_path.empty());

    ComputeResult result;
    try {
        result = compute_rule(set, weight, args.l, controls);
    } catch (const ContinuationError& e) {
        std::fprintf(stderr,
                     "error: continuation failed: %s\n  last xi = %s, phase = %c, "
                     "residual = %s\n",
                     e.what(), format_double(e.xi).c_str(), e.phase,
                     format_double(e.residual).c_str());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    MomentVector mom = moments(set, weight, 2 * args.l, controls.moment_tol);
    Certificate cert = certify(result, set, mom, controls.final_tol);

    if (trace_mode || !args.trace_path.empty()) {
        const std::string path = trace_mode ? args.output : args.trace_path;
        const bool mirrored = result.trace.mirrored;
        const double park = mirrored ? set.domain().a : set.domain().b;
        std::ofstream csv(path);
        if (!csv) {
            std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
            return 1;
        }
        write_trace_csv(csv, result.trace, args.l, park);
        std::ofstream side(path + ".breakpoints");
        write_breakpoints_text(side, result.trace.breakpoints);
        std::printf("trace: %zu samples -> %s (+ .breakpoints sidecar)\n",
                    result.trace.samples.size(), path.c_str());
    }
    if (!trace_mode) {
        RuleDocument doc;
        doc.basis = desc;
        doc.weight = weight.kind;
        doc.direction = controls.direction;
        doc.rule = result.rule;
        doc.breakpoints = result.trace.breakpoints;
        const std::string text = to_json(doc);
        if (!args.output.empty()) {
            std::ofstream f(args.output);
            if (!f) {
                std::fprintf(stderr, "error: cannot open %s\n", args.output.c_str());
                return 1;
            }
            f << text;
        } else {
            std::cout << text;
        }
        print_rule_summary(result.rule);
    }
    std::fputs(certificate_report(cert).c_str(), stdout);
    return cert.overall ? 0 : 1;
}

int run_verify(const std::string& path, const std::string& pair_path, double tol) {
    auto load = [](const std::string& p) {
        std::ifstream f(p);
        if (!f) throw std::invalid_argument("cannot open " + p);
        std::ostringstream ss;
        ss << f.rdbuf();
        return rule_document_from_json(ss.str());
    };
    RuleDocument doc = load(path);
    ChebyshevSet set = make_set(doc.basis);
    WeightSpec weight;
    weight.kind = doc.weight;
    doc.rule.domain = set.domain();
    MomentVector mom = moments(set, weight, doc.rule.exact_count, 1e-14);

    Certificate cert;
    cert.add(check_exactness(doc.rule, set, mom, tol));
    cert.add(check_positivity_interior(doc.rule));
    if (!pair_path.empty()) {
        RuleDocument other = load(pair_path);
        other.rule.domain = make_set(other.basis).domain();
        const bool this_smaller = doc.rule.points.size() < other.rule.points.size();
        const QuadratureRule& small = this_smaller ? doc.rule : other.rule;
        const QuadratureRule& big = this_smaller ? other.rule : doc.rule;
        cert.add(check_interlacing(small, big));
    }
    std::fputs(certificate_report(cert).c_str(), stdout);
    return cert.overall ? 0 : 1;
}

int run_demo(std::vector<double> ks, std::vector<int> Ks) {
    if (ks.empty()) ks = {10.0, 20.0, 30.0, 40.0};
    if (Ks.empty()) Ks = {1, 2, 3, 4};
    std::printf("%-6s", "K\\k");
    for (double k : ks) std::printf("%-12g", k);
    std::printf("\n");
    for (int K : Ks) {
        // Rules depend only on K; reuse them across the row.
        BasisDescriptor log_desc{Family::LaguerreTypePlusLog, 4 * K, {}, false};
        BasisDescriptor lag_desc{Family::MonicLaguerreType, 2 * K, {}, false};
        ComputeResult rlog = compute_rule(log_desc, 2 * K);
        ComputeResult rlag = compute_rule(lag_desc, K);
        std::printf("%-6d", K);
        for (double k : ks) {
            OscillatoryProblem prob;
            prob.k_freq = k;
            prob.base_points = K;
            DemoResult cell = steepest_descent_demo(prob, rlog.rule, rlag.rule);
            std::printf("%-12.1e", cell.abs_error);
        }
        std::printf("\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Gaussian quadrature rules for complete Chebyshev sets"};
    app.require_subcommand(1);

    ComputeArgs cargs;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--family", cargs.family,
                        "basis family: legendre, cheb-log, laguerre, laguerre-log")
            ->required();
        cmd->add_option("--interval", cargs.interval, "interval endpoints A B")
            ->expected(2);
        cmd->add_option("--l", cargs.l, "number of quadrature points")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol", cargs.tol, "phase-root tolerance (scaled)");
        cmd->add_option("--direction", cargs.direction, "continuation direction")
            ->check(CLI::IsMember({"right", "left"}));
    };

    CLI::App* compute = app.add_subcommand("compute", "compute a rule and write it as JSON");
    add_common(compute);
    compute->add_option("-o,--output", cargs.output, "output path (default: stdout)");
    compute->add_option("--trace", cargs.trace_path, "also write the continuation trace CSV");

    CLI::App* trace = app.add_subcommand("trace", "compute a rule and write the trace CSV");
    add_common(trace);
    trace->add_option("-o,--output", cargs.output, "CSV output path")->required();

    std::string verify_path, verify_pair;
    double verify_tol = 1e-11;
    CLI::App* verify = app.add_subcommand("verify", "check a stored rule document");
    verify->add_option("rule", verify_path, "rule document (JSON)")->required();
    verify->add_option("pair", verify_pair, "second document for the interlacing check");
    verify->add_option("--tol", verify_tol, "exactness tolerance");

    std::vector<double> demo_ks;
    std::vector<int> demo_Ks;
    CLI::App* demo = app.add_subcommand("demo", "oscillatory steepest-descent error table");
    demo->add_option("--k", demo_ks, "wavenumbers (10/20/30/40)")
        ->check(CLI::IsMember({10.0, 20.0, 30.0, 40.0}));
    demo->add_option("--K", demo_Ks, "base point counts (1..4)")->check(CLI::Range(1, 4));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (compute->parsed()) return run_compute(cargs, false);
        if (trace->parsed()) return run_compute(cargs, true);
        if (verify->parsed()) return run_verify(verify_path, verify_pair, verify_tol);
        if (demo->parsed()) return run_demo(demo_ks, demo_Ks);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ContinuationError& e) {
        std::fprintf(stderr, "error: continuation failed: %s (xi=%s phase=%c residual=%s)\n",
                     e.what(), format_double(e.xi).c_str(), e.phase,
                     format_double(e.residual).c_str());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
