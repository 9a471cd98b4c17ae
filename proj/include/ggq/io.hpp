#pragma once

#include <iosfwd>
#include <string>

#include "ggq/continuation.hpp"
#include "ggq/verify.hpp"

namespace ggq {

/// On-disk form of a computed rule (schema_version 1). Round-trips
/// points and weights bit-identically (17 significant digits).
struct RuleDocument {
    int schema_version = 1;
    BasisDescriptor basis;
    WeightSpec::Kind weight = WeightSpec::Kind::Unit;
    Direction direction = Direction::Right;
    QuadratureRule rule;
    Breakpoints breakpoints;
};

std::string to_json(const RuleDocument& doc);
/// Throws std::invalid_argument on malformed or unsupported documents.
RuleDocument rule_document_from_json(const std::string& text);

/// CSV with columns xi, x_1..x_l, w_1..w_l, phase, is_breakpoint.
/// Inactive points are parked at the append endpoint with weight 0.
void write_trace_csv(std::ostream& os, const ContinuationTrace& trace, int l,
                     double park_endpoint);

/// Human-readable breakpoint ledger (the sidecar block for traces).
void write_breakpoints_text(std::ostream& os, const Breakpoints& breakpoints);

std::string certificate_report(const Certificate& cert);

std::string format_double(double v); // 17 significant digits

} // namespace ggq
