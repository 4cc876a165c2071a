#pragma once

#include <string>
#include <vector>

namespace agentsla {

// Validation error codes. V1-V4 are the unit/enum/bounds checks performed by
// the validating decoder; V5-V10 cover reference resolution and document shape.
enum class DiagnosticCode {
    V1_UNIT_MISSING,
    V2_UNIT_UNKNOWN,
    V3_ENUM_UNKNOWN,
    V4_CONFIDENCE_OUT_OF_BOUNDS,
    V5_UNRESOLVED_REFERENCE,
    V6_DUPLICATE_NAME,
    V7_MALFORMED_EXPRESSION,
    V8_NONPOSITIVE_WINDOW,
    V9_NEGATIVE_UNCERTAINTY,
    V10_SCHEMA_SHAPE,
};

enum class Severity { Error };

inline const char* to_string(DiagnosticCode code) {
    switch (code) {
        case DiagnosticCode::V1_UNIT_MISSING:             return "V1_UNIT_MISSING";
        case DiagnosticCode::V2_UNIT_UNKNOWN:             return "V2_UNIT_UNKNOWN";
        case DiagnosticCode::V3_ENUM_UNKNOWN:             return "V3_ENUM_UNKNOWN";
        case DiagnosticCode::V4_CONFIDENCE_OUT_OF_BOUNDS: return "V4_CONFIDENCE_OUT_OF_BOUNDS";
        case DiagnosticCode::V5_UNRESOLVED_REFERENCE:     return "V5_UNRESOLVED_REFERENCE";
        case DiagnosticCode::V6_DUPLICATE_NAME:           return "V6_DUPLICATE_NAME";
        case DiagnosticCode::V7_MALFORMED_EXPRESSION:     return "V7_MALFORMED_EXPRESSION";
        case DiagnosticCode::V8_NONPOSITIVE_WINDOW:       return "V8_NONPOSITIVE_WINDOW";
        case DiagnosticCode::V9_NEGATIVE_UNCERTAINTY:     return "V9_NEGATIVE_UNCERTAINTY";
        case DiagnosticCode::V10_SCHEMA_SHAPE:            return "V10_SCHEMA_SHAPE";
    }
    return "UNKNOWN";
}

// One validation finding. `path` addresses the offending location in the
// source document with slash-separated keys and array indices,
// e.g. "/Provider/0/confidence".
struct Diagnostic {
    DiagnosticCode code{DiagnosticCode::V10_SCHEMA_SHAPE};
    std::string path;
    std::string message;
    Severity severity{Severity::Error};

    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

} // namespace agentsla
