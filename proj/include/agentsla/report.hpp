#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "agentsla/eval.hpp"
#include "agentsla/model.hpp"
#include "agentsla/parser.hpp"

namespace agentsla {

// Human-readable rendering of a compliance report. One line per term, scope,
// and SLO, ending with the overall verdict.
inline std::string report_to_text(const ComplianceReport& report) {
    std::string out;
    out += "evaluated at " + format_number(report.evaluated_at) + "\n";
    for (std::size_t t = 0; t < report.terms.size(); ++t) {
        const TermOutcome& term = report.terms[t];
        out += "term " + std::to_string(t + 1) + ": " + to_string(term.verdict) + "\n";
        for (const ScopeOutcome& scope : term.scopes) {
            out += "  scope \"" + scope.scope + "\" -> agent \"" + scope.agent + "\": ";
            if (!scope.applicable) {
                out += "not applicable (qualifying conditions not met)\n";
                continue;
            }
            out += "applicable\n";
            for (const SloOutcome& slo : scope.slos) {
                out += "    SLO \"" + slo.name + "\": " + to_string(slo.verdict);
                if (!slo.explanation.empty()) out += " [" + slo.explanation + "]";
                out += "\n";
            }
        }
    }
    out += "overall: " + std::string(to_string(report.overall)) + "\n";
    return out;
}

// Machine-readable rendering with the same content and ordering.
inline nlohmann::ordered_json report_to_json(const ComplianceReport& report) {
    nlohmann::ordered_json root;
    root["evaluated_at"] = detail::number_token(report.evaluated_at);
    root["overall"] = to_string(report.overall);
    auto& terms = root["terms"] = nlohmann::ordered_json::array();
    for (const TermOutcome& term : report.terms) {
        nlohmann::ordered_json term_json;
        term_json["verdict"] = to_string(term.verdict);
        auto& scopes = term_json["scopes"] = nlohmann::ordered_json::array();
        for (const ScopeOutcome& scope : term.scopes) {
            nlohmann::ordered_json scope_json;
            scope_json["scope"] = scope.scope;
            scope_json["agent"] = scope.agent;
            scope_json["applicable"] = scope.applicable;
            if (scope.verdict) scope_json["verdict"] = to_string(*scope.verdict);
            auto& slos = scope_json["slos"] = nlohmann::ordered_json::array();
            for (const SloOutcome& slo : scope.slos) {
                nlohmann::ordered_json slo_json;
                slo_json["name"] = slo.name;
                slo_json["verdict"] = to_string(slo.verdict);
                if (slo.measured) slo_json["measured"] = detail::number_token(*slo.measured);
                slo_json["explanation"] = slo.explanation;
                slos.push_back(std::move(slo_json));
            }
            scopes.push_back(std::move(scope_json));
        }
        terms.push_back(std::move(term_json));
    }
    return root;
}

} // namespace agentsla
