#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentsla/catalog.hpp"
#include "agentsla/diagnostics.hpp"
#include "agentsla/model.hpp"

namespace agentsla {

struct DecodeResult {
    std::optional<SlaDocument> document; // engaged iff diagnostics is empty
    Diagnostics diagnostics;

    bool ok() const { return document.has_value(); }
};

namespace detail {

using json = nlohmann::ordered_json;

// Integral doubles are emitted as integer tokens, everything else in the
// shortest round-trip form. Keeps canonical output idempotent.
inline json number_token(double value) {
    if (std::isfinite(value) && value == std::floor(value) &&
        std::abs(value) <= 9007199254740992.0) {
        return static_cast<std::int64_t>(value);
    }
    return value;
}

// Collects every diagnostic discoverable in one pass; only a JSON syntax
// error aborts early (reported by the caller).
class Decoder {
public:
    explicit Decoder(Diagnostics& diags) : diags_(diags) {}

    SlaDocument run(const json& root) {
        SlaDocument doc;
        if (!root.is_object()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, "/", "top-level value must be an object");
            return doc;
        }
        check_keys(root, "", {"GuaranteeTerm", "DerivedQoSMetric", "QoSMetric", "QoSDriftMetric",
                              "Provider", "Agent", "ModelCard"});

        for_each_item(root, "ModelCard", [&](const json& j, const std::string& path) {
            doc.model_cards.push_back(parse_model_card(j, path));
        });
        for_each_item(root, "Provider", [&](const json& j, const std::string& path) {
            doc.providers.push_back(parse_provider(j, path));
        });
        for_each_item(root, "Agent", [&](const json& j, const std::string& path) {
            doc.agents.push_back(parse_agent(j, path));
        });
        // Canonical registry order: derived, plain, drift.
        for_each_item(root, "DerivedQoSMetric", [&](const json& j, const std::string& path) {
            doc.metrics.push_back(parse_metric(j, path, MetricKind::Derived));
        });
        for_each_item(root, "QoSMetric", [&](const json& j, const std::string& path) {
            doc.metrics.push_back(parse_metric(j, path, MetricKind::Plain));
        });
        for_each_item(root, "QoSDriftMetric", [&](const json& j, const std::string& path) {
            doc.metrics.push_back(parse_metric(j, path, MetricKind::Drift));
        });
        for_each_item(root, "GuaranteeTerm", [&](const json& j, const std::string& path) {
            doc.guarantee_terms.push_back(parse_term(j, path));
        });
        return doc;
    }

private:
    Diagnostics& diags_;

    void error(DiagnosticCode code, std::string path, std::string message) {
        diags_.push_back({code, std::move(path), std::move(message)});
    }

    void check_keys(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> known) {
        for (const auto& item : obj.items()) {
            bool ok = false;
            for (auto k : known)
                if (k == item.key()) { ok = true; break; }
            if (!ok)
                error(DiagnosticCode::V10_SCHEMA_SHAPE, path + "/" + item.key(),
                      "unknown key \"" + item.key() + "\"");
        }
    }

    template <typename Fn>
    void for_each_item(const json& root, const char* key, Fn&& fn) {
        auto it = root.find(key);
        if (it == root.end()) return;
        if (!it->is_array()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, std::string("/") + key,
                  std::string("\"") + key + "\" must be an array");
            return;
        }
        std::size_t index = 0;
        for (const auto& item : *it) {
            std::string path = std::string("/") + key + "/" + std::to_string(index++);
            if (!item.is_object()) {
                error(DiagnosticCode::V10_SCHEMA_SHAPE, path, "expected an object");
                continue;
            }
            fn(item, path);
        }
    }

    std::optional<std::string> get_string(const json& obj, const std::string& path,
                                          const char* key, bool required,
                                          bool allow_empty = true) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required)
                error(DiagnosticCode::V10_SCHEMA_SHAPE, path,
                      std::string("missing key \"") + key + "\"");
            return std::nullopt;
        }
        if (!it->is_string()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path + "/" + key,
                  std::string("\"") + key + "\" must be a string");
            return std::nullopt;
        }
        auto value = it->get<std::string>();
        if (!allow_empty && value.empty()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path + "/" + key,
                  std::string("\"") + key + "\" must be non-empty");
            return std::nullopt;
        }
        return value;
    }

    std::optional<double> get_number(const json& obj, const std::string& path, const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path,
                  std::string("missing key \"") + key + "\"");
            return std::nullopt;
        }
        if (!it->is_number()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path + "/" + key,
                  std::string("\"") + key + "\" must be a number");
            return std::nullopt;
        }
        return it->get<double>();
    }

    std::optional<std::int64_t> get_integer(const json& obj, const std::string& path,
                                            const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path,
                  std::string("missing key \"") + key + "\"");
            return std::nullopt;
        }
        if (!it->is_number_integer()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path + "/" + key,
                  std::string("\"") + key + "\" must be an integer");
            return std::nullopt;
        }
        return it->get<std::int64_t>();
    }

    ModelCardDecl parse_model_card(const json& j, const std::string& path) {
        check_keys(j, path, {"name", "model_card"});
        ModelCardDecl card;
        card.name = get_string(j, path, "name", true, false).value_or("");
        card.model_card = get_string(j, path, "model_card", true).value_or("");
        return card;
    }

    ProviderDecl parse_provider(const json& j, const std::string& path) {
        check_keys(j, path, {"name", "confidence", "reputation"});
        ProviderDecl provider;
        provider.name = get_string(j, path, "name", true, false).value_or("");
        if (auto confidence = get_number(j, path, "confidence")) {
            provider.confidence = *confidence;
            if (*confidence < 0.0 || *confidence > 1.0)
                error(DiagnosticCode::V4_CONFIDENCE_OUT_OF_BOUNDS, path + "/confidence",
                      "confidence " + format_number(*confidence) + " outside [0, 1]");
        }
        if (auto reputation = get_integer(j, path, "reputation")) {
            if (*reputation < 0)
                error(DiagnosticCode::V10_SCHEMA_SHAPE, path + "/reputation",
                      "\"reputation\" must be non-negative");
            else
                provider.reputation = static_cast<std::uint64_t>(*reputation);
        }
        return provider;
    }

    AgentDecl parse_agent(const json& j, const std::string& path) {
        check_keys(j, path, {"name", "description", "url", "ModelCard"});
        AgentDecl agent;
        agent.name = get_string(j, path, "name", true, false).value_or("");
        agent.description = get_string(j, path, "description", true).value_or("");
        agent.url = get_string(j, path, "url", true).value_or("");
        agent.model_card = get_string(j, path, "ModelCard", false, false);
        return agent;
    }

    MetricSpec parse_metric(const json& j, const std::string& path, MetricKind kind) {
        if (kind == MetricKind::Plain) {
            check_keys(j, path, {"name", "description", "metric_type", "unit", "uncertainty",
                                 "Provider"});
        } else {
            check_keys(j, path, {"name", "description", "metric_type", "unit", "uncertainty",
                                 "window", "window_unit", "aggregation", "Provider"});
        }

        MetricSpec metric;
        metric.kind = kind;
        metric.name = get_string(j, path, "name", true, false).value_or("");
        metric.description = get_string(j, path, "description", true).value_or("");

        bool type_known = false;
        if (auto token = get_string(j, path, "metric_type", true)) {
            if (auto type = metric_type_from_token(*token)) {
                metric.type = *type;
                type_known = true;
            } else {
                error(DiagnosticCode::V3_ENUM_UNKNOWN, path + "/metric_type",
                      "unknown metric type \"" + *token + "\"");
            }
        }

        metric.unit = get_string(j, path, "unit", false, false);
        if (type_known) {
            const auto& entry = catalog_lookup(metric.type);
            if (entry.unit_required() && !metric.unit) {
                error(DiagnosticCode::V1_UNIT_MISSING, path,
                      std::string("metric type ") + std::string(entry.token) +
                          " requires a unit (" + std::string(to_token(entry.dimension)) + ")");
            } else if (metric.unit && !entry.allows_unit(*metric.unit)) {
                error(DiagnosticCode::V2_UNIT_UNKNOWN, path + "/unit",
                      "unit \"" + *metric.unit + "\" is not valid for metric type " +
                          std::string(entry.token));
            }
        }

        if (auto uncertainty = get_number(j, path, "uncertainty")) {
            metric.uncertainty = *uncertainty;
            if (*uncertainty < 0.0)
                error(DiagnosticCode::V9_NEGATIVE_UNCERTAINTY, path + "/uncertainty",
                      "uncertainty must be non-negative");
        }

        metric.provider = get_string(j, path, "Provider", false, false);

        if (kind != MetricKind::Plain) {
            WindowSpec window;
            if (auto size = get_integer(j, path, "window")) {
                if (*size <= 0)
                    error(DiagnosticCode::V8_NONPOSITIVE_WINDOW, path + "/window",
                          "window must be >= 1");
                else
                    window.window = static_cast<std::uint64_t>(*size);
            }
            if (auto token = get_string(j, path, "window_unit", true)) {
                if (auto unit = window_unit_from_token(*token))
                    window.unit = *unit;
                else
                    error(DiagnosticCode::V3_ENUM_UNKNOWN, path + "/window_unit",
                          "unknown window unit \"" + *token + "\"");
            }
            if (auto token = get_string(j, path, "aggregation", true)) {
                if (auto fn = aggregation_from_token(*token))
                    window.aggregation = *fn;
                else
                    error(DiagnosticCode::V3_ENUM_UNKNOWN, path + "/aggregation",
                          "unknown aggregation \"" + *token + "\"");
            }
            metric.window = window;
        }
        return metric;
    }

    BoolExpr parse_expr(const json& j, const std::string& path) {
        const BoolExpr placeholder{Comparison{}};
        if (!j.is_object()) {
            error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path, "expression must be an object");
            return placeholder;
        }
        auto type_it = j.find("type");
        if (type_it == j.end()) {
            error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path, "missing key \"type\"");
            return placeholder;
        }
        if (!type_it->is_string()) {
            error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path + "/type",
                  "\"type\" must be a string");
            return placeholder;
        }
        const auto type = type_it->get<std::string>();

        if (type == "Comparison") {
            check_keys(j, path, {"type", "QoSMetric", "operator", "value"});
            Comparison cmp;
            if (auto metric = expr_string(j, path, "QoSMetric")) {
                if (metric->empty())
                    error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path + "/QoSMetric",
                          "\"QoSMetric\" must name a metric");
                cmp.metric = *metric;
            }
            if (auto token = expr_string(j, path, "operator")) {
                if (auto op = compare_op_from_token(*token))
                    cmp.op = *op;
                else
                    error(DiagnosticCode::V3_ENUM_UNKNOWN, path + "/operator",
                          "unknown operator \"" + *token + "\"");
            }
            auto value_it = j.find("value");
            if (value_it == j.end())
                error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path, "missing key \"value\"");
            else if (!value_it->is_number())
                error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path + "/value",
                      "\"value\" must be a number");
            else
                cmp.threshold = value_it->get<double>();
            return BoolExpr{std::move(cmp)};
        }

        if (type == "And" || type == "Or") {
            check_keys(j, path, {"type", "operands"});
            std::vector<BoolExpr> operands;
            auto operands_it = j.find("operands");
            if (operands_it == j.end()) {
                error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path, "missing key \"operands\"");
            } else if (!operands_it->is_array()) {
                error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path + "/operands",
                      "\"operands\" must be an array");
            } else {
                if (operands_it->size() < 2)
                    error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path + "/operands",
                          type + " needs at least 2 operands");
                std::size_t index = 0;
                for (const auto& item : *operands_it)
                    operands.push_back(parse_expr(item, path + "/operands/" +
                                                            std::to_string(index++)));
            }
            if (type == "And") return make_and(std::move(operands));
            return make_or(std::move(operands));
        }

        error(DiagnosticCode::V3_ENUM_UNKNOWN, path + "/type",
              "unknown expression type \"" + type + "\"");
        return placeholder;
    }

    // Like get_string but faults inside an expression are V7, not V10.
    std::optional<std::string> expr_string(const json& obj, const std::string& path,
                                           const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path,
                  std::string("missing key \"") + key + "\"");
            return std::nullopt;
        }
        if (!it->is_string()) {
            error(DiagnosticCode::V7_MALFORMED_EXPRESSION, path + "/" + key,
                  std::string("\"") + key + "\" must be a string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    GuaranteeTerm parse_term(const json& j, const std::string& path) {
        check_keys(j, path, {"Scope", "QualifyingCondition", "SLO"});
        GuaranteeTerm term;

        parse_section(j, path, "Scope", [&](const json& item, const std::string& item_path) {
            check_keys(item, item_path, {"name", "Agent"});
            Scope scope;
            scope.name = get_string(item, item_path, "name", true, false).value_or("");
            scope.agent = get_string(item, item_path, "Agent", true, false).value_or("");
            if (item.contains("Agent") && item["Agent"].is_string() && scope.agent.empty())
                error(DiagnosticCode::V10_SCHEMA_SHAPE, item_path + "/Agent",
                      "\"Agent\" must name an agent");
            term.scopes.push_back(std::move(scope));
        });
        if (term.scopes.empty() && !diag_at(path + "/Scope"))
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path, "guarantee term needs at least one Scope");

        parse_section(j, path, "QualifyingCondition",
                      [&](const json& item, const std::string& item_path) {
                          check_keys(item, item_path, {"name", "BoolExpression"});
                          QualifyingCondition condition;
                          condition.name = get_string(item, item_path, "name", false, false);
                          condition.expression = parse_expr_member(item, item_path);
                          term.qualifying_conditions.push_back(std::move(condition));
                      });

        parse_section(j, path, "SLO", [&](const json& item, const std::string& item_path) {
            check_keys(item, item_path, {"name", "BoolExpression"});
            Slo slo;
            slo.name = get_string(item, item_path, "name", true, false).value_or("");
            slo.expression = parse_expr_member(item, item_path);
            term.slos.push_back(std::move(slo));
        });
        if (term.slos.empty() && !diag_at(path + "/SLO"))
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path, "guarantee term needs at least one SLO");

        return term;
    }

    BoolExpr parse_expr_member(const json& obj, const std::string& path) {
        auto it = obj.find("BoolExpression");
        if (it == obj.end()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path, "missing key \"BoolExpression\"");
            return BoolExpr{Comparison{}};
        }
        return parse_expr(*it, path + "/BoolExpression");
    }

    template <typename Fn>
    void parse_section(const json& obj, const std::string& path, const char* key, Fn&& fn) {
        auto it = obj.find(key);
        if (it == obj.end()) return;
        if (!it->is_array()) {
            error(DiagnosticCode::V10_SCHEMA_SHAPE, path + "/" + key,
                  std::string("\"") + key + "\" must be an array");
            return;
        }
        std::size_t index = 0;
        for (const auto& item : *it) {
            std::string item_path = path + "/" + key + "/" + std::to_string(index++);
            if (!item.is_object()) {
                error(DiagnosticCode::V10_SCHEMA_SHAPE, item_path, "expected an object");
                continue;
            }
            fn(item, item_path);
        }
    }

    bool diag_at(const std::string& path) const {
        for (const auto& d : diags_)
            if (d.path == path) return true;
        return false;
    }
};

inline json expr_to_json(const BoolExpr& expr) {
    json out = json::object();
    if (const auto* cmp = std::get_if<Comparison>(&expr.node)) {
        out["type"] = "Comparison";
        out["QoSMetric"] = cmp->metric;
        out["operator"] = std::string(to_token(cmp->op));
        out["value"] = number_token(cmp->threshold);
        return out;
    }
    const bool conjunction = std::holds_alternative<AndExpr>(expr.node);
    out["type"] = conjunction ? "And" : "Or";
    json operands = json::array();
    const auto& children = conjunction ? std::get<AndExpr>(expr.node).operands
                                       : std::get<OrExpr>(expr.node).operands;
    for (const auto& child : children) operands.push_back(expr_to_json(child));
    out["operands"] = std::move(operands);
    return out;
}

inline json metric_to_json(const MetricSpec& metric) {
    json out = json::object();
    out["name"] = metric.name;
    out["description"] = metric.description;
    out["metric_type"] = std::string(to_token(metric.type));
    if (metric.unit) out["unit"] = *metric.unit;
    out["uncertainty"] = number_token(metric.uncertainty);
    if (metric.kind != MetricKind::Plain && metric.window) {
        out["window"] = metric.window->window;
        out["window_unit"] = std::string(to_token(metric.window->unit));
        out["aggregation"] = std::string(to_token(metric.window->aggregation));
    }
    if (metric.provider) out["Provider"] = *metric.provider;
    return out;
}

} // namespace detail

// Renders the canonical wire form: fixed key order, two-space indentation,
// associations as name strings, empty arrays omitted.
inline nlohmann::ordered_json document_to_json(const SlaDocument& doc) {
    using detail::json;
    json root = json::object();

    if (!doc.guarantee_terms.empty()) {
        json terms = json::array();
        for (const auto& term : doc.guarantee_terms) {
            json t = json::object();
            json scopes = json::array();
            for (const auto& scope : term.scopes)
                scopes.push_back({{"name", scope.name}, {"Agent", scope.agent}});
            t["Scope"] = std::move(scopes);
            if (!term.qualifying_conditions.empty()) {
                json conditions = json::array();
                for (const auto& condition : term.qualifying_conditions) {
                    json c = json::object();
                    if (condition.name) c["name"] = *condition.name;
                    c["BoolExpression"] = detail::expr_to_json(condition.expression);
                    conditions.push_back(std::move(c));
                }
                t["QualifyingCondition"] = std::move(conditions);
            }
            json slos = json::array();
            for (const auto& slo : term.slos) {
                slos.push_back({{"name", slo.name},
                               {"BoolExpression", detail::expr_to_json(slo.expression)}});
            }
            t["SLO"] = std::move(slos);
            terms.push_back(std::move(t));
        }
        root["GuaranteeTerm"] = std::move(terms);
    }

    auto emit_metrics = [&](MetricKind kind, const char* key) {
        json arr = json::array();
        for (const auto& metric : doc.metrics)
            if (metric.kind == kind) arr.push_back(detail::metric_to_json(metric));
        if (!arr.empty()) root[key] = std::move(arr);
    };
    emit_metrics(MetricKind::Derived, "DerivedQoSMetric");
    emit_metrics(MetricKind::Plain, "QoSMetric");
    emit_metrics(MetricKind::Drift, "QoSDriftMetric");

    if (!doc.providers.empty()) {
        json arr = json::array();
        for (const auto& provider : doc.providers) {
            arr.push_back({{"name", provider.name},
                           {"confidence", detail::number_token(provider.confidence)},
                           {"reputation", provider.reputation}});
        }
        root["Provider"] = std::move(arr);
    }
    if (!doc.agents.empty()) {
        json arr = json::array();
        for (const auto& agent : doc.agents) {
            json a = json::object();
            a["name"] = agent.name;
            a["description"] = agent.description;
            a["url"] = agent.url;
            if (agent.model_card) a["ModelCard"] = *agent.model_card;
            arr.push_back(std::move(a));
        }
        root["Agent"] = std::move(arr);
    }
    if (!doc.model_cards.empty()) {
        json arr = json::array();
        for (const auto& card : doc.model_cards)
            arr.push_back({{"name", card.name}, {"model_card", card.model_card}});
        root["ModelCard"] = std::move(arr);
    }
    return root;
}

inline std::string encode(const SlaDocument& doc) { return document_to_json(doc).dump(2); }

// Decodes and validates an agreement. The returned diagnostics list every
// problem discoverable in one pass; only JSON syntax errors stop early.
inline DecodeResult decode(std::string_view text) {
    DecodeResult result;
    detail::json root;
    try {
        root = detail::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        result.diagnostics.push_back({DiagnosticCode::V10_SCHEMA_SHAPE, "/", e.what()});
        return result;
    }

    detail::Decoder decoder(result.diagnostics);
    SlaDocument doc = decoder.run(root);

    auto resolution = resolve_references(doc);
    result.diagnostics.insert(result.diagnostics.end(), resolution.begin(), resolution.end());

    if (result.diagnostics.empty()) result.document = std::move(doc);
    return result;
}

// The decoder's validation phase standalone: empty iff decode succeeds.
inline Diagnostics validate(std::string_view text) { return decode(text).diagnostics; }

} // namespace agentsla
