#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "agentsla/diagnostics.hpp"

namespace agentsla {

// ---------------------------------------------------------------------------
// Closed vocabularies
// ---------------------------------------------------------------------------

enum class CompareOp { Less, LessEq, Greater, GreaterEq, Eq, Neq };

enum class WindowUnit { Message, Second, Minute, Hour, Day };

enum class AggregationFn { Avg, Median, Min, Max, Sum, Count, P90, P95, P99 };

enum class MetricKind { Plain, Derived, Drift };

// Core metric set of the quality model, one enumerator per distinct metric.
enum class MetricType {
    Precision,
    Recall,
    Accuracy,
    AUC,
    F1,
    XAccuDiff,
    PMV,
    TrainingTime,
    PointwiseRobustness,
    AdversarialFrequency,
    AdversarialSeverity,
    AdversarialDistance,
    TTFT,
    E2E,
    Bias,
    Racism,
    Sexism,
    Ageism,
    Religious,
    Political,
    Xenophobia,
    SHAP,
    LIME,
    EnergyConsumption,
    WaterConsumption,
    CarbonEmissions,
    CarbonOffset,
    OutputSize,
    A2A,
    MCP,
    OversightLevel,
};

inline constexpr std::size_t kMetricTypeCount = 31;

inline constexpr std::array<MetricType, kMetricTypeCount> kAllMetricTypes = {
    MetricType::Precision,            MetricType::Recall,
    MetricType::Accuracy,             MetricType::AUC,
    MetricType::F1,                   MetricType::XAccuDiff,
    MetricType::PMV,                  MetricType::TrainingTime,
    MetricType::PointwiseRobustness,  MetricType::AdversarialFrequency,
    MetricType::AdversarialSeverity,  MetricType::AdversarialDistance,
    MetricType::TTFT,                 MetricType::E2E,
    MetricType::Bias,                 MetricType::Racism,
    MetricType::Sexism,               MetricType::Ageism,
    MetricType::Religious,            MetricType::Political,
    MetricType::Xenophobia,           MetricType::SHAP,
    MetricType::LIME,                 MetricType::EnergyConsumption,
    MetricType::WaterConsumption,     MetricType::CarbonEmissions,
    MetricType::CarbonOffset,         MetricType::OutputSize,
    MetricType::A2A,                  MetricType::MCP,
    MetricType::OversightLevel,
};

// --- wire tokens -----------------------------------------------------------

inline constexpr std::string_view to_token(CompareOp op) {
    switch (op) {
        case CompareOp::Less:      return "LESS";
        case CompareOp::LessEq:    return "LESS_EQ";
        case CompareOp::Greater:   return "GREATER";
        case CompareOp::GreaterEq: return "GREATER_EQ";
        case CompareOp::Eq:        return "EQ";
        case CompareOp::Neq:       return "NEQ";
    }
    return "?";
}

inline constexpr std::string_view to_symbol(CompareOp op) {
    switch (op) {
        case CompareOp::Less:      return "<";
        case CompareOp::LessEq:    return "<=";
        case CompareOp::Greater:   return ">";
        case CompareOp::GreaterEq: return ">=";
        case CompareOp::Eq:        return "==";
        case CompareOp::Neq:       return "!=";
    }
    return "?";
}

inline std::optional<CompareOp> compare_op_from_token(std::string_view token) {
    for (auto op : {CompareOp::Less, CompareOp::LessEq, CompareOp::Greater,
                    CompareOp::GreaterEq, CompareOp::Eq, CompareOp::Neq}) {
        if (to_token(op) == token) return op;
    }
    return std::nullopt;
}

inline constexpr std::string_view to_token(WindowUnit unit) {
    switch (unit) {
        case WindowUnit::Message: return "MESSAGE";
        case WindowUnit::Second:  return "SECOND";
        case WindowUnit::Minute:  return "MINUTE";
        case WindowUnit::Hour:    return "HOUR";
        case WindowUnit::Day:     return "DAY";
    }
    return "?";
}

inline std::optional<WindowUnit> window_unit_from_token(std::string_view token) {
    for (auto unit : {WindowUnit::Message, WindowUnit::Second, WindowUnit::Minute,
                      WindowUnit::Hour, WindowUnit::Day}) {
        if (to_token(unit) == token) return unit;
    }
    return std::nullopt;
}

inline constexpr std::string_view to_token(AggregationFn fn) {
    switch (fn) {
        case AggregationFn::Avg:    return "AVG";
        case AggregationFn::Median: return "MEDIAN";
        case AggregationFn::Min:    return "MIN";
        case AggregationFn::Max:    return "MAX";
        case AggregationFn::Sum:    return "SUM";
        case AggregationFn::Count:  return "COUNT";
        case AggregationFn::P90:    return "P90";
        case AggregationFn::P95:    return "P95";
        case AggregationFn::P99:    return "P99";
    }
    return "?";
}

inline constexpr std::array<AggregationFn, 9> kAllAggregations = {
    AggregationFn::Avg, AggregationFn::Median, AggregationFn::Min,
    AggregationFn::Max, AggregationFn::Sum,    AggregationFn::Count,
    AggregationFn::P90, AggregationFn::P95,    AggregationFn::P99,
};

inline std::optional<AggregationFn> aggregation_from_token(std::string_view token) {
    for (auto fn : kAllAggregations) {
        if (to_token(fn) == token) return fn;
    }
    return std::nullopt;
}

inline constexpr std::string_view to_token(MetricType type) {
    switch (type) {
        case MetricType::Precision:            return "PRECISION";
        case MetricType::Recall:               return "RECALL";
        case MetricType::Accuracy:             return "ACCURACY";
        case MetricType::AUC:                  return "AUC";
        case MetricType::F1:                   return "F1";
        case MetricType::XAccuDiff:            return "XACCUDIFF";
        case MetricType::PMV:                  return "PMV";
        case MetricType::TrainingTime:         return "TRAINING_TIME";
        case MetricType::PointwiseRobustness:  return "POINTWISE_ROBUSTNESS";
        case MetricType::AdversarialFrequency: return "ADVERSARIAL_FREQUENCY";
        case MetricType::AdversarialSeverity:  return "ADVERSARIAL_SEVERITY";
        case MetricType::AdversarialDistance:  return "ADVERSARIAL_DISTANCE";
        case MetricType::TTFT:                 return "TTFT";
        case MetricType::E2E:                  return "E2E";
        case MetricType::Bias:                 return "BIAS";
        case MetricType::Racism:               return "RACISM";
        case MetricType::Sexism:               return "SEXISM";
        case MetricType::Ageism:               return "AGEISM";
        case MetricType::Religious:            return "RELIGIOUS";
        case MetricType::Political:            return "POLITICAL";
        case MetricType::Xenophobia:           return "XENOPHOBIA";
        case MetricType::SHAP:                 return "SHAP";
        case MetricType::LIME:                 return "LIME";
        case MetricType::EnergyConsumption:    return "ENERGY_CONSUMPTION";
        case MetricType::WaterConsumption:     return "WATER_CONSUMPTION";
        case MetricType::CarbonEmissions:      return "CARBON_EMISSIONS";
        case MetricType::CarbonOffset:         return "CARBON_OFFSET";
        case MetricType::OutputSize:           return "OUTPUT_SIZE";
        case MetricType::A2A:                  return "A2A";
        case MetricType::MCP:                  return "MCP";
        case MetricType::OversightLevel:       return "OVERSIGHT_LEVEL";
    }
    return "?";
}

inline std::optional<MetricType> metric_type_from_token(std::string_view token) {
    for (auto type : kAllMetricTypes) {
        if (to_token(type) == token) return type;
    }
    return std::nullopt;
}

inline constexpr std::string_view to_token(MetricKind kind) {
    switch (kind) {
        case MetricKind::Plain:   return "plain";
        case MetricKind::Derived: return "derived";
        case MetricKind::Drift:   return "drift";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

struct AgentDecl {
    std::string name;
    std::string description;
    std::string url;
    std::optional<std::string> model_card; // reference into SlaDocument::model_cards

    bool operator==(const AgentDecl&) const = default;
};

struct ModelCardDecl {
    std::string name;
    std::string model_card; // opaque textual payload

    bool operator==(const ModelCardDecl&) const = default;
};

struct ProviderDecl {
    std::string name;
    double confidence = 0.0;       // measurement-precision confidence in [0,1]
    std::uint64_t reputation = 0;  // recommendation count

    bool operator==(const ProviderDecl&) const = default;
};

// Window over which a derived or drift metric aggregates raw measurements.
struct WindowSpec {
    std::uint64_t window = 1;
    WindowUnit unit = WindowUnit::Message;
    AggregationFn aggregation = AggregationFn::Avg;

    bool operator==(const WindowSpec&) const = default;
};

struct MetricSpec {
    std::string name;
    std::string description;
    MetricType type = MetricType::Accuracy;
    std::optional<std::string> unit;
    double uncertainty = 0.0;
    std::optional<std::string> provider; // reference into SlaDocument::providers
    MetricKind kind = MetricKind::Plain;
    std::optional<WindowSpec> window;    // engaged iff kind != Plain

    bool operator==(const MetricSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Boolean expressions
// ---------------------------------------------------------------------------

struct BoolExpr;

struct Comparison {
    std::string metric; // reference into SlaDocument::metrics
    CompareOp op = CompareOp::Less;
    double threshold = 0.0;
};

struct AndExpr {
    std::vector<BoolExpr> operands; // always >= 2 in a valid document
};

struct OrExpr {
    std::vector<BoolExpr> operands; // always >= 2 in a valid document
};

struct BoolExpr {
    std::variant<Comparison, AndExpr, OrExpr> node;
};

inline bool operator==(const Comparison& a, const Comparison& b) {
    return a.metric == b.metric && a.op == b.op && a.threshold == b.threshold;
}
inline bool operator==(const AndExpr& a, const AndExpr& b) { return a.operands == b.operands; }
inline bool operator==(const OrExpr& a, const OrExpr& b) { return a.operands == b.operands; }
inline bool operator==(const BoolExpr& a, const BoolExpr& b) { return a.node == b.node; }

inline BoolExpr make_comparison(std::string metric, CompareOp op, double threshold) {
    return BoolExpr{Comparison{std::move(metric), op, threshold}};
}

inline BoolExpr make_and(std::vector<BoolExpr> operands) {
    return BoolExpr{AndExpr{std::move(operands)}};
}

inline BoolExpr make_or(std::vector<BoolExpr> operands) {
    return BoolExpr{OrExpr{std::move(operands)}};
}

// ---------------------------------------------------------------------------
// Agreement structure
// ---------------------------------------------------------------------------

struct Scope {
    std::string name;
    std::string agent; // reference into SlaDocument::agents

    bool operator==(const Scope&) const = default;
};

struct QualifyingCondition {
    std::optional<std::string> name;
    BoolExpr expression;

    bool operator==(const QualifyingCondition&) const = default;
};

struct Slo {
    std::string name;
    BoolExpr expression;

    bool operator==(const Slo&) const = default;
};

struct GuaranteeTerm {
    std::vector<Scope> scopes;                             // >= 1
    std::vector<QualifyingCondition> qualifying_conditions; // >= 0
    std::vector<Slo> slos;                                 // >= 1

    bool operator==(const GuaranteeTerm&) const = default;
};

// Root of an agreement. Guarantee terms are ordered; the four registries are
// named sets (declaration order is kept for encoding but carries no meaning).
struct SlaDocument {
    std::vector<GuaranteeTerm> guarantee_terms;
    std::vector<AgentDecl> agents;
    std::vector<ModelCardDecl> model_cards;
    std::vector<ProviderDecl> providers;
    std::vector<MetricSpec> metrics;

    const AgentDecl* find_agent(std::string_view name) const {
        for (const auto& a : agents)
            if (a.name == name) return &a;
        return nullptr;
    }
    const ModelCardDecl* find_model_card(std::string_view name) const {
        for (const auto& c : model_cards)
            if (c.name == name) return &c;
        return nullptr;
    }
    const ProviderDecl* find_provider(std::string_view name) const {
        for (const auto& p : providers)
            if (p.name == name) return &p;
        return nullptr;
    }
    const MetricSpec* find_metric(std::string_view name) const {
        for (const auto& m : metrics)
            if (m.name == name) return &m;
        return nullptr;
    }
};

namespace detail {

template <typename T>
std::vector<T> sorted_by_name(std::vector<T> xs) {
    std::sort(xs.begin(), xs.end(),
              [](const T& a, const T& b) { return a.name < b.name; });
    return xs;
}

} // namespace detail

// Structural equality: terms compare as an ordered list, registries as
// name-keyed sets.
inline bool operator==(const SlaDocument& a, const SlaDocument& b) {
    return a.guarantee_terms == b.guarantee_terms &&
           detail::sorted_by_name(a.agents) == detail::sorted_by_name(b.agents) &&
           detail::sorted_by_name(a.model_cards) == detail::sorted_by_name(b.model_cards) &&
           detail::sorted_by_name(a.providers) == detail::sorted_by_name(b.providers) &&
           detail::sorted_by_name(a.metrics) == detail::sorted_by_name(b.metrics);
}

// ---------------------------------------------------------------------------
// Reference resolution
// ---------------------------------------------------------------------------

namespace detail {

// Index of `index`-th metric within its kind's wire array.
inline std::size_t kind_index(const std::vector<MetricSpec>& metrics, std::size_t index) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < index; ++i)
        if (metrics[i].kind == metrics[index].kind) ++n;
    return n;
}

inline std::string_view wire_array(MetricKind kind) {
    switch (kind) {
        case MetricKind::Plain:   return "QoSMetric";
        case MetricKind::Derived: return "DerivedQoSMetric";
        case MetricKind::Drift:   return "QoSDriftMetric";
    }
    return "?";
}

template <typename T, typename Emit>
void check_unique_names(const std::vector<T>& decls, std::string_view array_key, Emit&& emit) {
    for (std::size_t i = 0; i < decls.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (decls[j].name == decls[i].name) {
                emit(array_key, i, decls[i].name);
                break;
            }
        }
    }
}

template <typename Emit>
void check_expr_refs(const BoolExpr& expr, const SlaDocument& doc,
                     const std::string& path, Emit&& emit) {
    if (const auto* cmp = std::get_if<Comparison>(&expr.node)) {
        // An empty name marks a comparison that already failed to parse.
        if (!cmp->metric.empty() && !doc.find_metric(cmp->metric))
            emit(path + "/QoSMetric", cmp->metric, "QoSMetric");
        return;
    }
    const auto* operands = std::holds_alternative<AndExpr>(expr.node)
                               ? &std::get<AndExpr>(expr.node).operands
                               : &std::get<OrExpr>(expr.node).operands;
    for (std::size_t i = 0; i < operands->size(); ++i)
        check_expr_refs((*operands)[i], doc, path + "/operands/" + std::to_string(i), emit);
}

} // namespace detail

// Checks that every by-name reference resolves to exactly one declaration.
// Returns the empty vector iff the document is closed; afterwards the caller
// may treat the document as frozen.
inline Diagnostics resolve_references(const SlaDocument& doc) {
    Diagnostics out;

    auto duplicate = [&](std::string_view array_key, std::size_t index, const std::string& name) {
        out.push_back({DiagnosticCode::V6_DUPLICATE_NAME,
                       "/" + std::string(array_key) + "/" + std::to_string(index) + "/name",
                       "duplicate " + std::string(array_key) + " name \"" + name + "\""});
    };
    detail::check_unique_names(doc.agents, "Agent", duplicate);
    detail::check_unique_names(doc.model_cards, "ModelCard", duplicate);
    detail::check_unique_names(doc.providers, "Provider", duplicate);
    for (std::size_t i = 0; i < doc.metrics.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (doc.metrics[j].name == doc.metrics[i].name) {
                auto key = detail::wire_array(doc.metrics[i].kind);
                duplicate(key, detail::kind_index(doc.metrics, i), doc.metrics[i].name);
                break;
            }
        }
    }

    auto unresolved = [&](const std::string& path, const std::string& name, std::string_view kind) {
        out.push_back({DiagnosticCode::V5_UNRESOLVED_REFERENCE, path,
                       std::string(kind) + " \"" + name + "\" is not declared"});
    };

    for (std::size_t i = 0; i < doc.agents.size(); ++i) {
        const auto& agent = doc.agents[i];
        if (agent.model_card && !doc.find_model_card(*agent.model_card))
            unresolved("/Agent/" + std::to_string(i) + "/ModelCard", *agent.model_card, "ModelCard");
    }
    for (std::size_t i = 0; i < doc.metrics.size(); ++i) {
        const auto& metric = doc.metrics[i];
        if (metric.provider && !doc.find_provider(*metric.provider)) {
            unresolved("/" + std::string(detail::wire_array(metric.kind)) + "/" +
                           std::to_string(detail::kind_index(doc.metrics, i)) + "/Provider",
                       *metric.provider, "Provider");
        }
    }
    for (std::size_t t = 0; t < doc.guarantee_terms.size(); ++t) {
        const auto& term = doc.guarantee_terms[t];
        const std::string term_path = "/GuaranteeTerm/" + std::to_string(t);
        for (std::size_t s = 0; s < term.scopes.size(); ++s) {
            // An empty name marks a scope that already failed to parse.
            if (!term.scopes[s].agent.empty() && !doc.find_agent(term.scopes[s].agent))
                unresolved(term_path + "/Scope/" + std::to_string(s) + "/Agent",
                           term.scopes[s].agent, "Agent");
        }
        auto expr_ref = [&](const std::string& path, const std::string& name, std::string_view kind) {
            unresolved(path, name, kind);
        };
        for (std::size_t q = 0; q < term.qualifying_conditions.size(); ++q)
            detail::check_expr_refs(term.qualifying_conditions[q].expression, doc,
                                    term_path + "/QualifyingCondition/" + std::to_string(q) +
                                        "/BoolExpression",
                                    expr_ref);
        for (std::size_t s = 0; s < term.slos.size(); ++s)
            detail::check_expr_refs(term.slos[s].expression, doc,
                                    term_path + "/SLO/" + std::to_string(s) + "/BoolExpression",
                                    expr_ref);
    }

    return out;
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

// Shortest decimal text that round-trips; integral values print without a
// fractional part.
inline std::string format_number(double value) {
    if (std::isfinite(value) && value == std::floor(value) &&
        std::abs(value) <= 9007199254740992.0) {
        char buf[24];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf),
                                       static_cast<long long>(value));
        return std::string(buf, end);
    }
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

inline std::string to_infix(const BoolExpr& expr) {
    if (const auto* cmp = std::get_if<Comparison>(&expr.node)) {
        return cmp->metric + " " + std::string(to_symbol(cmp->op)) + " " +
               format_number(cmp->threshold);
    }
    const bool conjunction = std::holds_alternative<AndExpr>(expr.node);
    const auto& operands = conjunction ? std::get<AndExpr>(expr.node).operands
                                       : std::get<OrExpr>(expr.node).operands;
    std::string out = "(";
    for (std::size_t i = 0; i < operands.size(); ++i) {
        if (i > 0) out += conjunction ? " AND " : " OR ";
        out += to_infix(operands[i]);
    }
    out += ")";
    return out;
}

} // namespace agentsla
