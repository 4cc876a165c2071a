#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "agentsla/measurements.hpp"
#include "agentsla/model.hpp"

namespace agentsla {

// Three-valued SLO outcome. UNCERTAIN covers both measurements within the
// uncertainty band and windows with too little data.
enum class Verdict { Satisfied, Violated, Uncertain };

// Term-level outcome: a term whose qualifying conditions fail on every scope
// is not enforced at all.
enum class TermVerdict { Satisfied, Violated, Uncertain, NotApplicable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "SATISFIED";
        case Verdict::Violated:  return "VIOLATED";
        case Verdict::Uncertain: return "UNCERTAIN";
    }
    return "?";
}

inline const char* to_string(TermVerdict v) {
    switch (v) {
        case TermVerdict::Satisfied:     return "SATISFIED";
        case TermVerdict::Violated:      return "VIOLATED";
        case TermVerdict::Uncertain:     return "UNCERTAIN";
        case TermVerdict::NotApplicable: return "NOT_APPLICABLE";
    }
    return "?";
}

inline TermVerdict to_term_verdict(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return TermVerdict::Satisfied;
        case Verdict::Violated:  return TermVerdict::Violated;
        case Verdict::Uncertain: return TermVerdict::Uncertain;
    }
    return TermVerdict::Uncertain;
}

// Kleene strong conjunction: false dominates, then unknown.
inline Verdict kleene_and(Verdict a, Verdict b) {
    if (a == Verdict::Violated || b == Verdict::Violated) return Verdict::Violated;
    if (a == Verdict::Uncertain || b == Verdict::Uncertain) return Verdict::Uncertain;
    return Verdict::Satisfied;
}

// Kleene strong disjunction: true dominates, then unknown.
inline Verdict kleene_or(Verdict a, Verdict b) {
    if (a == Verdict::Satisfied || b == Verdict::Satisfied) return Verdict::Satisfied;
    if (a == Verdict::Uncertain || b == Verdict::Uncertain) return Verdict::Uncertain;
    return Verdict::Violated;
}

// Threshold comparison with a tolerance band: measurements within
// `uncertainty` of the threshold are UNCERTAIN for ordering operators, and
// count as equal for EQ/NEQ.
inline Verdict compare(double measured, CompareOp op, double threshold, double uncertainty) {
    const bool within = std::abs(measured - threshold) <= uncertainty;
    if (op == CompareOp::Eq) return within ? Verdict::Satisfied : Verdict::Violated;
    if (op == CompareOp::Neq) return within ? Verdict::Violated : Verdict::Satisfied;
    if (within) return Verdict::Uncertain;
    bool holds = false;
    switch (op) {
        case CompareOp::Less:      holds = measured < threshold; break;
        case CompareOp::LessEq:    holds = measured <= threshold; break;
        case CompareOp::Greater:   holds = measured > threshold; break;
        case CompareOp::GreaterEq: holds = measured >= threshold; break;
        case CompareOp::Eq:
        case CompareOp::Neq:       break;
    }
    return holds ? Verdict::Satisfied : Verdict::Violated;
}

// Result of materializing a metric at a point in time. `value` is empty when
// the window holds too little data; `detail` then says why.
struct MetricValue {
    std::optional<double> value;
    std::string detail;

    bool ok() const { return value.has_value(); }
};

namespace detail {

inline double seconds_per(WindowUnit unit) {
    switch (unit) {
        case WindowUnit::Second: return 1.0;
        case WindowUnit::Minute: return 60.0;
        case WindowUnit::Hour:   return 3600.0;
        case WindowUnit::Day:    return 86400.0;
        case WindowUnit::Message: break;
    }
    return 0.0;
}

// First index with timestamp > t.
inline std::size_t upper_bound_index(std::span<const Measurement> series, double t) {
    auto it = std::upper_bound(series.begin(), series.end(), t,
                               [](double v, const Measurement& m) { return v < m.timestamp; });
    return static_cast<std::size_t>(it - series.begin());
}

inline double aggregate(AggregationFn fn, std::span<const Measurement> window) {
    const std::size_t n = window.size();
    switch (fn) {
        case AggregationFn::Avg: {
            double sum = 0.0;
            for (const auto& m : window) sum += m.value;
            return sum / static_cast<double>(n);
        }
        case AggregationFn::Sum: {
            double sum = 0.0;
            for (const auto& m : window) sum += m.value;
            return sum;
        }
        case AggregationFn::Count:
            return static_cast<double>(n);
        case AggregationFn::Min: {
            double best = window[0].value;
            for (const auto& m : window) best = std::min(best, m.value);
            return best;
        }
        case AggregationFn::Max: {
            double best = window[0].value;
            for (const auto& m : window) best = std::max(best, m.value);
            return best;
        }
        case AggregationFn::Median: {
            std::vector<double> values;
            values.reserve(n);
            for (const auto& m : window) values.push_back(m.value);
            std::sort(values.begin(), values.end());
            if (n % 2 == 1) return values[n / 2];
            return (values[n / 2 - 1] + values[n / 2]) / 2.0;
        }
        case AggregationFn::P90:
        case AggregationFn::P95:
        case AggregationFn::P99: {
            std::vector<double> values;
            values.reserve(n);
            for (const auto& m : window) values.push_back(m.value);
            std::sort(values.begin(), values.end());
            const std::size_t p = fn == AggregationFn::P90 ? 90 : fn == AggregationFn::P95 ? 95 : 99;
            // nearest-rank: ceil(p/100 * n) in integer arithmetic
            std::size_t rank = (n * p + 99) / 100;
            if (rank < 1) rank = 1;
            return values[rank - 1];
        }
    }
    return 0.0;
}

inline MetricValue insufficient(std::string detail) { return {std::nullopt, std::move(detail)}; }

} // namespace detail

// Value of a metric over `series` (sorted by timestamp) at time `at`.
//
// Plain metrics take the latest measurement at or before `at`. Derived
// metrics aggregate a message-count window (the last `window` measurements)
// or a time window (`(at - W, at]`). Drift metrics subtract the same
// aggregate over the preceding window of equal extent.
inline MetricValue metric_value(const MetricSpec& spec, std::span<const Measurement> series,
                                double at) {
    const std::size_t end = detail::upper_bound_index(series, at);

    if (spec.kind == MetricKind::Plain) {
        if (end == 0) return detail::insufficient("insufficient data (no measurements)");
        return {series[end - 1].value, {}};
    }

    if (!spec.window) return detail::insufficient("metric has no window");
    const WindowSpec& w = *spec.window;
    const std::size_t n = static_cast<std::size_t>(w.window);

    if (spec.kind == MetricKind::Derived) {
        if (w.unit == WindowUnit::Message) {
            if (end < n)
                return detail::insufficient("insufficient data (" + std::to_string(end) + "/" +
                                            std::to_string(n) + " messages)");
            return {detail::aggregate(w.aggregation, series.subspan(end - n, n)), {}};
        }
        const double width = detail::seconds_per(w.unit) * static_cast<double>(w.window);
        const std::size_t begin = detail::upper_bound_index(series, at - width);
        if (begin == end)
            return detail::insufficient("insufficient data (no measurements in window)");
        return {detail::aggregate(w.aggregation, series.subspan(begin, end - begin)), {}};
    }

    // Drift: current window minus the window immediately before it.
    if (w.unit == WindowUnit::Message) {
        if (end < 2 * n)
            return detail::insufficient("insufficient data (" + std::to_string(end) + "/" +
                                        std::to_string(2 * n) + " messages)");
        const double current = detail::aggregate(w.aggregation, series.subspan(end - n, n));
        const double baseline = detail::aggregate(w.aggregation, series.subspan(end - 2 * n, n));
        return {current - baseline, {}};
    }
    const double width = detail::seconds_per(w.unit) * static_cast<double>(w.window);
    const std::size_t mid = detail::upper_bound_index(series, at - width);
    const std::size_t begin = detail::upper_bound_index(series, at - 2.0 * width);
    if (mid == end)
        return detail::insufficient("insufficient data (no measurements in window)");
    if (begin == mid)
        return detail::insufficient("insufficient data (no measurements in baseline window)");
    const double current = detail::aggregate(w.aggregation, series.subspan(mid, end - mid));
    const double baseline = detail::aggregate(w.aggregation, series.subspan(begin, mid - begin));
    return {current - baseline, {}};
}

inline MetricValue metric_value(const MetricSpec& spec, const MeasurementStream& stream,
                                double at) {
    return metric_value(spec, stream.series(spec.name), at);
}

// Evaluates an expression tree with Kleene logic. Comparisons against metrics
// with too little data are UNCERTAIN. When `agent` is set, only measurements
// applying to that agent count.
inline Verdict eval_expr(const BoolExpr& expr, const SlaDocument& doc,
                         const MeasurementStream& stream, double at,
                         const std::optional<std::string>& agent = std::nullopt) {
    if (const auto* cmp = std::get_if<Comparison>(&expr.node)) {
        const MetricSpec* spec = doc.find_metric(cmp->metric);
        if (!spec) return Verdict::Uncertain;
        MetricValue mv;
        if (agent) {
            auto series = stream.series_for_agent(cmp->metric, *agent);
            mv = metric_value(*spec, series, at);
        } else {
            mv = metric_value(*spec, stream.series(cmp->metric), at);
        }
        if (!mv.ok()) return Verdict::Uncertain;
        return compare(*mv.value, cmp->op, cmp->threshold, spec->uncertainty);
    }
    const bool conjunction = std::holds_alternative<AndExpr>(expr.node);
    const auto& operands = conjunction ? std::get<AndExpr>(expr.node).operands
                                       : std::get<OrExpr>(expr.node).operands;
    Verdict acc = conjunction ? Verdict::Satisfied : Verdict::Violated;
    for (const auto& operand : operands) {
        Verdict v = eval_expr(operand, doc, stream, at, agent);
        acc = conjunction ? kleene_and(acc, v) : kleene_or(acc, v);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Compliance reports
// ---------------------------------------------------------------------------

struct SloOutcome {
    std::string name;
    Verdict verdict = Verdict::Uncertain;
    std::optional<double> measured; // set when the SLO is a single comparison
    std::string explanation;

    bool operator==(const SloOutcome&) const = default;
};

struct ScopeOutcome {
    std::string scope;
    std::string agent;
    bool applicable = true; // qualifying conditions all SATISFIED
    std::optional<Verdict> verdict; // set iff applicable
    std::vector<SloOutcome> slos;

    bool operator==(const ScopeOutcome&) const = default;
};

struct TermOutcome {
    std::vector<ScopeOutcome> scopes;
    TermVerdict verdict = TermVerdict::NotApplicable;

    bool operator==(const TermOutcome&) const = default;
};

struct ComplianceReport {
    double evaluated_at = 0.0;
    std::vector<TermOutcome> terms;
    TermVerdict overall = TermVerdict::Satisfied;

    bool operator==(const ComplianceReport&) const = default;
};

namespace detail {

inline SloOutcome evaluate_slo(const Slo& slo, const SlaDocument& doc,
                               const MeasurementStream& stream, double at,
                               const std::string& agent) {
    SloOutcome out;
    out.name = slo.name;

    if (const auto* cmp = std::get_if<Comparison>(&slo.expression.node)) {
        const MetricSpec* spec = doc.find_metric(cmp->metric);
        if (!spec) {
            out.verdict = Verdict::Uncertain;
            out.explanation = "metric \"" + cmp->metric + "\" is not declared";
            return out;
        }
        auto series = stream.series_for_agent(cmp->metric, agent);
        MetricValue mv = metric_value(*spec, series, at);
        if (!mv.ok()) {
            out.verdict = Verdict::Uncertain;
            out.explanation = mv.detail;
            return out;
        }
        out.measured = mv.value;
        out.verdict = compare(*mv.value, cmp->op, cmp->threshold, spec->uncertainty);
        out.explanation = "measured " + format_number(*mv.value) + ", require " +
                          std::string(to_symbol(cmp->op)) + " " + format_number(cmp->threshold);
        if (out.verdict == Verdict::Uncertain)
            out.explanation += " (within uncertainty " + format_number(spec->uncertainty) + ")";
        return out;
    }

    out.verdict = eval_expr(slo.expression, doc, stream, at, agent);
    out.explanation = to_infix(slo.expression);
    return out;
}

} // namespace detail

// Evaluates every guarantee term of `doc` against `stream` at time `at`.
// Deterministic: the report is a pure function of its inputs.
inline ComplianceReport evaluate(const SlaDocument& doc, const MeasurementStream& stream,
                                 double at) {
    ComplianceReport report;
    report.evaluated_at = at;

    for (const auto& term : doc.guarantee_terms) {
        TermOutcome term_out;
        std::optional<Verdict> term_verdict;

        for (const auto& scope : term.scopes) {
            ScopeOutcome scope_out;
            scope_out.scope = scope.name;
            scope_out.agent = scope.agent;

            Verdict conditions = Verdict::Satisfied;
            for (const auto& condition : term.qualifying_conditions)
                conditions = kleene_and(conditions,
                                        eval_expr(condition.expression, doc, stream, at,
                                                  scope.agent));
            scope_out.applicable = conditions == Verdict::Satisfied;

            if (scope_out.applicable) {
                Verdict scope_verdict = Verdict::Satisfied;
                for (const auto& slo : term.slos) {
                    auto slo_out = detail::evaluate_slo(slo, doc, stream, at, scope.agent);
                    scope_verdict = kleene_and(scope_verdict, slo_out.verdict);
                    scope_out.slos.push_back(std::move(slo_out));
                }
                scope_out.verdict = scope_verdict;
                term_verdict = term_verdict ? kleene_and(*term_verdict, scope_verdict)
                                            : scope_verdict;
            }
            term_out.scopes.push_back(std::move(scope_out));
        }

        term_out.verdict = term_verdict ? to_term_verdict(*term_verdict)
                                        : TermVerdict::NotApplicable;
        report.terms.push_back(std::move(term_out));
    }

    std::optional<Verdict> overall;
    bool any_term = !report.terms.empty();
    for (const auto& term : report.terms) {
        if (term.verdict == TermVerdict::NotApplicable) continue;
        Verdict v = term.verdict == TermVerdict::Satisfied   ? Verdict::Satisfied
                    : term.verdict == TermVerdict::Violated  ? Verdict::Violated
                                                             : Verdict::Uncertain;
        overall = overall ? kleene_and(*overall, v) : v;
    }
    report.overall = overall          ? to_term_verdict(*overall)
                     : any_term       ? TermVerdict::NotApplicable
                                      : TermVerdict::Satisfied;
    return report;
}

} // namespace agentsla
