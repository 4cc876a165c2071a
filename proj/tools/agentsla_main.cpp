// Command-line front end: validate, inspect, normalize, and evaluate SLA
// documents, and print the metric catalog.
//
// Exit codes: 0 success (or compliant), 1 validation errors or a VIOLATED
// verdict, 2 an UNCERTAIN verdict, 3 usage or I/O errors.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agentsla/agentsla.hpp"

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_diagnostics(const agentsla::Diagnostics& diagnostics) {
    auto sorted = diagnostics;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.path < b.path; });
    for (const auto& d : sorted)
        std::cerr << agentsla::to_string(d.code) << " " << d.path << " " << d.message << "\n";
}

int cmd_validate(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        return 3;
    }
    auto diagnostics = agentsla::validate(*text);
    print_diagnostics(diagnostics);
    return diagnostics.empty() ? 0 : 1;
}

int cmd_normalize(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        return 3;
    }
    auto result = agentsla::decode(*text);
    if (!result.ok()) {
        print_diagnostics(result.diagnostics);
        return 1;
    }
    std::cout << agentsla::encode(*result.document) << "\n";
    return 0;
}

std::string window_phrase(const agentsla::MetricSpec& metric) {
    const auto& w = *metric.window;
    return std::string(agentsla::to_token(w.aggregation)) + " over " +
           std::to_string(w.window) + " " + std::string(agentsla::to_token(w.unit));
}

std::string metric_summary(const agentsla::MetricSpec& metric) {
    std::string kind = metric.kind == agentsla::MetricKind::Plain     ? "plain"
                       : metric.kind == agentsla::MetricKind::Derived ? "derived"
                                                                      : "drift";
    std::string line = "\"" + metric.name + "\": " + kind + " " +
                       std::string(agentsla::to_token(metric.type));
    if (metric.unit) line += ", unit " + *metric.unit;
    if (metric.window) line += ", " + window_phrase(metric);
    line += ", uncertainty " + agentsla::format_number(metric.uncertainty);
    if (metric.provider) line += ", provider \"" + *metric.provider + "\"";
    return line;
}

int cmd_inspect(const std::string& path, bool as_json) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        return 3;
    }
    auto result = agentsla::decode(*text);
    if (!result.ok()) {
        print_diagnostics(result.diagnostics);
        return 1;
    }
    const agentsla::SlaDocument& doc = *result.document;

    if (as_json) {
        nlohmann::ordered_json root;
        auto& terms = root["guarantee_terms"] = nlohmann::ordered_json::array();
        for (const auto& term : doc.guarantee_terms) {
            nlohmann::ordered_json term_json;
            auto& scopes = term_json["scopes"] = nlohmann::ordered_json::array();
            for (const auto& scope : term.scopes)
                scopes.push_back({{"name", scope.name}, {"agent", scope.agent}});
            auto& conditions = term_json["qualifying_conditions"] =
                nlohmann::ordered_json::array();
            for (const auto& condition : term.qualifying_conditions) {
                nlohmann::ordered_json item;
                if (condition.name) item["name"] = *condition.name;
                item["expression"] = agentsla::to_infix(condition.expression);
                conditions.push_back(std::move(item));
            }
            auto& slos = term_json["slos"] = nlohmann::ordered_json::array();
            for (const auto& slo : term.slos)
                slos.push_back({{"name", slo.name},
                                {"expression", agentsla::to_infix(slo.expression)}});
            terms.push_back(std::move(term_json));
        }
        auto& metrics = root["metrics"] = nlohmann::ordered_json::array();
        for (const auto& metric : doc.metrics)
            metrics.push_back({{"name", metric.name}, {"summary", metric_summary(metric)}});
        auto& agents = root["agents"] = nlohmann::ordered_json::array();
        for (const auto& agent : doc.agents) {
            nlohmann::ordered_json item{{"name", agent.name}, {"url", agent.url}};
            if (agent.model_card) item["model_card"] = *agent.model_card;
            agents.push_back(std::move(item));
        }
        auto& providers = root["providers"] = nlohmann::ordered_json::array();
        for (const auto& provider : doc.providers)
            providers.push_back({{"name", provider.name},
                                 {"confidence", agentsla::detail::number_token(provider.confidence)},
                                 {"reputation", provider.reputation}});
        auto& cards = root["model_cards"] = nlohmann::ordered_json::array();
        for (const auto& card : doc.model_cards) cards.push_back(card.name);
        std::cout << root.dump(2) << "\n";
        return 0;
    }

    std::cout << "guarantee terms: " << doc.guarantee_terms.size() << "\n";
    for (std::size_t t = 0; t < doc.guarantee_terms.size(); ++t) {
        const auto& term = doc.guarantee_terms[t];
        std::cout << "  term " << t + 1 << ": scopes " << term.scopes.size()
                  << ", qualifying conditions " << term.qualifying_conditions.size()
                  << ", SLOs " << term.slos.size() << "\n";
        for (const auto& scope : term.scopes)
            std::cout << "    scope \"" << scope.name << "\" -> agent \"" << scope.agent
                      << "\"\n";
        for (const auto& condition : term.qualifying_conditions) {
            std::cout << "    condition";
            if (condition.name) std::cout << " \"" << *condition.name << "\"";
            std::cout << ": " << agentsla::to_infix(condition.expression) << "\n";
        }
        for (const auto& slo : term.slos)
            std::cout << "    SLO \"" << slo.name
                      << "\": " << agentsla::to_infix(slo.expression) << "\n";
    }
    std::cout << "metrics: " << doc.metrics.size() << "\n";
    for (const auto& metric : doc.metrics) std::cout << "  " << metric_summary(metric) << "\n";
    std::cout << "agents: " << doc.agents.size() << "\n";
    for (const auto& agent : doc.agents) {
        std::cout << "  \"" << agent.name << "\": url \"" << agent.url << "\"";
        if (agent.model_card) std::cout << ", model card \"" << *agent.model_card << "\"";
        std::cout << "\n";
    }
    std::cout << "providers: " << doc.providers.size() << "\n";
    for (const auto& provider : doc.providers)
        std::cout << "  \"" << provider.name
                  << "\": confidence " << agentsla::format_number(provider.confidence)
                  << ", reputation " << provider.reputation << "\n";
    std::cout << "model cards: " << doc.model_cards.size() << "\n";
    for (const auto& card : doc.model_cards) std::cout << "  \"" << card.name << "\"\n";
    return 0;
}

int cmd_catalog() {
    for (const auto& entry : agentsla::metric_catalog()) {
        std::string parents;
        for (const auto& parent : entry.parent_characteristics) {
            if (!parents.empty()) parents += "; ";
            parents += parent;
        }
        std::string units;
        for (const auto& unit : entry.allowed_units()) {
            if (!units.empty()) units += ",";
            units += unit;
        }
        if (units.empty()) units = "-";
        std::cout << entry.token << " | " << parents << " | "
                  << agentsla::to_token(entry.dimension) << " | " << units << " | "
                  << entry.definition << "\n";
    }
    return 0;
}

int cmd_evaluate(const std::string& sla_path, const std::string& measurements_path,
                 std::optional<double> at, bool as_json) {
    auto sla_text = read_file(sla_path);
    if (!sla_text) {
        std::cerr << "error: cannot read " << sla_path << "\n";
        return 3;
    }
    auto result = agentsla::decode(*sla_text);
    if (!result.ok()) {
        print_diagnostics(result.diagnostics);
        return 1;
    }
    auto measurements_text = read_file(measurements_path);
    if (!measurements_text) {
        std::cerr << "error: cannot read " << measurements_path << "\n";
        return 3;
    }
    auto loaded = agentsla::parse_measurement_jsonl(*measurements_text);
    if (!loaded.ok()) {
        std::cerr << "error: " << measurements_path << " line " << loaded.line << ": "
                  << loaded.error << "\n";
        return 3;
    }
    const double when = at ? *at : loaded.stream->max_timestamp().value_or(0.0);
    auto report = agentsla::evaluate(*result.document, *loaded.stream, when);
    if (as_json)
        std::cout << agentsla::report_to_json(report).dump(2) << "\n";
    else
        std::cout << agentsla::report_to_text(report);
    switch (report.overall) {
        case agentsla::TermVerdict::Satisfied:
        case agentsla::TermVerdict::NotApplicable: return 0;
        case agentsla::TermVerdict::Violated:      return 1;
        case agentsla::TermVerdict::Uncertain:     return 2;
    }
    return 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AgentSLA: validate, inspect, and evaluate SLA documents for AI agents"};
    app.require_subcommand(1);

    std::string sla_path;
    std::string measurements_path;
    std::optional<double> at;
    bool as_json = false;

    auto* validate = app.add_subcommand("validate", "Check an SLA document and report diagnostics");
    validate->add_option("file", sla_path, "SLA JSON file")->required();

    auto* inspect = app.add_subcommand("inspect", "Summarize the contents of an SLA document");
    inspect->add_option("file", sla_path, "SLA JSON file")->required();
    inspect->add_flag("--json", as_json, "Emit the summary as JSON");

    auto* normalize = app.add_subcommand("normalize", "Re-emit an SLA document in canonical form");
    normalize->add_option("file", sla_path, "SLA JSON file")->required();

    auto* catalog = app.add_subcommand("catalog", "Print the built-in metric catalog");

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate an SLA against a measurement stream");
    evaluate->add_option("file", sla_path, "SLA JSON file")->required();
    evaluate->add_option("--measurements", measurements_path, "Measurement stream (JSON lines)")
        ->required();
    evaluate->add_option("--at", at, "Evaluation timestamp (defaults to the latest measurement)");
    evaluate->add_flag("--json", as_json, "Emit the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    if (validate->parsed()) return cmd_validate(sla_path);
    if (inspect->parsed()) return cmd_inspect(sla_path, as_json);
    if (normalize->parsed()) return cmd_normalize(sla_path);
    if (catalog->parsed()) return cmd_catalog();
    if (evaluate->parsed()) return cmd_evaluate(sla_path, measurements_path, at, as_json);
    return 3;
}
