#include <string>

#include <catch_amalgamated.hpp>

#include "agentsla/agentsla.hpp"

using namespace agentsla;

namespace {

SlaDocument small_doc() {
    SlaDocument doc;
    doc.model_cards.push_back({"Card 1", "card text"});
    doc.providers.push_back({"Provider 1", 0.9, 10});
    doc.agents.push_back({"Agent 1", "an agent", "https://example.test", "Card 1"});
    MetricSpec metric;
    metric.name = "Metric 1";
    metric.description = "latency";
    metric.type = MetricType::TTFT;
    metric.unit = "sec";
    metric.provider = "Provider 1";
    metric.kind = MetricKind::Derived;
    metric.window = WindowSpec{10, WindowUnit::Message, AggregationFn::Avg};
    doc.metrics.push_back(metric);
    GuaranteeTerm term;
    term.scopes.push_back({"Scope 1", "Agent 1"});
    term.slos.push_back({"SLO 1", make_comparison("Metric 1", CompareOp::Less, 1.0)});
    doc.guarantee_terms.push_back(term);
    return doc;
}

} // namespace

TEST_CASE("expression equality and constructors") {
    auto a = make_comparison("m", CompareOp::Less, 1.0);
    auto b = make_comparison("m", CompareOp::Less, 1.0);
    CHECK(a == b);
    CHECK_FALSE(a == make_comparison("m", CompareOp::LessEq, 1.0));
    CHECK_FALSE(a == make_comparison("m", CompareOp::Less, 2.0));
    CHECK_FALSE(a == make_comparison("n", CompareOp::Less, 1.0));

    std::vector<BoolExpr> operands;
    operands.push_back(a);
    operands.push_back(b);
    auto conj = make_and(operands);
    auto disj = make_or(operands);
    CHECK(conj == make_and(operands));
    CHECK_FALSE(conj == disj);
}

TEST_CASE("infix rendering") {
    auto cmp = make_comparison("AVG TTFT", CompareOp::Less, 1.0);
    CHECK(to_infix(cmp) == "AVG TTFT < 1");
    CHECK(to_infix(make_comparison("m", CompareOp::GreaterEq, 0.25)) == "m >= 0.25");
    CHECK(to_infix(make_comparison("m", CompareOp::Neq, -2.0)) == "m != -2");

    auto nested = make_or({make_and({make_comparison("a", CompareOp::Less, 1.0),
                                     make_comparison("b", CompareOp::Greater, 2.0)}),
                           make_comparison("c", CompareOp::Eq, 3.0)});
    CHECK(to_infix(nested) == "((a < 1 AND b > 2) OR c == 3)");
}

TEST_CASE("number formatting") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-7.0) == "-7");
    CHECK(format_number(0.95) == "0.95");
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(1e300) == "1e+300");
}

TEST_CASE("operator tokens and symbols") {
    CHECK(to_token(CompareOp::Less) == "LESS");
    CHECK(to_token(CompareOp::LessEq) == "LESS_EQ");
    CHECK(to_token(CompareOp::Greater) == "GREATER");
    CHECK(to_token(CompareOp::GreaterEq) == "GREATER_EQ");
    CHECK(to_token(CompareOp::Eq) == "EQ");
    CHECK(to_token(CompareOp::Neq) == "NEQ");
    CHECK(to_symbol(CompareOp::Less) == "<");
    CHECK(to_symbol(CompareOp::Neq) == "!=");
    CHECK(compare_op_from_token("GREATER_EQ") == CompareOp::GreaterEq);
    CHECK_FALSE(compare_op_from_token("LESSER").has_value());

    CHECK(window_unit_from_token("MESSAGE") == WindowUnit::Message);
    CHECK(window_unit_from_token("DAY") == WindowUnit::Day);
    CHECK_FALSE(window_unit_from_token("WEEK").has_value());

    CHECK(aggregation_from_token("P95") == AggregationFn::P95);
    CHECK_FALSE(aggregation_from_token("MODE").has_value());
}

TEST_CASE("document lookups") {
    auto doc = small_doc();
    REQUIRE(doc.find_agent("Agent 1") != nullptr);
    CHECK(doc.find_agent("Agent 1")->url == "https://example.test");
    CHECK(doc.find_agent("Agent 9") == nullptr);
    REQUIRE(doc.find_metric("Metric 1") != nullptr);
    CHECK(doc.find_metric("Metric 1")->type == MetricType::TTFT);
    CHECK(doc.find_provider("Provider 1")->confidence == 0.9);
    CHECK(doc.find_model_card("Card 1")->model_card == "card text");
}

TEST_CASE("document equality treats registries as sets, terms as a list") {
    auto a = small_doc();
    auto b = small_doc();
    CHECK(a == b);

    // Another provider, declared in a different order on each side.
    b.providers.push_back({"Provider 0", 0.5, 1});
    auto c = b;
    std::swap(c.providers[0], c.providers[1]);
    CHECK(b == c);
    CHECK_FALSE(a == b);

    // Term order is meaningful.
    auto d = small_doc();
    GuaranteeTerm extra;
    extra.scopes.push_back({"Scope 2", "Agent 1"});
    extra.slos.push_back({"SLO 2", make_comparison("Metric 1", CompareOp::Greater, 0.0)});
    d.guarantee_terms.push_back(extra);
    auto e = d;
    std::swap(e.guarantee_terms[0], e.guarantee_terms[1]);
    CHECK_FALSE(d == e);
}

TEST_CASE("reference resolution accepts a closed document") {
    CHECK(resolve_references(small_doc()).empty());
}

TEST_CASE("unresolved references are reported with their location") {
    auto doc = small_doc();
    doc.guarantee_terms[0].scopes[0].agent = "Ghost";
    auto diags = resolve_references(doc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == DiagnosticCode::V5_UNRESOLVED_REFERENCE);
    CHECK(diags[0].path == "/GuaranteeTerm/0/Scope/0/Agent");

    doc = small_doc();
    doc.agents[0].model_card = "Ghost";
    diags = resolve_references(doc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == DiagnosticCode::V5_UNRESOLVED_REFERENCE);
    CHECK(diags[0].path == "/Agent/0/ModelCard");

    doc = small_doc();
    doc.metrics[0].provider = "Ghost";
    diags = resolve_references(doc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].path == "/DerivedQoSMetric/0/Provider");

    doc = small_doc();
    doc.guarantee_terms[0].slos[0].expression =
        make_and({make_comparison("Metric 1", CompareOp::Less, 1.0),
                  make_comparison("Ghost", CompareOp::Less, 1.0)});
    diags = resolve_references(doc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].path == "/GuaranteeTerm/0/SLO/0/BoolExpression/operands/1/QoSMetric");

    doc = small_doc();
    doc.guarantee_terms[0].qualifying_conditions.push_back(
        {std::nullopt, make_comparison("Ghost", CompareOp::Less, 1.0)});
    diags = resolve_references(doc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].path == "/GuaranteeTerm/0/QualifyingCondition/0/BoolExpression/QoSMetric");
}

TEST_CASE("duplicate names are reported at the second occurrence") {
    auto doc = small_doc();
    doc.agents.push_back({"Agent 1", "again", "https://example.test/2", std::nullopt});
    auto diags = resolve_references(doc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == DiagnosticCode::V6_DUPLICATE_NAME);
    CHECK(diags[0].path == "/Agent/1/name");

    doc = small_doc();
    MetricSpec dup = doc.metrics[0];
    dup.kind = MetricKind::Plain;
    dup.window.reset();
    doc.metrics.push_back(dup);
    diags = resolve_references(doc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == DiagnosticCode::V6_DUPLICATE_NAME);
    // Second declaration is the first entry of the plain-metric wire array.
    CHECK(diags[0].path == "/QoSMetric/0/name");
}

TEST_CASE("diagnostic code names") {
    CHECK(std::string(to_string(DiagnosticCode::V1_UNIT_MISSING)) == "V1_UNIT_MISSING");
    CHECK(std::string(to_string(DiagnosticCode::V4_CONFIDENCE_OUT_OF_BOUNDS)) ==
          "V4_CONFIDENCE_OUT_OF_BOUNDS");
    CHECK(std::string(to_string(DiagnosticCode::V10_SCHEMA_SHAPE)) == "V10_SCHEMA_SHAPE");
}
