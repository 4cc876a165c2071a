#include <string>

#include <catch_amalgamated.hpp>

#include "agentsla/agentsla.hpp"

using namespace agentsla;

TEST_CASE("stream keeps per-metric series sorted, ties in insertion order") {
    MeasurementStream stream;
    stream.add({"m", 2.0, 20.0, std::nullopt});
    stream.add({"m", 1.0, 10.0, std::nullopt});
    stream.add({"m", 2.0, 21.0, std::nullopt});
    stream.add({"other", 0.5, 99.0, std::nullopt});

    auto series = stream.series("m");
    REQUIRE(series.size() == 3);
    CHECK(series[0].value == 10.0);
    CHECK(series[1].value == 20.0);
    CHECK(series[2].value == 21.0);

    CHECK(stream.series("other").size() == 1);
    CHECK(stream.series("absent").empty());
    CHECK(stream.size() == 4);
    CHECK_FALSE(stream.empty());
    REQUIRE(stream.max_timestamp().has_value());
    CHECK(*stream.max_timestamp() == 2.0);

    CHECK(MeasurementStream{}.empty());
    CHECK_FALSE(MeasurementStream{}.max_timestamp().has_value());
}

TEST_CASE("agent filtering keeps untagged plus matching measurements") {
    MeasurementStream stream;
    stream.add({"m", 1.0, 1.0, std::nullopt});
    stream.add({"m", 2.0, 2.0, "A"});
    stream.add({"m", 3.0, 3.0, "B"});

    auto for_a = stream.series_for_agent("m", "A");
    REQUIRE(for_a.size() == 2);
    CHECK(for_a[0].value == 1.0);
    CHECK(for_a[1].value == 2.0);

    auto for_c = stream.series_for_agent("m", "C");
    REQUIRE(for_c.size() == 1);
    CHECK(for_c[0].value == 1.0);
}

TEST_CASE("measurement lines parse with agents and blank lines") {
    const std::string text =
        "{\"metric\": \"AVG TTFT\", \"timestamp\": 1.5, \"value\": 0.5}\n"
        "\n"
        "{\"metric\": \"AVG TTFT\", \"timestamp\": 2.5, \"value\": 0.6, \"agent\": \"Agent 1\"}\n"
        "{\"metric\": \"errors\", \"timestamp\": 0.5, \"value\": 3}\n";
    auto result = parse_measurement_jsonl(text);
    REQUIRE(result.ok());
    CHECK(result.stream->size() == 3);
    auto series = result.stream->series("AVG TTFT");
    REQUIRE(series.size() == 2);
    CHECK(series[0].timestamp == 1.5);
    CHECK_FALSE(series[0].agent.has_value());
    REQUIRE(series[1].agent.has_value());
    CHECK(*series[1].agent == "Agent 1");
    CHECK(*result.stream->max_timestamp() == 2.5);
}

TEST_CASE("malformed measurement lines are rejected with their line number") {
    auto result = parse_measurement_jsonl("{\"metric\": \"m\", \"timestamp\": 1, \"value\": 1}\nnot json\n");
    CHECK_FALSE(result.ok());
    CHECK(result.line == 2);

    result = parse_measurement_jsonl("[1, 2]\n");
    CHECK_FALSE(result.ok());
    CHECK(result.line == 1);
    CHECK(result.error == "expected an object");

    result = parse_measurement_jsonl("{\"metric\": \"m\", \"value\": 1}\n");
    CHECK_FALSE(result.ok());
    CHECK(result.error == "\"timestamp\" must be a number");

    result = parse_measurement_jsonl(
        "{\"metric\": \"m\", \"timestamp\": 1, \"value\": 1, \"extra\": 2}\n");
    CHECK_FALSE(result.ok());
    CHECK(result.error == "unknown key \"extra\"");

    result = parse_measurement_jsonl(
        "{\"metric\": \"m\", \"timestamp\": 1, \"value\": \"fast\"}\n");
    CHECK_FALSE(result.ok());
    CHECK(result.error == "\"value\" must be a number");

    result = parse_measurement_jsonl(
        "{\"metric\": \"m\", \"timestamp\": 1, \"value\": 1, \"agent\": 7}\n");
    CHECK_FALSE(result.ok());
    CHECK(result.error == "\"agent\" must be a string");
}

TEST_CASE("timestamps must be nondecreasing per metric") {
    const std::string text =
        "{\"metric\": \"a\", \"timestamp\": 5, \"value\": 1}\n"
        "{\"metric\": \"b\", \"timestamp\": 1, \"value\": 1}\n"
        "{\"metric\": \"a\", \"timestamp\": 5, \"value\": 2}\n"
        "{\"metric\": \"a\", \"timestamp\": 4, \"value\": 3}\n";
    auto result = parse_measurement_jsonl(text);
    CHECK_FALSE(result.ok());
    CHECK(result.line == 4);
    CHECK(result.error.find("nondecreasing") != std::string::npos);

    // Interleaving metrics is fine; equal timestamps are fine.
    auto ok = parse_measurement_jsonl(
        "{\"metric\": \"a\", \"timestamp\": 5, \"value\": 1}\n"
        "{\"metric\": \"b\", \"timestamp\": 1, \"value\": 1}\n"
        "{\"metric\": \"a\", \"timestamp\": 5, \"value\": 2}\n");
    CHECK(ok.ok());
}

TEST_CASE("empty input is an empty stream") {
    auto result = parse_measurement_jsonl("");
    REQUIRE(result.ok());
    CHECK(result.stream->empty());

    result = parse_measurement_jsonl("\n   \n\t\n");
    REQUIRE(result.ok());
    CHECK(result.stream->empty());
}
