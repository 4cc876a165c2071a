#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentsla/model.hpp"

namespace agentsla {

// One observation of a metric, in the metric's declared unit.
struct Measurement {
    std::string metric;
    double timestamp = 0.0; // seconds since epoch
    double value = 0.0;
    std::optional<std::string> agent; // when set, counts only for that agent's scopes

    bool operator==(const Measurement&) const = default;
};

// Per-metric, time-ordered observation sequences. Insertion keeps each
// sequence sorted by timestamp with ties in insertion order.
class MeasurementStream {
public:
    void add(Measurement m) {
        auto& series = series_[m.metric];
        auto it = std::upper_bound(series.begin(), series.end(), m.timestamp,
                                   [](double t, const Measurement& x) { return t < x.timestamp; });
        series.insert(it, std::move(m));
    }

    std::span<const Measurement> series(std::string_view metric) const {
        auto it = series_.find(metric);
        if (it == series_.end()) return {};
        return it->second;
    }

    // Observations of `metric` that apply to `agent`: untagged measurements
    // plus those tagged with the same agent name.
    std::vector<Measurement> series_for_agent(std::string_view metric,
                                              std::string_view agent) const {
        std::vector<Measurement> out;
        for (const auto& m : series(metric))
            if (!m.agent || *m.agent == agent) out.push_back(m);
        return out;
    }

    std::optional<double> max_timestamp() const {
        std::optional<double> max;
        for (const auto& [name, series] : series_) {
            if (series.empty()) continue;
            double last = series.back().timestamp;
            if (!max || last > *max) max = last;
        }
        return max;
    }

    bool empty() const {
        for (const auto& [name, series] : series_)
            if (!series.empty()) return false;
        return true;
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& [name, series] : series_) n += series.size();
        return n;
    }

private:
    std::map<std::string, std::vector<Measurement>, std::less<>> series_;
};

struct StreamLoadResult {
    std::optional<MeasurementStream> stream; // engaged iff error is empty
    std::string error;
    std::size_t line = 0; // 1-based line of the first error

    bool ok() const { return stream.has_value(); }
};

// Parses JSON-Lines measurements: one object per line with keys "metric",
// "timestamp", "value" and optional "agent". Timestamps must be
// nondecreasing per metric; blank lines are skipped.
inline StreamLoadResult parse_measurement_jsonl(std::string_view text) {
    StreamLoadResult result;
    MeasurementStream stream;
    std::map<std::string, double, std::less<>> last_seen;

    auto fail = [&](std::size_t line, std::string message) {
        result.error = std::move(message);
        result.line = line;
        return result;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                              : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            return fail(line_no, e.what());
        }
        if (!j.is_object()) return fail(line_no, "expected an object");
        for (const auto& item : j.items()) {
            if (item.key() != "metric" && item.key() != "timestamp" && item.key() != "value" &&
                item.key() != "agent")
                return fail(line_no, "unknown key \"" + item.key() + "\"");
        }
        if (!j.contains("metric") || !j["metric"].is_string())
            return fail(line_no, "\"metric\" must be a string");
        if (!j.contains("timestamp") || !j["timestamp"].is_number())
            return fail(line_no, "\"timestamp\" must be a number");
        if (!j.contains("value") || !j["value"].is_number())
            return fail(line_no, "\"value\" must be a number");

        Measurement m;
        m.metric = j["metric"].get<std::string>();
        m.timestamp = j["timestamp"].get<double>();
        m.value = j["value"].get<double>();
        if (j.contains("agent")) {
            if (!j["agent"].is_string()) return fail(line_no, "\"agent\" must be a string");
            m.agent = j["agent"].get<std::string>();
        }
        if (!std::isfinite(m.timestamp) || !std::isfinite(m.value))
            return fail(line_no, "timestamp and value must be finite");

        auto it = last_seen.find(m.metric);
        if (it != last_seen.end() && m.timestamp < it->second)
            return fail(line_no, "timestamps for metric \"" + m.metric +
                                     "\" must be nondecreasing");
        last_seen[m.metric] = m.timestamp;
        stream.add(std::move(m));
    }

    result.stream = std::move(stream);
    return result;
}

} // namespace agentsla
