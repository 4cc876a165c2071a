#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace fixtures {

// A complete, valid document: one guarantee term with one scope and one SLO,
// one derived metric, one provider, one agent, one model card.
inline const char* kGoldenSla = R"json({
  "GuaranteeTerm":[{
    "Scope":[{
      "name":"Scope 1",
      "Agent": "Agent 1"
    }],
    "QualifyingCondition":[],
    "SLO":[{
      "name": "SLO 1",
      "BoolExpression": {
        "type":"Comparison",
        "QoSMetric": "AVG TTFT",
        "operator": "LESS",
        "value": 1
      }
    }]
  }],
  "DerivedQoSMetric":[{
    "name": "AVG TTFT",
    "description": "description",
    "metric_type": "TTFT",
    "unit": "sec",
    "uncertainty": 0,
    "window": 10,
    "window_unit": "MESSAGE",
    "aggregation": "AVG",
    "Provider": "Provider 1"
  }],
  "Provider": [{
    "name": "Provider 1",
    "confidence": 0.95,
    "reputation": 50
  }],
  "Agent":[{
    "name": "Agent 1",
    "description": "description text",
    "url": "agent_url",
    "ModelCard": "GPT 4o"
  }],
  "ModelCard":[{
    "name": "GPT 4o",
    "model_card": "..."
  }]
})json";

inline nlohmann::ordered_json golden_json() {
    return nlohmann::ordered_json::parse(kGoldenSla);
}

// Applies `mutate` to a parsed copy of the golden document and returns the
// mutated text, keeping every other field untouched.
template <typename F>
std::string mutated_golden(F&& mutate) {
    auto doc = golden_json();
    mutate(doc);
    return doc.dump(2);
}

} // namespace fixtures
