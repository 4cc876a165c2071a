#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "agentsla/model.hpp"

namespace agentsla {

// Unit dimension of a metric type. Dimensional metrics must declare a unit;
// dimensionless ones normally omit it.
enum class UnitDimension { Time, Energy, Water, Carbon, Count, Ratio, Distance, Boolean, Ordinal };

inline constexpr std::string_view to_token(UnitDimension dim) {
    switch (dim) {
        case UnitDimension::Time:     return "TIME";
        case UnitDimension::Energy:   return "ENERGY";
        case UnitDimension::Water:    return "WATER";
        case UnitDimension::Carbon:   return "CARBON";
        case UnitDimension::Count:    return "COUNT";
        case UnitDimension::Ratio:    return "RATIO";
        case UnitDimension::Distance: return "DISTANCE";
        case UnitDimension::Boolean:  return "BOOLEAN";
        case UnitDimension::Ordinal:  return "ORDINAL";
    }
    return "?";
}

namespace detail {

inline constexpr std::string_view kTimeUnits[]   = {"ms", "sec", "min", "hour"};
inline constexpr std::string_view kEnergyUnits[] = {"J", "Wh", "kWh"};
inline constexpr std::string_view kWaterUnits[]  = {"mL", "L", "m3"};
inline constexpr std::string_view kCarbonUnits[] = {"gCO2e", "kgCO2e", "tCO2e"};
inline constexpr std::string_view kCountUnits[]  = {"token", "char", "word"};
// Dimensionless ratios may spell out the literal token instead of omitting
// the unit; the other dimensionless dimensions take no unit at all.
inline constexpr std::string_view kRatioUnits[]  = {"ratio"};

} // namespace detail

// Unit tokens accepted for a dimension. Empty span means the unit key must be
// absent.
inline std::span<const std::string_view> units_for(UnitDimension dim) {
    switch (dim) {
        case UnitDimension::Time:   return detail::kTimeUnits;
        case UnitDimension::Energy: return detail::kEnergyUnits;
        case UnitDimension::Water:  return detail::kWaterUnits;
        case UnitDimension::Carbon: return detail::kCarbonUnits;
        case UnitDimension::Count:  return detail::kCountUnits;
        case UnitDimension::Ratio:  return detail::kRatioUnits;
        case UnitDimension::Distance:
        case UnitDimension::Boolean:
        case UnitDimension::Ordinal:
            return {};
    }
    return {};
}

inline constexpr bool unit_required(UnitDimension dim) {
    switch (dim) {
        case UnitDimension::Time:
        case UnitDimension::Energy:
        case UnitDimension::Water:
        case UnitDimension::Carbon:
        case UnitDimension::Count:
            return true;
        case UnitDimension::Ratio:
        case UnitDimension::Distance:
        case UnitDimension::Boolean:
        case UnitDimension::Ordinal:
            return false;
    }
    return false;
}

// One row of the metric catalog: where the metric sits in the quality model,
// what it means, and how its unit is validated.
struct MetricCatalogEntry {
    MetricType type;
    std::string_view token;
    std::vector<std::string_view> parent_characteristics;
    std::string_view definition;
    UnitDimension dimension;

    bool unit_required() const { return agentsla::unit_required(dimension); }
    std::span<const std::string_view> allowed_units() const { return units_for(dimension); }
    bool allows_unit(std::string_view unit) const {
        for (auto u : allowed_units())
            if (u == unit) return true;
        return false;
    }
};

inline const std::array<MetricCatalogEntry, kMetricTypeCount>& metric_catalog() {
    static const std::array<MetricCatalogEntry, kMetricTypeCount> catalog = {{
        {MetricType::Precision, "PRECISION", {"Functional completeness"},
         "True positive over all predicted positive", UnitDimension::Ratio},
        {MetricType::Recall, "RECALL", {"Functional completeness"},
         "True positive over all actual positive", UnitDimension::Ratio},
        {MetricType::Accuracy, "ACCURACY", {"Functional correctness"},
         "Percentage of correct prediction", UnitDimension::Ratio},
        {MetricType::AUC, "AUC", {"Functional correctness"},
         "Probability that the model, if given a randomly chosen positive and negative example, "
         "will rank the positive higher than the negative.",
         UnitDimension::Ratio},
        {MetricType::F1, "F1", {"Functional completeness"},
         "Harmonic mean of accuracy and recall", UnitDimension::Ratio},
        {MetricType::XAccuDiff, "XACCUDIFF", {"Functional appropriateness"},
         "Accuracy difference between the train and test sets", UnitDimension::Ratio},
        {MetricType::PMV, "PMV", {"Functional appropriateness"},
         "Accuracy decrease rate between a model and the same model trained with noise in the "
         "training data",
         UnitDimension::Ratio},
        // Listed under two characteristics in the quality model; a single
        // entry carries both parents.
        {MetricType::TrainingTime, "TRAINING_TIME",
         {"Functional appropriateness", "Time-behavior"},
         "Training time used as complexity proxy", UnitDimension::Time},
        {MetricType::PointwiseRobustness, "POINTWISE_ROBUSTNESS", {"User error protection"},
         "Minimum input change affecting model prediction", UnitDimension::Distance},
        {MetricType::AdversarialFrequency, "ADVERSARIAL_FREQUENCY", {"User error protection"},
         "Input change impact frequency", UnitDimension::Ratio},
        {MetricType::AdversarialSeverity, "ADVERSARIAL_SEVERITY", {"Fault-tolerance"},
         "Distance between an input and its nearest adversarial example", UnitDimension::Distance},
        {MetricType::AdversarialDistance, "ADVERSARIAL_DISTANCE", {"Fault-tolerance"},
         "AdversarialSeverity on a training input", UnitDimension::Distance},
        {MetricType::TTFT, "TTFT", {"Time-behavior"},
         "Time between the request and the generation of the first token", UnitDimension::Time},
        {MetricType::E2E, "E2E", {"Time-behavior"},
         "Time elapsed between request and end result", UnitDimension::Time},
        {MetricType::Bias, "BIAS", {"Fairness"},
         "Ratio of successful bias tests passed using LangBiTe", UnitDimension::Ratio},
        {MetricType::Racism, "RACISM", {"Fairness"}, "Ratio for racism tests", UnitDimension::Ratio},
        {MetricType::Sexism, "SEXISM", {"Fairness"}, "Ratio for sexism tests", UnitDimension::Ratio},
        {MetricType::Ageism, "AGEISM", {"Fairness"}, "Ratio for ageism tests", UnitDimension::Ratio},
        {MetricType::Religious, "RELIGIOUS", {"Fairness"},
         "Ratio for religious bias tests", UnitDimension::Ratio},
        {MetricType::Political, "POLITICAL", {"Fairness"},
         "Ratio for political bias tests", UnitDimension::Ratio},
        {MetricType::Xenophobia, "XENOPHOBIA", {"Fairness"},
         "Ratio for xenophobia tests", UnitDimension::Ratio},
        {MetricType::SHAP, "SHAP", {"Interpretability"},
         "SHAP estimation error", UnitDimension::Ratio},
        {MetricType::LIME, "LIME", {"Interpretability"},
         "Comparison to interpretable local surrogates", UnitDimension::Ratio},
        {MetricType::EnergyConsumption, "ENERGY_CONSUMPTION",
         {"Training impact", "Inference impact"},
         "Estimated energy consumption", UnitDimension::Energy},
        {MetricType::WaterConsumption, "WATER_CONSUMPTION",
         {"Training impact", "Inference impact"},
         "Estimated water consumption", UnitDimension::Water},
        {MetricType::CarbonEmissions, "CARBON_EMISSIONS",
         {"Training impact", "Inference impact"},
         "Estimated carbon emissions", UnitDimension::Carbon},
        {MetricType::CarbonOffset, "CARBON_OFFSET", {"Mitigation"},
         "Percentage of carbon emissions offset by buying Carbon offset credit",
         UnitDimension::Ratio},
        {MetricType::OutputSize, "OUTPUT_SIZE", {"Conciseness"},
         "Length of the generated output", UnitDimension::Count},
        {MetricType::A2A, "A2A", {"Interoperability"},
         "The agent can communicate using A2A (0 if no, else 1)", UnitDimension::Boolean},
        {MetricType::MCP, "MCP", {"Interoperability"},
         "The agent can connect to tools via MCP (0 or 1)", UnitDimension::Boolean},
        {MetricType::OversightLevel, "OVERSIGHT_LEVEL", {"Autonomy"},
         "Level of human oversight", UnitDimension::Ordinal},
    }};
    return catalog;
}

// Total over the enum: every MetricType has exactly one catalog row.
inline const MetricCatalogEntry& catalog_lookup(MetricType type) {
    return metric_catalog()[static_cast<std::size_t>(type)];
}

} // namespace agentsla
