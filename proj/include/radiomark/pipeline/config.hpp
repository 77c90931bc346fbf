#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiomark/features/catalog.hpp"
#include "radiomark/selection/biomarker.hpp"
#include "radiomark/synth/cohorts.hpp"
#include "radiomark/synth/phantom.hpp"

namespace radiomark {

struct PhantomBatch {
    std::size_t count = 0;
    std::vector<std::string> sequences{"ADC", "T2W"};
    PhantomSpec spec;  // seed and label are set per phantom
};

struct SimulationConfig {
    /// Empty means the built-in three-cohort experiment.
    std::vector<SyntheticCohortSpec> cohorts;
    double mixed_hard_fraction = 0.3;
    std::optional<PhantomBatch> phantoms;
};

/// Declarative configuration shared by every subcommand. Serialises to JSON
/// with a fixed key order; the effective config of each run is echoed into
/// its output directory.
struct PipelineConfig {
    std::string manifest;
    SimulationConfig simulation;
    FeatureCatalogConfig catalog;
    SelectionConfig selection;
    double split_ratio = 0.7;
    double alpha = 0.05;
    std::string out = "out";
    std::optional<std::uint64_t> seed;

    void validate() const;
    static PipelineConfig load(const std::filesystem::path& path);
};

void to_json(nlohmann::json& j, const PipelineConfig& c);
void from_json(const nlohmann::json& j, PipelineConfig& c);
void to_json(nlohmann::json& j, const SimulationConfig& c);
void from_json(const nlohmann::json& j, SimulationConfig& c);

}  // namespace radiomark
