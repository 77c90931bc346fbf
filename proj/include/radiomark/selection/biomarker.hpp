#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiomark/features/feature_table.hpp"
#include "radiomark/selection/lasso.hpp"
#include "radiomark/selection/standardizer.hpp"

namespace radiomark {

struct SelectionConfig {
    int folds = 5;
    SelectionRule rule = SelectionRule::one_se;
    int grid_size = 100;
    double grid_ratio = 1e-3;
    double lambda_floor = 0.0;  // chosen lambda is raised to at least this
    std::uint64_t seed = 0;
    double tolerance = 1e-7;

    void validate() const;
    /// FNV-1a of the canonical JSON form, as 16 hex digits.
    std::string hash() const;
};

void to_json(nlohmann::json& j, const SelectionConfig& c);
void from_json(const nlohmann::json& j, SelectionConfig& c);

struct Provenance {
    std::string cohort_id;
    std::string config_hash;
    std::uint64_t seed = 0;       // effective fold seed
    bool empty_selection = false;
    std::size_t training_patients = 0;
};

/// Sparse logistic biomarker. The signature of a patient is
/// sigmoid(intercept + sum_k coefficients[k] * (x_k - mean_k) / std_k).
struct BiomarkerModel {
    std::vector<std::string> features;
    std::vector<double> coefficients;
    double intercept = 0.0;
    double lambda = 0.0;
    Standardizer standardizer;
    Provenance provenance;

    void write_json(const std::filesystem::path& path) const;
    static BiomarkerModel read_json(const std::filesystem::path& path);
    bool operator==(const BiomarkerModel& other) const;
};

void to_json(nlohmann::json& j, const BiomarkerModel& m);
void from_json(const nlohmann::json& j, BiomarkerModel& m);

struct BuildResult {
    BiomarkerModel model;
    CvCurve curve;
    std::vector<double> training_scores;  // score(model, table), input row order
};

/// Drops zero-variance features, standardizes, cross-validates the penalty,
/// refits on the full table at the chosen lambda and keeps the nonzero
/// coefficients. Rows are sorted by id first and the fold seed is derived
/// from the sorted ids, so the result does not depend on row order.
BuildResult build_biomarker(const FeatureTable& table, const SelectionConfig& config, const std::string& cohort_id,
                            Execution exec = Execution::parallel);

/// Per-patient signature in (0, 1). Throws MissingFeatureError.
std::vector<double> score(const BiomarkerModel& model, const FeatureTable& table);

}  // namespace radiomark
