#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiomark/features/feature_table.hpp"

namespace radiomark {

/// Per-feature centring and scaling learned from a training table.
/// Columns whose population standard deviation is zero (to within
/// 1e-12 relative to the column magnitude) are dropped.
struct Standardizer {
    std::vector<std::string> features;  // retained, in table order
    std::vector<double> means;
    std::vector<double> stds;           // population standard deviation
    std::vector<std::string> dropped;

    static Standardizer fit(const FeatureTable& table);
    /// rows x retained-features matrix; throws MissingFeatureError.
    Eigen::MatrixXd transform(const FeatureTable& table) const;
};

void to_json(nlohmann::json& j, const Standardizer& s);
void from_json(const nlohmann::json& j, Standardizer& s);

}  // namespace radiomark
