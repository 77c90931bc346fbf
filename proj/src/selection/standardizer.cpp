#include "radiomark/selection/standardizer.hpp"

#include <cmath>

#include "radiomark/error.hpp"

namespace radiomark {

Standardizer Standardizer::fit(const FeatureTable& table) {
    if (table.rows() == 0) throw ConfigError("cannot standardize an empty table");
    Standardizer s;
    const auto n = static_cast<double>(table.rows());
    for (std::size_t c = 0; c < table.cols(); ++c) {
        double sum = 0;
        for (std::size_t r = 0; r < table.rows(); ++r) sum += table.value(r, c);
        const double mean = sum / n;
        double ss = 0;
        for (std::size_t r = 0; r < table.rows(); ++r) {
            const double d = table.value(r, c) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / n);
        if (sd == 0 || sd <= 1e-12 * std::fabs(mean)) {
            s.dropped.push_back(table.feature_names()[c]);
            continue;
        }
        s.features.push_back(table.feature_names()[c]);
        s.means.push_back(mean);
        s.stds.push_back(sd);
    }
    return s;
}

Eigen::MatrixXd Standardizer::transform(const FeatureTable& table) const {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(table.rows()), static_cast<Eigen::Index>(features.size()));
    for (std::size_t k = 0; k < features.size(); ++k) {
        const std::size_t c = table.column(features[k]);
        for (std::size_t r = 0; r < table.rows(); ++r)
            X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = (table.value(r, c) - means[k]) / stds[k];
    }
    return X;
}

void to_json(nlohmann::json& j, const Standardizer& s) {
    j = nlohmann::json{{"features", s.features}, {"means", s.means}, {"stds", s.stds}, {"dropped", s.dropped}};
}

void from_json(const nlohmann::json& j, Standardizer& s) {
    j.at("features").get_to(s.features);
    j.at("means").get_to(s.means);
    j.at("stds").get_to(s.stds);
    j.at("dropped").get_to(s.dropped);
    if (s.means.size() != s.features.size() || s.stds.size() != s.features.size())
        throw ConfigError("standardizer arrays have inconsistent lengths");
}

}  // namespace radiomark
