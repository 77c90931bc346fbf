#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "radiomark/evaluation/delong.hpp"
#include "radiomark/evaluation/roc.hpp"
#include "radiomark/features/feature_table.hpp"
#include "radiomark/selection/biomarker.hpp"

namespace radiomark {

struct PairwiseComparison {
    std::size_t cohort = 0;
    std::size_t model_a = 0;
    std::size_t model_b = 0;
    DeLongResult result;
};

/// Validation AUCs of every (biomarker source, validation cohort) pair.
/// Rows index models, columns index cohorts; each column's comparisons are
/// paired on that cohort's score vectors.
struct TransferMatrix {
    std::vector<std::string> model_names;
    std::vector<std::string> cohort_names;
    std::vector<std::vector<double>> auc;               // [model][cohort]
    std::vector<std::vector<RocAnalysis>> roc;          // [model][cohort]
    std::vector<PairwiseComparison> comparisons;        // by cohort, then (a, b) with a < b

    /// Mean over the cohorts other than `model` (assumes model i was built
    /// on cohort i).
    double mean_off_diagonal(std::size_t model) const;

    void write_auc_csv(const std::filesystem::path& path) const;
    void write_delong_csv(const std::filesystem::path& path, double alpha) const;
    void write_roc_csv(const std::filesystem::path& path) const;
};

/// Throws MissingFeatureError when a model's feature is absent from a cohort.
TransferMatrix transfer_matrix(const std::vector<BiomarkerModel>& models, const std::vector<std::string>& model_names,
                               const std::vector<FeatureTable>& cohorts, const std::vector<std::string>& cohort_names);

}  // namespace radiomark
