#pragma once

#include <string>
#include <vector>

#include "radiomark/features/feature_table.hpp"
#include "radiomark/imaging/volume.hpp"

namespace radiomark {

struct PatientRecord {
    std::string id;
    VisitTime visit_time;
    int label = 0;
};

struct CohortSplit {
    std::vector<std::string> ordered_ids;  // by (visit_time, id)
    std::vector<std::string> train_ids;
    std::vector<std::string> validation_ids;
    double ratio = 0.7;
};

/// Time-ordered split: the first round_half_up(ratio * n) patients by
/// (visit_time, id) train, the rest validate. Throws CohortTooSmallError
/// for n < 4 or when the training part lacks a class.
CohortSplit split_by_time(const std::vector<PatientRecord>& cohort, double ratio = 0.7);
CohortSplit split_by_time(const FeatureTable& table, double ratio = 0.7);

}  // namespace radiomark
