#include "radiomark/evaluation/split.hpp"

#include <algorithm>
#include <cmath>

#include "radiomark/error.hpp"

namespace radiomark {

CohortSplit split_by_time(const std::vector<PatientRecord>& cohort, double ratio) {
    if (!(ratio > 0 && ratio < 1)) throw ConfigError("split ratio must lie in (0, 1)");
    if (cohort.size() < 4) throw CohortTooSmallError("time split needs at least 4 patients");

    std::vector<const PatientRecord*> sorted;
    sorted.reserve(cohort.size());
    for (const auto& p : cohort) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(), [](const PatientRecord* a, const PatientRecord* b) {
        if (a->visit_time != b->visit_time) return a->visit_time < b->visit_time;
        return a->id < b->id;
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i]->id == sorted[i - 1]->id && sorted[i]->visit_time == sorted[i - 1]->visit_time)
            throw ConfigError("duplicate patient id '" + sorted[i]->id + "'");

    const auto n = static_cast<double>(cohort.size());
    const auto n_train = static_cast<std::size_t>(std::floor(ratio * n + 0.5));
    if (n_train == 0 || n_train >= cohort.size())
        throw CohortTooSmallError("split ratio leaves an empty training or validation part");

    CohortSplit split;
    split.ratio = ratio;
    bool has0 = false, has1 = false;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        split.ordered_ids.push_back(sorted[i]->id);
        if (i < n_train) {
            split.train_ids.push_back(sorted[i]->id);
            (sorted[i]->label == 1 ? has1 : has0) = true;
        } else {
            split.validation_ids.push_back(sorted[i]->id);
        }
    }
    if (!has0 || !has1) throw CohortTooSmallError("training part of the time split lacks a class");
    return split;
}

CohortSplit split_by_time(const FeatureTable& table, double ratio) {
    std::vector<PatientRecord> records;
    records.reserve(table.rows());
    for (std::size_t r = 0; r < table.rows(); ++r)
        records.push_back({table.ids()[r], table.visit_times()[r], table.labels()[r]});
    return split_by_time(records, ratio);
}

}  // namespace radiomark
