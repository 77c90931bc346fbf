#include "radiomark/evaluation/delong.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "radiomark/error.hpp"
#include "radiomark/evaluation/roc.hpp"

namespace radiomark {

namespace {

double sample_variance_of_difference(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t k = a.size();
    double mean = 0;
    for (std::size_t i = 0; i < k; ++i) mean += a[i] - b[i];
    mean /= static_cast<double>(k);
    double ss = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double d = a[i] - b[i] - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(k - 1);
}

}  // namespace

double two_sided_p(double z) { return std::erfc(std::fabs(z) / std::numbers::sqrt2); }

DeLongResult delong_paired(std::span<const double> scores_a, std::span<const double> scores_b,
                           std::span<const int> labels) {
    if (scores_a.size() != scores_b.size()) throw ConfigError("paired score vectors differ in length");
    const RocAnalysis ra = roc_analysis(scores_a, labels);
    const RocAnalysis rb = roc_analysis(scores_b, labels);
    if (ra.v10.size() < 2 || ra.v01.size() < 2)
        throw CohortTooSmallError("DeLong test needs at least two patients per class");

    DeLongResult out;
    out.auc_a = ra.auc;
    out.auc_b = rb.auc;
    out.difference = ra.auc - rb.auc;
    out.variance = sample_variance_of_difference(ra.v10, rb.v10) / static_cast<double>(ra.v10.size()) +
                   sample_variance_of_difference(ra.v01, rb.v01) / static_cast<double>(ra.v01.size());
    if (!(out.variance > 0)) {
        out.variance = 0;
        out.degenerate = true;
        out.z = 0;
        out.p = 1;
        return out;
    }
    out.z = out.difference / std::sqrt(out.variance);
    out.p = two_sided_p(out.z);
    return out;
}

}  // namespace radiomark
