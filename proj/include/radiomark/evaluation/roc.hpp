#pragma once

#include <span>
#include <vector>

namespace radiomark {

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Empirical ROC with DeLong structural components. v10[i] is the
/// placement value of the i-th positive (in input order), v01[j] that of
/// the j-th negative.
struct RocAnalysis {
    std::vector<RocPoint> points;  // (0,0) first, (1,1) last
    double auc = 0.0;
    std::vector<double> v10;
    std::vector<double> v01;
};

/// Mann-Whitney AUC via midranks, O(n log n); ties count one half.
/// Throws SingleClassError unless both classes are present.
double auc(std::span<const double> scores, std::span<const int> labels);

/// ROC points at every distinct threshold (descending) plus components.
RocAnalysis roc_analysis(std::span<const double> scores, std::span<const int> labels);

/// Trapezoidal area under a point sequence.
double trapezoid_area(std::span<const RocPoint> points);

/// Midranks (1-based, ties averaged) of `values`.
std::vector<double> midranks(std::span<const double> values);

}  // namespace radiomark
