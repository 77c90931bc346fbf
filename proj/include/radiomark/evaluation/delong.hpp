#pragma once

#include <span>
#include <string>

namespace radiomark {

struct DeLongResult {
    double auc_a = 0.0;
    double auc_b = 0.0;
    double difference = 0.0;  // auc_a - auc_b
    double variance = 0.0;
    double z = 0.0;
    double p = 1.0;
    /// Zero variance of the difference (e.g. rank-identical predictors):
    /// no detectable difference, z = 0 and p = 1.
    bool degenerate = false;
};

/// Paired DeLong comparison of two predictors scored on the same patients.
/// var = var(V10a - V10b) / m + var(V01a - V01b) / n with sample variances
/// over the m positives and n negatives; p is two-sided normal.
DeLongResult delong_paired(std::span<const double> scores_a, std::span<const double> scores_b,
                           std::span<const int> labels);

/// Standard normal upper-tail doubled: 2 * (1 - Phi(|z|)).
double two_sided_p(double z);

}  // namespace radiomark
