#include "radiomark/evaluation/roc.hpp"

#include <algorithm>
#include <numeric>

#include "radiomark/error.hpp"

namespace radiomark {

namespace {

void check(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw ConfigError("scores and labels differ in length");
    bool has0 = false, has1 = false;
    for (int l : labels) {
        if (l == 1) has1 = true;
        else if (l == 0) has0 = true;
        else throw ConfigError("labels must be 0 or 1");
    }
    if (!has0 || !has1) throw SingleClassError("AUC needs both classes present");
}

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j + 1);  // mean of 1-based i+1..j
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
    check(scores, labels);
    const auto ranks = midranks(scores);
    double pos_rank_sum = 0, m = 0;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (labels[i] == 1) {
            pos_rank_sum += ranks[i];
            m += 1;
        }
    const double n = static_cast<double>(scores.size()) - m;
    return (pos_rank_sum - m * (m + 1) / 2) / (m * n);
}

double trapezoid_area(std::span<const RocPoint> points) {
    double area = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2;
    return area;
}

RocAnalysis roc_analysis(std::span<const double> scores, std::span<const int> labels) {
    check(scores, labels);
    std::vector<double> pos, neg;
    for (std::size_t i = 0; i < scores.size(); ++i) (labels[i] == 1 ? pos : neg).push_back(scores[i]);
    const double m = static_cast<double>(pos.size()), n = static_cast<double>(neg.size());

    RocAnalysis out;
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    out.points.push_back({0.0, 0.0});
    double tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (labels[order[j]] == 1 ? tp : fp) += 1;
            ++j;
        }
        out.points.push_back({fp / n, tp / m});
        i = j;
    }

    const auto combined = midranks(scores);
    const auto pos_ranks = midranks(pos);
    const auto neg_ranks = midranks(neg);
    out.v10.resize(pos.size());
    out.v01.resize(neg.size());
    std::size_t ip = 0, in = 0;
    double rank_sum = 0;
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (labels[k] == 1) {
            out.v10[ip] = (combined[k] - pos_ranks[ip]) / n;
            rank_sum += combined[k];
            ++ip;
        } else {
            out.v01[in] = 1.0 - (combined[k] - neg_ranks[in]) / m;
            ++in;
        }
    }
    out.auc = (rank_sum - m * (m + 1) / 2) / (m * n);
    return out;
}

}  // namespace radiomark
