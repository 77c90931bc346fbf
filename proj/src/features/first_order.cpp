#include "radiomark/features/first_order.hpp"

#include <algorithm>
#include <cmath>

#include "radiomark/error.hpp"
#include "radiomark/imaging/preprocess.hpp"

namespace radiomark {

namespace {

double percentile(const std::vector<double>& sorted, double q) {
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

FeatureVector first_order(const Volume& volume, const RoiMask& mask, int bin_count) {
    if (!(volume.dims() == mask.dims())) throw DimsError("mask dims differ from volume dims");
    if (mask.empty()) throw EmptyMaskError("first-order features need a non-empty ROI");

    std::vector<double> x;
    x.reserve(mask.roi_count());
    for (std::size_t i = 0; i < volume.voxels().size(); ++i)
        if (mask.flags()[i]) x.push_back(volume.voxels()[i]);
    const auto n = static_cast<double>(x.size());

    double sum = 0, energy = 0;
    for (double v : x) {
        sum += v;
        energy += v * v;
    }
    const double mean = sum / n;
    double m2 = 0, m3 = 0, m4 = 0, mad = 0;
    for (double v : x) {
        const double dv = v - mean;
        m2 += dv * dv;
        m3 += dv * dv * dv;
        m4 += dv * dv * dv * dv;
        mad += std::fabs(dv);
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    mad /= n;

    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double p10 = percentile(sorted, 0.10);
    const double p25 = percentile(sorted, 0.25);
    const double p75 = percentile(sorted, 0.75);
    const double p90 = percentile(sorted, 0.90);

    double robust_sum = 0;
    std::size_t robust_n = 0;
    for (double v : x)
        if (v >= p10 && v <= p90) {
            robust_sum += v;
            ++robust_n;
        }
    const double robust_mean = robust_sum / static_cast<double>(robust_n);
    double robust_mad = 0;
    for (double v : x)
        if (v >= p10 && v <= p90) robust_mad += std::fabs(v - robust_mean);
    robust_mad /= static_cast<double>(robust_n);

    const DiscretizedRoi binned = discretize(volume, mask, bin_count);
    std::vector<double> hist(static_cast<std::size_t>(bin_count), 0.0);
    for (int level : binned.levels) hist[static_cast<std::size_t>(level - 1)] += 1.0;
    double entropy = 0, uniformity = 0;
    for (double c : hist) {
        if (c == 0) continue;
        const double p = c / n;
        entropy -= p * std::log2(p);
        uniformity += p * p;
    }

    FeatureVector f;
    f.add("energy", energy);
    f.add("entropy", entropy);
    f.add("interquartile_range", p75 - p25);
    f.add("kurtosis", m2 > 0 ? m4 / (m2 * m2) : 0.0);
    f.add("maximum", sorted.back());
    f.add("mean", mean);
    f.add("mean_absolute_deviation", mad);
    f.add("median", percentile(sorted, 0.5));
    f.add("minimum", sorted.front());
    f.add("percentile_10", p10);
    f.add("percentile_90", p90);
    f.add("range", sorted.back() - sorted.front());
    f.add("robust_mean_absolute_deviation", robust_mad);
    f.add("root_mean_squared", std::sqrt(energy / n));
    f.add("skewness", m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0);
    f.add("total_energy", volume.spacing().voxel_volume() * energy);
    f.add("uniformity", uniformity);
    f.add("variance", m2);
    f.sort_by_name();
    return f;
}

}  // namespace radiomark
