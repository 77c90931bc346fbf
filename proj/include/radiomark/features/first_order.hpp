#pragma once

#include "radiomark/features/feature_vector.hpp"
#include "radiomark/imaging/volume.hpp"

namespace radiomark {

/// The 18 intensity-histogram features of the ROI. Entropy and uniformity
/// use `bin_count` fixed-count bins; percentiles interpolate linearly
/// between order statistics. Skewness and kurtosis fall back to 0 for a
/// flat ROI.
FeatureVector first_order(const Volume& volume, const RoiMask& mask, int bin_count);

}  // namespace radiomark
