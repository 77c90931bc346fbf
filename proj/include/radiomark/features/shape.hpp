#pragma once

#include "radiomark/features/feature_vector.hpp"
#include "radiomark/imaging/volume.hpp"

namespace radiomark {

/// Ten voxel-based shape descriptors. Surface area counts exposed voxel
/// faces; axis lengths come from the principal components of voxel-centre
/// coordinates (population covariance).
FeatureVector shape(const RoiMask& mask, const Spacing& spacing);

}  // namespace radiomark
