#pragma once

#include <utility>

#include "radiomark/imaging/volume.hpp"
#include "radiomark/parallel.hpp"

namespace radiomark {

/// Resamples onto a grid of `target` spacing covering the original physical
/// extent (dims = ceil(extent / target)). Intensities use trilinear
/// interpolation with edge clamping; the mask uses nearest neighbour.
/// Voxel centres sit at (i + 0.5) * spacing.
std::pair<Volume, RoiMask> resample(const Volume& volume, const RoiMask& mask, const Spacing& target,
                                    Execution exec = Execution::parallel);

/// Bounding box of the mask grown by `margin` voxels and clamped to the grid.
std::pair<Volume, RoiMask> crop_to_roi(const Volume& volume, const RoiMask& mask, std::size_t margin);

/// Fixed-bin-count discretisation over the ROI's [min, max]:
/// level = min(floor((v - min) * Ng / (max - min)) + 1, Ng); flat ROIs map to 1.
DiscretizedRoi discretize(const Volume& volume, const RoiMask& mask, int bin_count);

}  // namespace radiomark
