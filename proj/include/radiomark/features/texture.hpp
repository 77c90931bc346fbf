#pragma once

#include <array>
#include <vector>

#include "radiomark/features/feature_vector.hpp"
#include "radiomark/imaging/volume.hpp"
#include "radiomark/parallel.hpp"

namespace radiomark {

enum class TextureFamily { glcm, glrlm, glszm, ngtdm, gldm };

/// Dense nonnegative grid indexed by (gray level, column), both 1-based in
/// the accessors. Columns are gray levels for GLCM, run lengths for GLRLM,
/// zone sizes for GLSZM and dependence counts for GLDM.
struct TextureMatrix {
    TextureFamily family = TextureFamily::glcm;
    int levels = 0;
    int columns = 0;
    std::vector<double> cells;

    TextureMatrix() = default;
    TextureMatrix(TextureFamily f, int rows, int cols)
        : family(f), levels(rows), columns(cols), cells(static_cast<std::size_t>(rows) * cols, 0.0) {}

    double& operator()(int level, int column) {
        return cells[static_cast<std::size_t>(level - 1) * columns + (column - 1)];
    }
    double operator()(int level, int column) const {
        return cells[static_cast<std::size_t>(level - 1) * columns + (column - 1)];
    }
    double total() const;
    /// Copy scaled to unit sum; throws DegenerateMatrixError when empty.
    TextureMatrix normalized() const;
};

/// The 13 unique unit direction vectors of the 26-neighbourhood.
const std::array<Index3, 13>& texture_directions();

/// Symmetric co-occurrence counts for one offset; both voxels of a pair must
/// lie in the ROI.
TextureMatrix glcm_matrix(const DiscretizedRoi& roi, const Index3& offset);
/// Run-length counts along one direction; rows = levels, columns = run
/// lengths up to the largest grid dimension.
TextureMatrix glrlm_matrix(const DiscretizedRoi& roi, const Index3& direction);
/// Zone counts over 26-connected equal-level zones; columns = zone sizes up
/// to the largest zone.
TextureMatrix glszm_matrix(const DiscretizedRoi& roi);
/// Dependence counts (1 + equal-level 26-neighbours in the ROI); 27 columns.
TextureMatrix gldm_matrix(const DiscretizedRoi& roi);

/// Neighbourhood gray-tone difference table over the 26-neighbourhood.
/// Voxels without any ROI neighbour are left out.
struct NgtdmTable {
    std::vector<double> count;  // n_i, index level - 1
    std::vector<double> diff;   // s_i
    double valid_voxels = 0;    // N_vp
};
NgtdmTable ngtdm_table(const DiscretizedRoi& roi);

// Feature computation from a single matrix/table. Names within each block
// are sorted.
FeatureVector glcm_features(const TextureMatrix& counts);
FeatureVector glrlm_features(const TextureMatrix& counts, double roi_voxels);
FeatureVector glszm_features(const TextureMatrix& counts, double roi_voxels);
FeatureVector gldm_features(const TextureMatrix& counts);
FeatureVector ngtdm_features(const NgtdmTable& table);

/// Direction-averaged features; directions with no pairs/runs are skipped
/// and DegenerateMatrixError is thrown when all are empty.
FeatureVector glcm(const DiscretizedRoi& roi, Execution exec = Execution::parallel);
FeatureVector glrlm(const DiscretizedRoi& roi, Execution exec = Execution::parallel);
FeatureVector glszm(const DiscretizedRoi& roi);
FeatureVector ngtdm(const DiscretizedRoi& roi);
FeatureVector gldm(const DiscretizedRoi& roi);

constexpr double kNgtdmCoarsenessCap = 1e6;

}  // namespace radiomark
