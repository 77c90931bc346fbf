#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiomark/features/feature_vector.hpp"
#include "radiomark/imaging/volume.hpp"
#include "radiomark/parallel.hpp"

namespace radiomark {

struct FeatureCatalogConfig {
    bool wavelet = true;  // add the 8 Haar sub-bands to the original image
    std::set<std::string> classes{"first_order", "glcm", "gldm", "glrlm", "glszm", "ngtdm", "shape"};
    int bin_count = 32;
    std::optional<Spacing> resample_spacing = Spacing{1.0, 1.0, 1.0};

    /// Filter image names in extraction order: "original" then sub-bands.
    std::vector<std::string> filters() const;
    /// Per-sequence column names (without the sequence prefix), in row order.
    /// Pure function of the config.
    std::vector<std::string> sequence_feature_names() const;
    /// Throws ConfigError on unknown classes or bin_count < 2.
    void validate() const;
};

void to_json(nlohmann::json& j, const FeatureCatalogConfig& c);
void from_json(const nlohmann::json& j, FeatureCatalogConfig& c);

constexpr std::size_t kShapeFeatureCount = 10;
constexpr std::size_t kFirstOrderFeatureCount = 18;
constexpr std::size_t kGlcmFeatureCount = 19;
constexpr std::size_t kGlrlmFeatureCount = 16;
constexpr std::size_t kGlszmFeatureCount = 16;
constexpr std::size_t kNgtdmFeatureCount = 5;
constexpr std::size_t kGldmFeatureCount = 14;

/// Features of one image pair (already preprocessed) for a single filter:
/// `<filter>__<class>__<feature>` columns, without shape.
FeatureVector extract_image(const Volume& volume, const RoiMask& mask, const std::string& filter,
                            const FeatureCatalogConfig& config, Execution exec = Execution::parallel);

/// Full feature row of a study. Sequences are processed in name order; for
/// each, the image is resampled (when configured) and cropped to the ROI
/// with a one-voxel margin, shape is computed once, then every filter image
/// contributes first-order and texture blocks. Column names are
/// `<sequence>__<filter>__<class>__<feature>`. Errors are rethrown with the
/// sequence/filter context prepended.
FeatureVector extract_study(const Study& study, const FeatureCatalogConfig& config,
                            Execution exec = Execution::parallel);

}  // namespace radiomark
