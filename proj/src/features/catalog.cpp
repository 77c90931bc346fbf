#include "radiomark/features/catalog.hpp"

#include <algorithm>
#include <exception>
#include <map>

#include "radiomark/error.hpp"
#include "radiomark/features/first_order.hpp"
#include "radiomark/features/shape.hpp"
#include "radiomark/features/texture.hpp"
#include "radiomark/features/wavelet.hpp"
#include "radiomark/imaging/preprocess.hpp"

namespace radiomark {

namespace {

const std::vector<std::string> kImageClasses{"first_order", "glcm", "gldm", "glrlm", "glszm", "ngtdm"};

const std::map<std::string, std::vector<std::string>>& class_feature_names() {
    static const std::map<std::string, std::vector<std::string>> names = [] {
        std::map<std::string, std::vector<std::string>> m;
        m["shape"] = {"compactness2", "elongation", "flatness", "least_axis_length", "major_axis_length",
                      "maximum_3d_diameter", "sphericity", "surface_area", "surface_volume_ratio", "voxel_volume"};
        m["first_order"] = {"energy", "entropy", "interquartile_range", "kurtosis", "maximum", "mean",
                            "mean_absolute_deviation", "median", "minimum", "percentile_10", "percentile_90",
                            "range", "robust_mean_absolute_deviation", "root_mean_squared", "skewness",
                            "total_energy", "uniformity", "variance"};
        m["glcm"] = {"autocorrelation", "cluster_prominence", "cluster_shade", "cluster_tendency", "contrast",
                     "correlation", "difference_average", "difference_entropy", "difference_variance", "imc1",
                     "imc2", "inverse_difference", "inverse_difference_moment", "inverse_variance",
                     "joint_average", "joint_energy", "joint_entropy", "maximum_probability", "sum_entropy"};
        m["glrlm"] = {"gray_level_non_uniformity", "gray_level_non_uniformity_normalized", "gray_level_variance",
                      "high_gray_level_run_emphasis", "long_run_emphasis", "long_run_high_gray_level_emphasis",
                      "long_run_low_gray_level_emphasis", "low_gray_level_run_emphasis",
                      "run_entropy", "run_length_non_uniformity", "run_length_non_uniformity_normalized",
                      "run_percentage", "run_variance", "short_run_emphasis",
                      "short_run_high_gray_level_emphasis", "short_run_low_gray_level_emphasis"};
        m["glszm"] = {"gray_level_non_uniformity", "gray_level_non_uniformity_normalized", "gray_level_variance",
                      "high_gray_level_zone_emphasis", "large_area_emphasis", "large_area_high_gray_level_emphasis",
                      "large_area_low_gray_level_emphasis", "low_gray_level_zone_emphasis",
                      "size_zone_non_uniformity", "size_zone_non_uniformity_normalized", "small_area_emphasis",
                      "small_area_high_gray_level_emphasis", "small_area_low_gray_level_emphasis",
                      "zone_entropy", "zone_percentage", "zone_variance"};
        m["ngtdm"] = {"busyness", "coarseness", "complexity", "contrast", "strength"};
        m["gldm"] = {"dependence_entropy", "dependence_non_uniformity", "dependence_non_uniformity_normalized",
                     "dependence_variance", "gray_level_non_uniformity", "gray_level_variance",
                     "high_gray_level_emphasis", "large_dependence_emphasis",
                     "large_dependence_high_gray_level_emphasis", "large_dependence_low_gray_level_emphasis",
                     "low_gray_level_emphasis", "small_dependence_emphasis",
                     "small_dependence_high_gray_level_emphasis", "small_dependence_low_gray_level_emphasis"};
        return m;
    }();
    return names;
}

[[noreturn]] void rethrow_with_context(const std::string& context) {
    try {
        throw;
    } catch (const Error& e) {
        throw Error(e.kind(), context + ": " + e.what());
    }
}

}  // namespace

std::vector<std::string> FeatureCatalogConfig::filters() const {
    std::vector<std::string> out{"original"};
    if (wavelet)
        for (const char* band : {"LLL", "LLH", "LHL", "LHH", "HLL", "HLH", "HHL", "HHH"})
            out.push_back(std::string("wavelet_") + band);
    return out;
}

void FeatureCatalogConfig::validate() const {
    if (bin_count < 2) throw ConfigError("bin_count must be at least 2");
    const auto& known = class_feature_names();
    for (const auto& c : classes)
        if (!known.count(c)) throw ConfigError("unknown feature class '" + c + "'");
    if (resample_spacing && !(resample_spacing->sx > 0 && resample_spacing->sy > 0 && resample_spacing->sz > 0))
        throw ConfigError("resample spacing must be positive");
}

std::vector<std::string> FeatureCatalogConfig::sequence_feature_names() const {
    const auto& known = class_feature_names();
    std::vector<std::string> out;
    if (classes.count("shape"))
        for (const auto& n : known.at("shape")) out.push_back("original__shape__" + n);
    for (const auto& filter : filters())
        for (const auto& cls : kImageClasses)
            if (classes.count(cls))
                for (const auto& n : known.at(cls)) out.push_back(filter + "__" + cls + "__" + n);
    return out;
}

void to_json(nlohmann::json& j, const FeatureCatalogConfig& c) {
    j = nlohmann::json{{"wavelet", c.wavelet}, {"classes", c.classes}, {"bin_count", c.bin_count}};
    if (c.resample_spacing)
        j["resample_spacing"] = {c.resample_spacing->sx, c.resample_spacing->sy, c.resample_spacing->sz};
    else
        j["resample_spacing"] = nullptr;
}

void from_json(const nlohmann::json& j, FeatureCatalogConfig& c) {
    c = FeatureCatalogConfig{};
    if (j.contains("wavelet")) c.wavelet = j.at("wavelet").get<bool>();
    if (j.contains("classes")) c.classes = j.at("classes").get<std::set<std::string>>();
    if (j.contains("bin_count")) c.bin_count = j.at("bin_count").get<int>();
    if (j.contains("resample_spacing")) {
        const auto& s = j.at("resample_spacing");
        if (s.is_null()) {
            c.resample_spacing.reset();
        } else {
            const auto v = s.get<std::vector<double>>();
            if (v.size() != 3) throw ConfigError("resample_spacing needs three values");
            c.resample_spacing = Spacing{v[0], v[1], v[2]};
        }
    }
    c.validate();
}

FeatureVector extract_image(const Volume& volume, const RoiMask& mask, const std::string& filter,
                            const FeatureCatalogConfig& config, Execution exec) {
    FeatureVector out;
    auto emit = [&](const std::string& cls, const FeatureVector& block) {
        out.append(block, filter + "__" + cls + "__");
    };
    const DiscretizedRoi roi = discretize(volume, mask, config.bin_count);
    for (const auto& cls : kImageClasses) {
        if (!config.classes.count(cls)) continue;
        if (cls == "first_order") emit(cls, first_order(volume, mask, config.bin_count));
        else if (cls == "glcm") emit(cls, glcm(roi, exec));
        else if (cls == "gldm") emit(cls, gldm(roi));
        else if (cls == "glrlm") emit(cls, glrlm(roi, exec));
        else if (cls == "glszm") emit(cls, glszm(roi));
        else if (cls == "ngtdm") emit(cls, ngtdm(roi));
    }
    return out;
}

FeatureVector extract_study(const Study& study, const FeatureCatalogConfig& config, Execution exec) {
    config.validate();
    study.validate();
    FeatureVector row;
    for (const auto& [sequence, image] : study.sequences) {
        const std::string context = "study '" + study.id + "' sequence '" + sequence + "'";
        Volume volume;
        RoiMask mask;
        std::map<std::string, Volume> bands;
        try {
            if (image.mask.empty()) throw EmptyMaskError("ROI is empty");
            std::tie(volume, mask) = config.resample_spacing
                                         ? resample(image.volume, image.mask, *config.resample_spacing, exec)
                                         : std::pair{image.volume, image.mask};
            std::tie(volume, mask) = crop_to_roi(volume, mask, 1);
            if (config.classes.count("shape"))
                row.append(shape(mask, volume.spacing()), sequence + "__original__shape__");
            if (config.wavelet) bands = wavelet_subbands(volume, exec);
        } catch (...) {
            rethrow_with_context(context);
        }

        const auto filters = config.filters();
        std::vector<FeatureVector> blocks(filters.size());
        std::vector<std::exception_ptr> errors(filters.size());
        const auto nf = static_cast<std::ptrdiff_t>(filters.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
        for (std::ptrdiff_t k = 0; k < nf; ++k) {
            const auto i = static_cast<std::size_t>(k);
            try {
                const Volume& img = i == 0 ? volume : bands.at(filters[i].substr(8));
                blocks[i] = extract_image(img, mask, filters[i], config, Execution::serial);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (std::size_t i = 0; i < filters.size(); ++i) {
            if (errors[i]) {
                try {
                    std::rethrow_exception(errors[i]);
                } catch (...) {
                    rethrow_with_context(context + " filter '" + filters[i] + "'");
                }
            }
            row.append(blocks[i], sequence + "__");
        }
    }
    return row;
}

}  // namespace radiomark
