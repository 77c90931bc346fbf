#include "radiomark/features/texture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "radiomark/error.hpp"

namespace radiomark {

namespace {

double plogp(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

std::ptrdiff_t largest_axis(const Dims& d) {
    return static_cast<std::ptrdiff_t>(std::max({d.nx, d.ny, d.nz}));
}

constexpr std::array<Index3, 26> kNeighbours = [] {
    std::array<Index3, 26> out{};
    std::size_t k = 0;
    for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx)
                if (dx != 0 || dy != 0 || dz != 0) out[k++] = {dx, dy, dz};
    return out;
}();

/// Averages equally-shaped feature blocks entrywise, in block order.
FeatureVector average(const std::vector<std::optional<FeatureVector>>& blocks, const char* family) {
    std::vector<FeatureVector::Entry> sum;
    std::size_t used = 0;
    for (const auto& b : blocks) {
        if (!b) continue;
        if (sum.empty()) {
            sum = b->entries();
        } else {
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i].second += (*b)[i].second;
        }
        ++used;
    }
    if (used == 0) throw DegenerateMatrixError(std::string(family) + ": every direction yields an empty matrix");
    for (auto& e : sum) e.second /= static_cast<double>(used);
    return FeatureVector(std::move(sum));
}

// Shared statistics of the row-level / column-size matrices (GLRLM, GLSZM,
// GLDM). Column c carries size value c.
struct SizeZoneNames {
    const char* small_emphasis;
    const char* large_emphasis;
    const char* size_non_uniformity;
    const char* size_non_uniformity_normalized;
    const char* percentage;  // nullptr to omit
    const char* gray_level_non_uniformity_normalized;  // nullptr to omit
    const char* size_variance;
    const char* entropy;
    const char* low_gray_emphasis;
    const char* high_gray_emphasis;
    const char* small_low;
    const char* small_high;
    const char* large_low;
    const char* large_high;
};

FeatureVector size_zone_features(const TextureMatrix& counts, double roi_voxels, const SizeZoneNames& names) {
    const double total = counts.total();
    if (total <= 0) throw DegenerateMatrixError("empty size matrix");
    const int ng = counts.levels, nc = counts.columns;

    std::vector<double> row(static_cast<std::size_t>(ng), 0.0), col(static_cast<std::size_t>(nc), 0.0);
    for (int i = 1; i <= ng; ++i)
        for (int j = 1; j <= nc; ++j) {
            row[static_cast<std::size_t>(i - 1)] += counts(i, j);
            col[static_cast<std::size_t>(j - 1)] += counts(i, j);
        }

    double se = 0, le = 0, lgle = 0, hgle = 0, sl = 0, sh = 0, ll = 0, lh = 0, mu_i = 0, mu_j = 0, ent = 0;
    for (int i = 1; i <= ng; ++i)
        for (int j = 1; j <= nc; ++j) {
            const double p = counts(i, j) / total;
            if (p == 0) continue;
            const double i2 = static_cast<double>(i) * i, j2 = static_cast<double>(j) * j;
            se += p / j2;
            le += p * j2;
            lgle += p / i2;
            hgle += p * i2;
            sl += p / (i2 * j2);
            sh += p * i2 / j2;
            ll += p * j2 / i2;
            lh += p * i2 * j2;
            mu_i += p * i;
            mu_j += p * j;
            ent -= plogp(p);
        }
    double var_i = 0, var_j = 0;
    for (int i = 1; i <= ng; ++i)
        for (int j = 1; j <= nc; ++j) {
            const double p = counts(i, j) / total;
            if (p == 0) continue;
            var_i += p * (i - mu_i) * (i - mu_i);
            var_j += p * (j - mu_j) * (j - mu_j);
        }
    double gln = 0, sn = 0;
    for (double r : row) gln += r * r;
    for (double c : col) sn += c * c;

    FeatureVector f;
    f.add(names.small_emphasis, se);
    f.add(names.large_emphasis, le);
    f.add("gray_level_non_uniformity", gln / total);
    if (names.gray_level_non_uniformity_normalized)
        f.add(names.gray_level_non_uniformity_normalized, gln / (total * total));
    f.add(names.size_non_uniformity, sn / total);
    f.add(names.size_non_uniformity_normalized, sn / (total * total));
    if (names.percentage) f.add(names.percentage, total / roi_voxels);
    f.add("gray_level_variance", var_i);
    f.add(names.size_variance, var_j);
    f.add(names.entropy, ent);
    f.add(names.low_gray_emphasis, lgle);
    f.add(names.high_gray_emphasis, hgle);
    f.add(names.small_low, sl);
    f.add(names.small_high, sh);
    f.add(names.large_low, ll);
    f.add(names.large_high, lh);
    f.sort_by_name();
    return f;
}

constexpr SizeZoneNames kRunNames{"short_run_emphasis",
                                  "long_run_emphasis",
                                  "run_length_non_uniformity",
                                  "run_length_non_uniformity_normalized",
                                  "run_percentage",
                                  "gray_level_non_uniformity_normalized",
                                  "run_variance",
                                  "run_entropy",
                                  "low_gray_level_run_emphasis",
                                  "high_gray_level_run_emphasis",
                                  "short_run_low_gray_level_emphasis",
                                  "short_run_high_gray_level_emphasis",
                                  "long_run_low_gray_level_emphasis",
                                  "long_run_high_gray_level_emphasis"};

constexpr SizeZoneNames kZoneNames{"small_area_emphasis",
                                   "large_area_emphasis",
                                   "size_zone_non_uniformity",
                                   "size_zone_non_uniformity_normalized",
                                   "zone_percentage",
                                   "gray_level_non_uniformity_normalized",
                                   "zone_variance",
                                   "zone_entropy",
                                   "low_gray_level_zone_emphasis",
                                   "high_gray_level_zone_emphasis",
                                   "small_area_low_gray_level_emphasis",
                                   "small_area_high_gray_level_emphasis",
                                   "large_area_low_gray_level_emphasis",
                                   "large_area_high_gray_level_emphasis"};

constexpr SizeZoneNames kDependenceNames{"small_dependence_emphasis",
                                         "large_dependence_emphasis",
                                         "dependence_non_uniformity",
                                         "dependence_non_uniformity_normalized",
                                         nullptr,
                                         nullptr,
                                         "dependence_variance",
                                         "dependence_entropy",
                                         "low_gray_level_emphasis",
                                         "high_gray_level_emphasis",
                                         "small_dependence_low_gray_level_emphasis",
                                         "small_dependence_high_gray_level_emphasis",
                                         "large_dependence_low_gray_level_emphasis",
                                         "large_dependence_high_gray_level_emphasis"};

}  // namespace

double TextureMatrix::total() const { return std::accumulate(cells.begin(), cells.end(), 0.0); }

TextureMatrix TextureMatrix::normalized() const {
    const double t = total();
    if (t <= 0) throw DegenerateMatrixError("cannot normalise an empty texture matrix");
    TextureMatrix out = *this;
    for (double& c : out.cells) c /= t;
    return out;
}

const std::array<Index3, 13>& texture_directions() {
    static const std::array<Index3, 13> dirs{{{1, 0, 0},
                                              {0, 1, 0},
                                              {0, 0, 1},
                                              {1, 1, 0},
                                              {1, -1, 0},
                                              {1, 0, 1},
                                              {1, 0, -1},
                                              {0, 1, 1},
                                              {0, 1, -1},
                                              {1, 1, 1},
                                              {1, 1, -1},
                                              {1, -1, 1},
                                              {1, -1, -1}}};
    return dirs;
}

TextureMatrix glcm_matrix(const DiscretizedRoi& roi, const Index3& offset) {
    TextureMatrix m(TextureFamily::glcm, roi.bin_count, roi.bin_count);
    for (std::size_t k = 0; k < roi.coords.size(); ++k) {
        const Index3& c = roi.coords[k];
        const int b = roi.level_at(c.x + offset.x, c.y + offset.y, c.z + offset.z);
        if (b == 0) continue;
        const int a = roi.levels[k];
        m(a, b) += 1;
        m(b, a) += 1;
    }
    return m;
}

TextureMatrix glrlm_matrix(const DiscretizedRoi& roi, const Index3& d) {
    TextureMatrix m(TextureFamily::glrlm, roi.bin_count, static_cast<int>(largest_axis(roi.dims)));
    for (std::size_t k = 0; k < roi.coords.size(); ++k) {
        const Index3& c = roi.coords[k];
        const int level = roi.levels[k];
        if (roi.level_at(c.x - d.x, c.y - d.y, c.z - d.z) == level) continue;  // not a run start
        int length = 1;
        while (roi.level_at(c.x + length * d.x, c.y + length * d.y, c.z + length * d.z) == level) ++length;
        m(level, length) += 1;
    }
    return m;
}

TextureMatrix glszm_matrix(const DiscretizedRoi& roi) {
    std::vector<std::uint8_t> seen(roi.grid.size(), 0);
    const Dims& d = roi.dims;
    auto flat = [&](const Index3& c) {
        return static_cast<std::size_t>(c.x) +
               d.nx * (static_cast<std::size_t>(c.y) + d.ny * static_cast<std::size_t>(c.z));
    };
    std::vector<std::pair<int, int>> zones;  // (level, size)
    std::vector<Index3> stack;
    for (std::size_t k = 0; k < roi.coords.size(); ++k) {
        if (seen[flat(roi.coords[k])]) continue;
        const int level = roi.levels[k];
        int size = 0;
        stack.assign(1, roi.coords[k]);
        seen[flat(roi.coords[k])] = 1;
        while (!stack.empty()) {
            const Index3 c = stack.back();
            stack.pop_back();
            ++size;
            for (const Index3& o : kNeighbours) {
                const Index3 n{c.x + o.x, c.y + o.y, c.z + o.z};
                if (roi.level_at(n.x, n.y, n.z) != level || seen[flat(n)]) continue;
                seen[flat(n)] = 1;
                stack.push_back(n);
            }
        }
        zones.emplace_back(level, size);
    }
    int largest = 1;
    for (const auto& z : zones) largest = std::max(largest, z.second);
    TextureMatrix m(TextureFamily::glszm, roi.bin_count, largest);
    for (const auto& [level, size] : zones) m(level, size) += 1;
    return m;
}

TextureMatrix gldm_matrix(const DiscretizedRoi& roi) {
    TextureMatrix m(TextureFamily::gldm, roi.bin_count, 27);
    for (std::size_t k = 0; k < roi.coords.size(); ++k) {
        const Index3& c = roi.coords[k];
        const int level = roi.levels[k];
        int dependence = 1;
        for (const Index3& o : kNeighbours)
            if (roi.level_at(c.x + o.x, c.y + o.y, c.z + o.z) == level) ++dependence;
        m(level, dependence) += 1;
    }
    return m;
}

NgtdmTable ngtdm_table(const DiscretizedRoi& roi) {
    NgtdmTable t;
    t.count.assign(static_cast<std::size_t>(roi.bin_count), 0.0);
    t.diff.assign(static_cast<std::size_t>(roi.bin_count), 0.0);
    for (std::size_t k = 0; k < roi.coords.size(); ++k) {
        const Index3& c = roi.coords[k];
        int neighbours = 0, sum = 0;
        for (const Index3& o : kNeighbours) {
            const int l = roi.level_at(c.x + o.x, c.y + o.y, c.z + o.z);
            if (l == 0) continue;
            ++neighbours;
            sum += l;
        }
        if (neighbours == 0) continue;
        const auto i = static_cast<std::size_t>(roi.levels[k] - 1);
        t.count[i] += 1;
        t.diff[i] += std::fabs(roi.levels[k] - static_cast<double>(sum) / neighbours);
        t.valid_voxels += 1;
    }
    return t;
}

FeatureVector glcm_features(const TextureMatrix& counts) {
    const TextureMatrix p = counts.normalized();
    const int ng = p.levels;
    const auto n = static_cast<std::size_t>(ng);

    std::vector<double> px(n, 0.0), py(n, 0.0), psum(2 * n + 1, 0.0), pdiff(n, 0.0);
    for (int i = 1; i <= ng; ++i)
        for (int j = 1; j <= ng; ++j) {
            const double v = p(i, j);
            px[static_cast<std::size_t>(i - 1)] += v;
            py[static_cast<std::size_t>(j - 1)] += v;
            psum[static_cast<std::size_t>(i + j)] += v;
            pdiff[static_cast<std::size_t>(std::abs(i - j))] += v;
        }
    double mu_x = 0, mu_y = 0;
    for (int i = 1; i <= ng; ++i) {
        mu_x += i * px[static_cast<std::size_t>(i - 1)];
        mu_y += i * py[static_cast<std::size_t>(i - 1)];
    }
    double var_x = 0, var_y = 0;
    for (int i = 1; i <= ng; ++i) {
        var_x += (i - mu_x) * (i - mu_x) * px[static_cast<std::size_t>(i - 1)];
        var_y += (i - mu_y) * (i - mu_y) * py[static_cast<std::size_t>(i - 1)];
    }

    double autocorr = 0, prominence = 0, shade = 0, tendency = 0, contrast = 0, energy = 0, joint_entropy = 0;
    double id = 0, idm = 0, inv_var = 0, max_p = 0, hxy1 = 0, hxy2 = 0;
    for (int i = 1; i <= ng; ++i)
        for (int j = 1; j <= ng; ++j) {
            const double v = p(i, j);
            const double pxy = px[static_cast<std::size_t>(i - 1)] * py[static_cast<std::size_t>(j - 1)];
            hxy2 -= plogp(pxy);
            if (v == 0) continue;
            const double s = i + j - mu_x - mu_y;
            const double dd = static_cast<double>(i - j);
            autocorr += i * j * v;
            prominence += s * s * s * s * v;
            shade += s * s * s * v;
            tendency += s * s * v;
            contrast += dd * dd * v;
            energy += v * v;
            joint_entropy -= plogp(v);
            id += v / (1.0 + std::fabs(dd));
            idm += v / (1.0 + dd * dd);
            if (i != j) inv_var += v / (dd * dd);
            max_p = std::max(max_p, v);
            hxy1 -= v * std::log2(pxy);
        }
    double hx = 0, hy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        hx -= plogp(px[i]);
        hy -= plogp(py[i]);
    }
    double diff_avg = 0, diff_entropy = 0, sum_entropy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        diff_avg += static_cast<double>(k) * pdiff[k];
        diff_entropy -= plogp(pdiff[k]);
    }
    double diff_var = 0;
    for (std::size_t k = 0; k < n; ++k) diff_var += (k - diff_avg) * (k - diff_avg) * pdiff[k];
    for (double v : psum) sum_entropy -= plogp(v);

    const double sigma = std::sqrt(var_x * var_y);
    const double hmax = std::max(hx, hy);
    const double imc2_arg = 1.0 - std::exp(-2.0 * (hxy2 - joint_entropy));

    FeatureVector f;
    f.add("autocorrelation", autocorr);
    f.add("joint_average", mu_x);
    f.add("cluster_prominence", prominence);
    f.add("cluster_shade", shade);
    f.add("cluster_tendency", tendency);
    f.add("contrast", contrast);
    f.add("correlation", sigma > 0 ? (autocorr - mu_x * mu_y) / sigma : 1.0);
    f.add("difference_average", diff_avg);
    f.add("difference_entropy", diff_entropy);
    f.add("difference_variance", diff_var);
    f.add("joint_energy", energy);
    f.add("joint_entropy", joint_entropy);
    f.add("imc1", hmax > 0 ? (joint_entropy - hxy1) / hmax : 0.0);
    f.add("imc2", imc2_arg > 0 ? std::sqrt(imc2_arg) : 0.0);
    f.add("inverse_difference", id);
    f.add("inverse_difference_moment", idm);
    f.add("inverse_variance", inv_var);
    f.add("maximum_probability", max_p);
    f.add("sum_entropy", sum_entropy);
    f.sort_by_name();
    return f;
}

FeatureVector glrlm_features(const TextureMatrix& counts, double roi_voxels) {
    return size_zone_features(counts, roi_voxels, kRunNames);
}

FeatureVector glszm_features(const TextureMatrix& counts, double roi_voxels) {
    return size_zone_features(counts, roi_voxels, kZoneNames);
}

FeatureVector gldm_features(const TextureMatrix& counts) {
    return size_zone_features(counts, counts.total(), kDependenceNames);
}

FeatureVector ngtdm_features(const NgtdmTable& t) {
    if (t.valid_voxels <= 0) throw DegenerateMatrixError("ngtdm: no ROI voxel has an ROI neighbour");
    const std::size_t ng = t.count.size();
    std::vector<double> p(ng);
    for (std::size_t i = 0; i < ng; ++i) p[i] = t.count[i] / t.valid_voxels;

    double ps = 0, s_total = 0;
    int present = 0;
    for (std::size_t i = 0; i < ng; ++i) {
        ps += p[i] * t.diff[i];
        s_total += t.diff[i];
        present += p[i] > 0;
    }
    double contrast_sum = 0, busy_den = 0, complexity = 0, strength_num = 0;
    for (std::size_t i = 0; i < ng; ++i) {
        if (p[i] == 0) continue;
        const double li = static_cast<double>(i + 1);
        for (std::size_t j = 0; j < ng; ++j) {
            if (p[j] == 0) continue;
            const double lj = static_cast<double>(j + 1);
            const double d = li - lj;
            contrast_sum += p[i] * p[j] * d * d;
            busy_den += std::fabs(li * p[i] - lj * p[j]);
            complexity += std::fabs(d) * (p[i] * t.diff[i] + p[j] * t.diff[j]) / (p[i] + p[j]);
            strength_num += (p[i] + p[j]) * d * d;
        }
    }

    FeatureVector f;
    f.add("busyness", busy_den > 0 ? ps / busy_den : 0.0);
    f.add("coarseness", ps > 0 ? std::min(1.0 / ps, kNgtdmCoarsenessCap) : kNgtdmCoarsenessCap);
    f.add("complexity", complexity / t.valid_voxels);
    f.add("contrast", present > 1 ? contrast_sum / (present * (present - 1.0)) * s_total / t.valid_voxels : 0.0);
    f.add("strength", s_total > 0 ? strength_num / s_total : 0.0);
    f.sort_by_name();
    return f;
}

FeatureVector glcm(const DiscretizedRoi& roi, Execution exec) {
    const auto& dirs = texture_directions();
    std::vector<std::optional<FeatureVector>> blocks(dirs.size());
    const auto nd = static_cast<std::ptrdiff_t>(dirs.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (std::ptrdiff_t k = 0; k < nd; ++k) {
        const TextureMatrix m = glcm_matrix(roi, dirs[static_cast<std::size_t>(k)]);
        if (m.total() > 0) blocks[static_cast<std::size_t>(k)] = glcm_features(m);
    }
    return average(blocks, "glcm");
}

FeatureVector glrlm(const DiscretizedRoi& roi, Execution exec) {
    const auto& dirs = texture_directions();
    std::vector<std::optional<FeatureVector>> blocks(dirs.size());
    const auto nd = static_cast<std::ptrdiff_t>(dirs.size());
    const auto np = static_cast<double>(roi.coords.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (std::ptrdiff_t k = 0; k < nd; ++k) {
        const TextureMatrix m = glrlm_matrix(roi, dirs[static_cast<std::size_t>(k)]);
        if (m.total() > 0) blocks[static_cast<std::size_t>(k)] = glrlm_features(m, np);
    }
    return average(blocks, "glrlm");
}

FeatureVector glszm(const DiscretizedRoi& roi) {
    return glszm_features(glszm_matrix(roi), static_cast<double>(roi.coords.size()));
}

FeatureVector ngtdm(const DiscretizedRoi& roi) { return ngtdm_features(ngtdm_table(roi)); }

FeatureVector gldm(const DiscretizedRoi& roi) { return gldm_features(gldm_matrix(roi)); }

}  // namespace radiomark
