#include "radiomark/imaging/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radiomark/error.hpp"

namespace radiomark {

namespace {

struct AxisSamples {
    std::vector<std::size_t> lo, hi, nearest;
    std::vector<double> frac;
};

// Output sample j of an axis maps to continuous input index
// u = (j + 0.5) * target / source - 0.5, clamped to [0, n - 1].
AxisSamples axis_samples(std::size_t n_in, double s_in, std::size_t n_out, double s_out) {
    AxisSamples a;
    a.lo.resize(n_out);
    a.hi.resize(n_out);
    a.nearest.resize(n_out);
    a.frac.resize(n_out);
    const double last = static_cast<double>(n_in - 1);
    const double ratio = s_out / s_in;
    for (std::size_t j = 0; j < n_out; ++j) {
        double u = (static_cast<double>(j) + 0.5) * ratio - 0.5;
        // Sample positions that should land on a voxel centre do so exactly.
        if (std::fabs(u - std::round(u)) <= 1e-12 * std::max(1.0, std::fabs(u))) u = std::round(u);
        u = std::clamp(u, 0.0, last);
        const double f = std::floor(u);
        a.lo[j] = static_cast<std::size_t>(f);
        a.hi[j] = std::min(a.lo[j] + 1, n_in - 1);
        a.frac[j] = u - f;
        a.nearest[j] = static_cast<std::size_t>(std::min(std::floor(u + 0.5), last));
    }
    return a;
}

std::size_t output_extent(std::size_t n, double s_in, double s_out) {
    const double cells = static_cast<double>(n) * s_in / s_out;
    // Guard against 2.0000000000000004 becoming 3 voxels.
    const double rounded = std::round(cells);
    if (std::fabs(cells - rounded) <= 1e-9 * std::max(1.0, cells)) return static_cast<std::size_t>(rounded);
    return static_cast<std::size_t>(std::ceil(cells));
}

}  // namespace

std::pair<Volume, RoiMask> resample(const Volume& volume, const RoiMask& mask, const Spacing& target,
                                    Execution exec) {
    if (!(target.sx > 0 && target.sy > 0 && target.sz > 0)) throw ConfigError("target spacing must be positive");
    if (!(volume.dims() == mask.dims())) throw DimsError("mask dims differ from volume dims");
    const Dims& in = volume.dims();
    const Spacing& sp = volume.spacing();
    const Dims out{output_extent(in.nx, sp.sx, target.sx), output_extent(in.ny, sp.sy, target.sy),
                   output_extent(in.nz, sp.sz, target.sz)};
    if (out.nx == 0 || out.ny == 0 || out.nz == 0) throw DimsError("resampled grid would be empty");

    const auto ax = axis_samples(in.nx, sp.sx, out.nx, target.sx);
    const auto ay = axis_samples(in.ny, sp.sy, out.ny, target.sy);
    const auto az = axis_samples(in.nz, sp.sz, out.nz, target.sz);

    std::vector<double> voxels(out.count());
    std::vector<std::uint8_t> flags(out.count());
    const auto nz = static_cast<std::ptrdiff_t>(out.nz);
    const bool parallel = exec == Execution::parallel;

#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t zi = 0; zi < nz; ++zi) {
        const auto z = static_cast<std::size_t>(zi);
        for (std::size_t y = 0; y < out.ny; ++y) {
            for (std::size_t x = 0; x < out.nx; ++x) {
                const double fx = ax.frac[x], fy = ay.frac[y], fz = az.frac[z];
                auto v = [&](std::size_t i, std::size_t j, std::size_t k) { return volume.at(i, j, k); };
                const double c00 = v(ax.lo[x], ay.lo[y], az.lo[z]) * (1 - fx) + v(ax.hi[x], ay.lo[y], az.lo[z]) * fx;
                const double c10 = v(ax.lo[x], ay.hi[y], az.lo[z]) * (1 - fx) + v(ax.hi[x], ay.hi[y], az.lo[z]) * fx;
                const double c01 = v(ax.lo[x], ay.lo[y], az.hi[z]) * (1 - fx) + v(ax.hi[x], ay.lo[y], az.hi[z]) * fx;
                const double c11 = v(ax.lo[x], ay.hi[y], az.hi[z]) * (1 - fx) + v(ax.hi[x], ay.hi[y], az.hi[z]) * fx;
                const double c0 = c00 * (1 - fy) + c10 * fy;
                const double c1 = c01 * (1 - fy) + c11 * fy;
                const std::size_t o = x + out.nx * (y + out.ny * z);
                voxels[o] = c0 * (1 - fz) + c1 * fz;
                flags[o] = mask.contains(ax.nearest[x], ay.nearest[y], az.nearest[z]) ? 1 : 0;
            }
        }
    }
    return {Volume(out, target, std::move(voxels)), RoiMask(out, std::move(flags))};
}

std::pair<Volume, RoiMask> crop_to_roi(const Volume& volume, const RoiMask& mask, std::size_t margin) {
    if (!(volume.dims() == mask.dims())) throw DimsError("mask dims differ from volume dims");
    if (mask.empty()) throw EmptyMaskError("cannot crop to an empty mask");
    const Dims& d = mask.dims();
    std::size_t lo[3] = {d.nx, d.ny, d.nz}, hi[3] = {0, 0, 0};
    for (std::size_t z = 0; z < d.nz; ++z)
        for (std::size_t y = 0; y < d.ny; ++y)
            for (std::size_t x = 0; x < d.nx; ++x)
                if (mask.contains(x, y, z)) {
                    const std::size_t c[3] = {x, y, z};
                    for (int a = 0; a < 3; ++a) {
                        lo[a] = std::min(lo[a], c[a]);
                        hi[a] = std::max(hi[a], c[a]);
                    }
                }
    const std::size_t n[3] = {d.nx, d.ny, d.nz};
    for (int a = 0; a < 3; ++a) {
        lo[a] = lo[a] > margin ? lo[a] - margin : 0;
        hi[a] = std::min(hi[a] + margin, n[a] - 1);
    }
    const Dims out{hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1};
    std::vector<double> voxels;
    std::vector<std::uint8_t> flags;
    voxels.reserve(out.count());
    flags.reserve(out.count());
    for (std::size_t z = lo[2]; z <= hi[2]; ++z)
        for (std::size_t y = lo[1]; y <= hi[1]; ++y)
            for (std::size_t x = lo[0]; x <= hi[0]; ++x) {
                voxels.push_back(volume.at(x, y, z));
                flags.push_back(mask.contains(x, y, z) ? 1 : 0);
            }
    return {Volume(out, volume.spacing(), std::move(voxels)), RoiMask(out, std::move(flags))};
}

DiscretizedRoi discretize(const Volume& volume, const RoiMask& mask, int bin_count) {
    if (bin_count < 2) throw ConfigError("bin count must be at least 2");
    if (!(volume.dims() == mask.dims())) throw DimsError("mask dims differ from volume dims");
    if (mask.empty()) throw EmptyMaskError("cannot discretize an empty ROI");

    const Dims& d = volume.dims();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < d.count(); ++i)
        if (mask.flags()[i]) {
            lo = std::min(lo, volume.voxels()[i]);
            hi = std::max(hi, volume.voxels()[i]);
        }

    DiscretizedRoi out;
    out.dims = d;
    out.bin_count = bin_count;
    out.grid.assign(d.count(), 0);
    out.coords.reserve(mask.roi_count());
    out.levels.reserve(mask.roi_count());
    const double range = hi - lo;
    out.bin_edges.resize(static_cast<std::size_t>(bin_count) + 1);
    for (int k = 0; k <= bin_count; ++k)
        out.bin_edges[static_cast<std::size_t>(k)] =
            range > 0 ? lo + range * k / bin_count : lo + static_cast<double>(k);

    for (std::size_t z = 0; z < d.nz; ++z)
        for (std::size_t y = 0; y < d.ny; ++y)
            for (std::size_t x = 0; x < d.nx; ++x) {
                const std::size_t i = volume.index(x, y, z);
                if (!mask.flags()[i]) continue;
                int level = 1;
                if (range > 0) {
                    const double t = std::floor((volume.voxels()[i] - lo) * bin_count / range);
                    level = std::min(static_cast<int>(t) + 1, bin_count);
                }
                out.coords.push_back({static_cast<std::ptrdiff_t>(x), static_cast<std::ptrdiff_t>(y),
                                      static_cast<std::ptrdiff_t>(z)});
                out.levels.push_back(level);
                out.grid[i] = level;
            }
    return out;
}

}  // namespace radiomark
