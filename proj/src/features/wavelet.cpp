#include "radiomark/features/wavelet.hpp"

#include <array>
#include <cmath>

#include "radiomark/error.hpp"

namespace radiomark {

namespace {

enum class Band { low, high };

// Filters one axis: out[i] = (in[i] +/- in[i+1]) / sqrt(2), with in[n] = in[n-1].
std::vector<double> filter_axis(const std::vector<double>& in, const Dims& d, int axis, Band band, bool parallel) {
    const double g = 1.0 / std::sqrt(2.0);
    const double sign = band == Band::low ? 1.0 : -1.0;
    const std::size_t stride = axis == 0 ? 1 : axis == 1 ? d.nx : d.nx * d.ny;
    const std::size_t len = axis == 0 ? d.nx : axis == 1 ? d.ny : d.nz;
    std::vector<double> out(in.size());
    const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const std::size_t pos = (i / stride) % len;
        const double next = pos + 1 < len ? in[i + stride] : in[i];
        out[i] = g * (in[i] + sign * next);
    }
    return out;
}

}  // namespace

std::map<std::string, Volume> wavelet_subbands(const Volume& volume, Execution exec) {
    const Dims& d = volume.dims();
    if (d.nx < 2 || d.ny < 2 || d.nz < 2) throw DimsError("wavelet decomposition needs every axis of length >= 2");
    const bool parallel = exec == Execution::parallel;
    const std::vector<double> input(volume.voxels().begin(), volume.voxels().end());

    std::map<std::string, Volume> bands;
    for (Band bx : {Band::low, Band::high}) {
        const auto sx = filter_axis(input, d, 0, bx, parallel);
        for (Band by : {Band::low, Band::high}) {
            const auto sxy = filter_axis(sx, d, 1, by, parallel);
            for (Band bz : {Band::low, Band::high}) {
                auto sxyz = filter_axis(sxy, d, 2, bz, parallel);
                std::string name;
                for (Band b : {bx, by, bz}) name += b == Band::low ? 'L' : 'H';
                bands.emplace(name, Volume(d, volume.spacing(), std::move(sxyz)));
            }
        }
    }
    return bands;
}

}  // namespace radiomark
