#pragma once

#include <array>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "radiomark/imaging/volume.hpp"
#include "radiomark/parallel.hpp"

namespace radiomark {

struct PhantomSpec {
    Dims dims{32, 32, 16};
    Spacing spacing{1.0, 1.0, 1.0};
    double background_mean = 100.0;
    double noise_std = 10.0;
    std::array<double, 3> center{15.5, 15.5, 7.5};     // voxel coordinates
    std::array<double, 3> semi_axes{10.0, 9.0, 5.0};  // voxels
    double lesion_offset = 20.0;
    double correlation_length = 2.0;  // Gaussian smoothing sigma, voxels
    bool positive = false;
    std::uint64_t seed = 0;

    /// Throws ConfigError when the ellipsoid leaves the grid or values are invalid.
    void validate() const;
};

void to_json(nlohmann::json& j, const PhantomSpec& s);
void from_json(const nlohmann::json& j, PhantomSpec& s);

struct Phantom {
    Volume volume;
    RoiMask mask;
    int label = 0;
};

/// Ellipsoidal ROI over smoothed Gaussian noise. Positive phantoms carry a
/// lesion (half the ROI semi-axes, same centre) whose texture has half the
/// correlation length and whose mean is raised by lesion_offset. Noise is
/// counter-based per voxel, so the output depends only on the spec.
Phantom make_phantom(const PhantomSpec& spec, Execution exec = Execution::parallel);

/// Separable Gaussian smoothing with clamped edges; sigma in voxels
/// (sigma <= 0 returns the input).
std::vector<double> gaussian_smooth(const std::vector<double>& field, const Dims& dims, double sigma,
                                    Execution exec = Execution::parallel);

/// Standard normal deviate keyed by (seed, stream, index).
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

}  // namespace radiomark
