#include "radiomark/synth/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radiomark/error.hpp"
#include "radiomark/random.hpp"

namespace radiomark {

using nlohmann::json;

namespace {

constexpr std::uint64_t kBackgroundStream = 1;
constexpr std::uint64_t kLesionStream = 2;

double ellipsoid_radius(const std::array<double, 3>& c, const std::array<double, 3>& a, std::size_t x,
                        std::size_t y, std::size_t z) {
    const double dx = (static_cast<double>(x) - c[0]) / a[0];
    const double dy = (static_cast<double>(y) - c[1]) / a[1];
    const double dz = (static_cast<double>(z) - c[2]) / a[2];
    return dx * dx + dy * dy + dz * dz;
}

/// Counter-based noise smoothed and rescaled to unit empirical std.
std::vector<double> unit_texture(const Dims& d, std::uint64_t seed, std::uint64_t stream, double sigma,
                                 Execution exec) {
    std::vector<double> field(d.count());
    const auto n = static_cast<std::ptrdiff_t>(field.size());
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        field[static_cast<std::size_t>(i)] = counter_normal(seed, stream, static_cast<std::uint64_t>(i));
    field = gaussian_smooth(field, d, sigma, exec);
    double mean = 0;
    for (double v : field) mean += v;
    mean /= static_cast<double>(field.size());
    double ss = 0;
    for (double v : field) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(field.size()));
    for (double& v : field) v = sd > 0 ? (v - mean) / sd : 0.0;
    return field;
}

}  // namespace

double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    const std::uint64_t key = derive_seed(seed, stream, index);
    const double u1 = (static_cast<double>(splitmix64(key) >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(splitmix64(key ^ 0xa5a5a5a5a5a5a5a5ULL) >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> gaussian_smooth(const std::vector<double>& field, const Dims& d, double sigma, Execution exec) {
    if (sigma <= 0) return field;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double total = 0;
    for (int k = -radius; k <= radius; ++k) {
        kernel[static_cast<std::size_t>(k + radius)] = std::exp(-0.5 * k * k / (sigma * sigma));
        total += kernel[static_cast<std::size_t>(k + radius)];
    }
    for (double& k : kernel) k /= total;

    std::vector<double> cur = field, next(field.size());
    const std::size_t lens[3] = {d.nx, d.ny, d.nz};
    const std::size_t strides[3] = {1, d.nx, d.nx * d.ny};
    for (int axis = 0; axis < 3; ++axis) {
        const auto len = static_cast<std::ptrdiff_t>(lens[axis]);
        const std::size_t stride = strides[axis];
        const auto n = static_cast<std::ptrdiff_t>(cur.size());
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
        for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            const auto pos = static_cast<std::ptrdiff_t>((i / stride) % lens[axis]);
            const std::size_t base = i - static_cast<std::size_t>(pos) * stride;
            double acc = 0;
            for (int k = -radius; k <= radius; ++k) {
                const std::ptrdiff_t q = std::clamp<std::ptrdiff_t>(pos + k, 0, len - 1);
                acc += kernel[static_cast<std::size_t>(k + radius)] * cur[base + static_cast<std::size_t>(q) * stride];
            }
            next[i] = acc;
        }
        std::swap(cur, next);
    }
    return cur;
}

void PhantomSpec::validate() const {
    if (dims.nx == 0 || dims.ny == 0 || dims.nz == 0) throw ConfigError("phantom dims must be positive");
    if (!(spacing.sx > 0 && spacing.sy > 0 && spacing.sz > 0)) throw ConfigError("phantom spacing must be positive");
    if (!(noise_std >= 0) || !(correlation_length >= 0)) throw ConfigError("phantom noise parameters must be >= 0");
    const std::size_t n[3] = {dims.nx, dims.ny, dims.nz};
    for (int a = 0; a < 3; ++a) {
        if (!(semi_axes[a] > 0)) throw ConfigError("phantom semi-axes must be positive");
        if (center[a] - semi_axes[a] < 0 || center[a] + semi_axes[a] > static_cast<double>(n[a] - 1))
            throw ConfigError("phantom ellipsoid exceeds the grid along axis " + std::to_string(a));
    }
}

void to_json(json& j, const PhantomSpec& s) {
    j = json{{"dims", {s.dims.nx, s.dims.ny, s.dims.nz}},
             {"spacing", {s.spacing.sx, s.spacing.sy, s.spacing.sz}},
             {"background_mean", s.background_mean},
             {"noise_std", s.noise_std},
             {"center", s.center},
             {"semi_axes", s.semi_axes},
             {"lesion_offset", s.lesion_offset},
             {"correlation_length", s.correlation_length},
             {"positive", s.positive},
             {"seed", s.seed}};
}

void from_json(const json& j, PhantomSpec& s) {
    s = PhantomSpec{};
    if (j.contains("dims")) {
        const auto d = j.at("dims").get<std::vector<std::size_t>>();
        if (d.size() != 3) throw ConfigError("phantom dims need three values");
        s.dims = {d[0], d[1], d[2]};
    }
    if (j.contains("spacing")) {
        const auto v = j.at("spacing").get<std::vector<double>>();
        if (v.size() != 3) throw ConfigError("phantom spacing needs three values");
        s.spacing = {v[0], v[1], v[2]};
    }
    if (j.contains("background_mean")) j.at("background_mean").get_to(s.background_mean);
    if (j.contains("noise_std")) j.at("noise_std").get_to(s.noise_std);
    if (j.contains("center")) j.at("center").get_to(s.center);
    if (j.contains("semi_axes")) j.at("semi_axes").get_to(s.semi_axes);
    if (j.contains("lesion_offset")) j.at("lesion_offset").get_to(s.lesion_offset);
    if (j.contains("correlation_length")) j.at("correlation_length").get_to(s.correlation_length);
    if (j.contains("positive")) j.at("positive").get_to(s.positive);
    if (j.contains("seed")) j.at("seed").get_to(s.seed);
    s.validate();
}

Phantom make_phantom(const PhantomSpec& spec, Execution exec) {
    spec.validate();
    const Dims& d = spec.dims;
    const std::vector<double> background = unit_texture(d, spec.seed, kBackgroundStream, spec.correlation_length, exec);
    std::vector<double> lesion;
    if (spec.positive) lesion = unit_texture(d, spec.seed, kLesionStream, spec.correlation_length / 2, exec);

    const std::array<double, 3> lesion_axes{spec.semi_axes[0] / 2, spec.semi_axes[1] / 2, spec.semi_axes[2] / 2};
    std::vector<double> voxels(d.count());
    std::vector<std::uint8_t> flags(d.count());
    for (std::size_t z = 0; z < d.nz; ++z)
        for (std::size_t y = 0; y < d.ny; ++y)
            for (std::size_t x = 0; x < d.nx; ++x) {
                const std::size_t i = x + d.nx * (y + d.ny * z);
                flags[i] = ellipsoid_radius(spec.center, spec.semi_axes, x, y, z) <= 1.0;
                const bool in_lesion =
                    spec.positive && ellipsoid_radius(spec.center, lesion_axes, x, y, z) <= 1.0;
                voxels[i] = in_lesion ? spec.background_mean + spec.lesion_offset + spec.noise_std * lesion[i]
                                      : spec.background_mean + spec.noise_std * background[i];
            }
    return {Volume(d, spec.spacing, std::move(voxels)), RoiMask(d, std::move(flags)), spec.positive ? 1 : 0};
}

}  // namespace radiomark
