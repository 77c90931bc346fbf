#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace radiomark {

/// SplitMix64 finaliser; used to derive independent stream seeds from
/// (seed, counter) tuples so parallel generation never shares stream order.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

/// Portable random stream: MT19937-64 bits with explicitly specified
/// conversions (the standard distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer on [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Standard normal via the Box-Muller transform (cached pair).
    double normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace radiomark
