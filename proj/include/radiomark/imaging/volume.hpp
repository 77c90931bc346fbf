#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace radiomark {

struct Dims {
    std::size_t nx = 0, ny = 0, nz = 0;

    std::size_t count() const noexcept { return nx * ny * nz; }
    bool operator==(const Dims&) const = default;
};

/// Voxel size in millimetres.
struct Spacing {
    double sx = 1.0, sy = 1.0, sz = 1.0;

    double voxel_volume() const noexcept { return sx * sy * sz; }
    bool operator==(const Spacing&) const = default;
};

struct Index3 {
    std::ptrdiff_t x = 0, y = 0, z = 0;
    bool operator==(const Index3&) const = default;
};

/// Dense 3D scalar grid, x-fastest storage. Immutable once built.
class Volume {
public:
    Volume() = default;
    /// Throws DimsError on zero dims, non-positive spacing, or size mismatch,
    /// NonFiniteInputError on NaN/inf voxels.
    Volume(Dims dims, Spacing spacing, std::vector<double> voxels);
    /// Constant-valued volume.
    Volume(Dims dims, Spacing spacing, double value);

    const Dims& dims() const noexcept { return dims_; }
    const Spacing& spacing() const noexcept { return spacing_; }
    std::span<const double> voxels() const noexcept { return voxels_; }

    std::size_t index(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return x + dims_.nx * (y + dims_.ny * z);
    }
    double at(std::size_t x, std::size_t y, std::size_t z) const noexcept { return voxels_[index(x, y, z)]; }

private:
    Dims dims_;
    Spacing spacing_;
    std::vector<double> voxels_;
};

/// Binary region of interest aligned with a Volume.
class RoiMask {
public:
    RoiMask() = default;
    RoiMask(Dims dims, std::vector<std::uint8_t> flags);

    const Dims& dims() const noexcept { return dims_; }
    std::span<const std::uint8_t> flags() const noexcept { return flags_; }
    std::size_t roi_count() const noexcept { return roi_count_; }
    bool empty() const noexcept { return roi_count_ == 0; }

    bool contains(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return flags_[x + dims_.nx * (y + dims_.ny * z)] != 0;
    }
    bool contains(std::ptrdiff_t x, std::ptrdiff_t y, std::ptrdiff_t z) const noexcept;

private:
    Dims dims_;
    std::vector<std::uint8_t> flags_;
    std::size_t roi_count_ = 0;
};

/// ROI voxels mapped to integer gray levels 1..Ng.
struct DiscretizedRoi {
    Dims dims;                        // grid the coordinates live in
    std::vector<Index3> coords;       // ROI voxels in x-fastest scan order
    std::vector<int> levels;          // level per ROI voxel, parallel to coords
    std::vector<int> grid;            // dense level grid, 0 outside the ROI
    int bin_count = 0;
    std::vector<double> bin_edges;    // bin_count + 1 strictly increasing edges

    int level_at(std::ptrdiff_t x, std::ptrdiff_t y, std::ptrdiff_t z) const noexcept {
        if (x < 0 || y < 0 || z < 0 || x >= static_cast<std::ptrdiff_t>(dims.nx) ||
            y >= static_cast<std::ptrdiff_t>(dims.ny) || z >= static_cast<std::ptrdiff_t>(dims.nz))
            return 0;
        return grid[static_cast<std::size_t>(x) + dims.nx * (static_cast<std::size_t>(y) +
                                                             dims.ny * static_cast<std::size_t>(z))];
    }
};

/// Calendar date parsed from ISO-8601 "YYYY-MM-DD" (an optional "T..." suffix
/// is kept for ordering but not interpreted beyond lexical comparison).
struct VisitTime {
    int year = 0, month = 0, day = 0;
    std::string text;

    static VisitTime parse(const std::string& iso);

    auto operator<=>(const VisitTime& other) const noexcept {
        if (auto c = year <=> other.year; c != 0) return c;
        if (auto c = month <=> other.month; c != 0) return c;
        if (auto c = day <=> other.day; c != 0) return c;
        return text <=> other.text;
    }
    bool operator==(const VisitTime& other) const noexcept { return (*this <=> other) == 0; }
};

struct SequenceImage {
    Volume volume;
    RoiMask mask;
};

struct Study {
    std::string id;
    VisitTime visit_time;
    int label = 0;  // 1 = csPCa
    std::map<std::string, SequenceImage> sequences;

    /// Throws ConfigError when the study breaks its invariants.
    void validate() const;
};

}  // namespace radiomark
