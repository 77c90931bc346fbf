#include "radiomark/imaging/volume.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "radiomark/error.hpp"

namespace radiomark {

namespace {

void check_dims(const Dims& dims) {
    if (dims.nx == 0 || dims.ny == 0 || dims.nz == 0)
        throw DimsError("volume dims must be positive");
}

}  // namespace

Volume::Volume(Dims dims, Spacing spacing, std::vector<double> voxels)
    : dims_(dims), spacing_(spacing), voxels_(std::move(voxels)) {
    check_dims(dims_);
    if (!(spacing_.sx > 0 && spacing_.sy > 0 && spacing_.sz > 0))
        throw DimsError("voxel spacing must be positive");
    if (voxels_.size() != dims_.count())
        throw DimsError("voxel count " + std::to_string(voxels_.size()) + " does not match dims product " +
                        std::to_string(dims_.count()));
    for (double v : voxels_)
        if (!std::isfinite(v)) throw NonFiniteInputError("volume contains a non-finite voxel");
}

Volume::Volume(Dims dims, Spacing spacing, double value)
    : Volume(dims, spacing, std::vector<double>(dims.count(), value)) {}

RoiMask::RoiMask(Dims dims, std::vector<std::uint8_t> flags) : dims_(dims), flags_(std::move(flags)) {
    check_dims(dims_);
    if (flags_.size() != dims_.count()) throw DimsError("mask size does not match dims product");
    for (auto& f : flags_) {
        f = f != 0 ? 1 : 0;
        roi_count_ += f;
    }
}

bool RoiMask::contains(std::ptrdiff_t x, std::ptrdiff_t y, std::ptrdiff_t z) const noexcept {
    if (x < 0 || y < 0 || z < 0) return false;
    if (x >= static_cast<std::ptrdiff_t>(dims_.nx) || y >= static_cast<std::ptrdiff_t>(dims_.ny) ||
        z >= static_cast<std::ptrdiff_t>(dims_.nz))
        return false;
    return contains(static_cast<std::size_t>(x), static_cast<std::size_t>(y), static_cast<std::size_t>(z));
}

VisitTime VisitTime::parse(const std::string& iso) {
    VisitTime t;
    int consumed = 0;
    if (iso.size() < 10 || std::sscanf(iso.c_str(), "%4d-%2d-%2d%n", &t.year, &t.month, &t.day, &consumed) != 3 ||
        consumed != 10)
        throw ConfigError("visit time '" + iso + "' is not an ISO-8601 date");
    const std::chrono::year_month_day ymd{std::chrono::year{t.year}, std::chrono::month{static_cast<unsigned>(t.month)},
                                          std::chrono::day{static_cast<unsigned>(t.day)}};
    if (!ymd.ok()) throw ConfigError("visit time '" + iso + "' is not a valid calendar date");
    if (iso.size() > 10 && iso[10] != 'T' && iso[10] != ' ')
        throw ConfigError("visit time '" + iso + "' has trailing garbage");
    t.text = iso;
    return t;
}

void Study::validate() const {
    if (sequences.empty()) throw ConfigError("study '" + id + "' has no sequences");
    if (label != 0 && label != 1) throw ConfigError("study '" + id + "' label must be 0 or 1");
    for (const auto& [name, image] : sequences)
        if (!(image.volume.dims() == image.mask.dims()))
            throw DimsError("study '" + id + "' sequence '" + name + "': mask dims differ from volume dims");
}

}  // namespace radiomark
