#include "radiomark/features/shape.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "radiomark/error.hpp"

namespace radiomark {

FeatureVector shape(const RoiMask& mask, const Spacing& spacing) {
    if (mask.empty()) throw EmptyMaskError("shape features need a non-empty ROI");
    const Dims& d = mask.dims();
    const double face_x = spacing.sy * spacing.sz;
    const double face_y = spacing.sx * spacing.sz;
    const double face_z = spacing.sx * spacing.sy;

    double area = 0;
    std::vector<Eigen::Vector3d> centres;
    std::vector<Eigen::Vector3d> boundary;
    centres.reserve(mask.roi_count());
    for (std::size_t z = 0; z < d.nz; ++z)
        for (std::size_t y = 0; y < d.ny; ++y)
            for (std::size_t x = 0; x < d.nx; ++x) {
                if (!mask.contains(x, y, z)) continue;
                const auto sx = static_cast<std::ptrdiff_t>(x), sy = static_cast<std::ptrdiff_t>(y),
                           sz = static_cast<std::ptrdiff_t>(z);
                double exposed = 0;
                exposed += (!mask.contains(sx - 1, sy, sz) + !mask.contains(sx + 1, sy, sz)) * face_x;
                exposed += (!mask.contains(sx, sy - 1, sz) + !mask.contains(sx, sy + 1, sz)) * face_y;
                exposed += (!mask.contains(sx, sy, sz - 1) + !mask.contains(sx, sy, sz + 1)) * face_z;
                area += exposed;
                const Eigen::Vector3d c(static_cast<double>(x) * spacing.sx, static_cast<double>(y) * spacing.sy,
                                        static_cast<double>(z) * spacing.sz);
                centres.push_back(c);
                // Extreme points of the ROI always have an exposed face.
                if (exposed > 0) boundary.push_back(c);
            }

    const double n = static_cast<double>(centres.size());
    const double volume = n * spacing.voxel_volume();

    double diameter_sq = 0;
    const auto nb = static_cast<std::ptrdiff_t>(boundary.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(max : diameter_sq)
    for (std::ptrdiff_t i = 0; i < nb; ++i)
        for (std::ptrdiff_t j = i + 1; j < nb; ++j)
            diameter_sq = std::max(diameter_sq, (boundary[static_cast<std::size_t>(i)] -
                                                 boundary[static_cast<std::size_t>(j)]).squaredNorm());

    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& c : centres) mean += c;
    mean /= n;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& c : centres) cov += (c - mean) * (c - mean).transpose();
    cov /= n;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov, Eigen::EigenvaluesOnly);
    // Ascending order; clamp round-off negatives.
    const double l3 = std::max(eig.eigenvalues()(0), 0.0);
    const double l2 = std::max(eig.eigenvalues()(1), 0.0);
    const double l1 = std::max(eig.eigenvalues()(2), 0.0);

    FeatureVector f;
    f.add("compactness2", 36.0 * std::numbers::pi * volume * volume / (area * area * area));
    f.add("elongation", l1 > 0 ? std::sqrt(l2 / l1) : 1.0);
    f.add("flatness", l1 > 0 ? std::sqrt(l3 / l1) : 1.0);
    f.add("least_axis_length", 4.0 * std::sqrt(l3));
    f.add("major_axis_length", 4.0 * std::sqrt(l1));
    f.add("maximum_3d_diameter", std::sqrt(diameter_sq));
    f.add("sphericity", std::cbrt(std::numbers::pi) * std::pow(6.0 * volume, 2.0 / 3.0) / area);
    f.add("surface_area", area);
    f.add("surface_volume_ratio", area / volume);
    f.add("voxel_volume", volume);
    f.sort_by_name();
    return f;
}

}  // namespace radiomark
