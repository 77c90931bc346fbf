#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Everything here is deliberately naive (pairwise scans, explicit
// enumeration, dense Newton steps) and shares no code with the library
// kernels it checks.

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "radiomark/imaging/volume.hpp"

namespace oracle {

using radiomark::DiscretizedRoi;
using radiomark::Index3;

using Features = std::map<std::string, double>;

/// Random ROI inside a grid of at most max_x by max_y by max_z voxels with
/// levels drawn from 1..ng. At least one voxel is always in the ROI.
DiscretizedRoi random_roi(std::mt19937_64& rng, int max_x, int max_y, int max_z, int ng, double fill = 0.7);

/// Builds a DiscretizedRoi from a dense level grid (0 = outside).
DiscretizedRoi roi_from_grid(const radiomark::Dims& dims, const std::vector<int>& levels, int ng);

Features glcm(const DiscretizedRoi& roi);   // averaged over the 13 directions, empty ones skipped
Features glcm_direction(const DiscretizedRoi& roi, const Index3& d);
Features glrlm(const DiscretizedRoi& roi);
Features glszm(const DiscretizedRoi& roi);
Features gldm(const DiscretizedRoi& roi);
Features ngtdm(const DiscretizedRoi& roi);

/// The 13 unique unit offsets, enumerated independently of the library.
std::vector<Index3> unique_offsets();

/// Relative comparison used throughout: |a - b| <= tol * max(1, |a|, |b|).
bool close(double a, double b, double tol);

// ROC / DeLong ---------------------------------------------------------------

double auc_pairs(std::span<const double> s, std::span<const int> y);  // O(n^2) pair count
double auc_sorted(std::span<const double> s, std::span<const int> y);  // sort-and-count, O(n log n)

struct DeLong {
    double difference = 0, variance = 0, z = 0, p = 1;
};
DeLong delong_pairs(std::span<const double> a, std::span<const double> b, std::span<const int> y);

/// Stratified bootstrap p-value for the paired AUC difference: the bootstrap
/// standard error of the difference plugged into a two-sided normal test.
double bootstrap_p(std::span<const double> a, std::span<const double> b, std::span<const int> y, int replicates,
                   std::uint64_t seed);

// Logistic regression ------------------------------------------------------

struct Mle {
    double intercept = 0;
    Eigen::VectorXd beta;
    bool converged = false;
};
/// Unpenalised logistic MLE by full Newton steps on (intercept, beta).
Mle newton_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

// NIfTI ----------------------------------------------------------------------

/// Writes a minimal single-file NIfTI-1 image (348-byte header, vox_offset 352).
/// datatype 4 int16, 16 float32, 64 float64, 512 uint16.
void write_nifti(const std::filesystem::path& path, int nx, int ny, int nz, float sx, float sy, float sz,
                 short datatype, const std::vector<double>& values, float slope = 0.f, float inter = 0.f,
                 bool gzip = false, bool big_endian = false, std::size_t drop_bytes = 0);

}  // namespace oracle
