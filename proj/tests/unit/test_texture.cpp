#include <cmath>
#include <random>

#include "common.hpp"
#include "radiomark/error.hpp"
#include "radiomark/features/texture.hpp"

using namespace radiomark;

namespace {

void check_against(const FeatureVector& got, const oracle::Features& want, double tol = 1e-10) {
    REQUIRE(got.size() == want.size());
    for (const auto& [name, value] : got.entries()) {
        INFO(name);
        REQUIRE(want.count(name) == 1);
        CHECK(oracle::close(value, want.at(name), tol));
    }
}

DiscretizedRoi flat(std::size_t nx, std::size_t ny, std::size_t nz, int ng = 4) {
    const Dims d{nx, ny, nz};
    return oracle::roi_from_grid(d, std::vector<int>(d.count(), 1), ng);
}

// 90 degree rotation about z: (x, y) -> (ny - 1 - y, x).
DiscretizedRoi rotate_z(const DiscretizedRoi& roi) {
    const Dims& d = roi.dims;
    const Dims r{d.ny, d.nx, d.nz};
    std::vector<int> grid(r.count(), 0);
    for (std::size_t z = 0; z < d.nz; ++z)
        for (std::size_t y = 0; y < d.ny; ++y)
            for (std::size_t x = 0; x < d.nx; ++x)
                grid[(d.ny - 1 - y) + r.nx * (x + r.ny * z)] = roi.grid[x + d.nx * (y + d.ny * z)];
    return oracle::roi_from_grid(r, grid, roi.bin_count);
}

DiscretizedRoi pad(const DiscretizedRoi& roi, std::size_t px, std::size_t py, std::size_t pz) {
    const Dims& d = roi.dims;
    const Dims r{d.nx + px + 1, d.ny + py + 2, d.nz + pz};
    std::vector<int> grid(r.count(), 0);
    for (std::size_t z = 0; z < d.nz; ++z)
        for (std::size_t y = 0; y < d.ny; ++y)
            for (std::size_t x = 0; x < d.nx; ++x)
                grid[(x + px) + r.nx * ((y + py) + r.ny * (z + pz))] = roi.grid[x + d.nx * (y + d.ny * z)];
    return oracle::roi_from_grid(r, grid, roi.bin_count);
}

void check_same(const FeatureVector& a, const FeatureVector& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        INFO(a[i].first);
        CHECK(a[i].first == b[i].first);
        CHECK(oracle::close(a[i].second, b[i].second, tol));
    }
}

}  // namespace

TEST_SUITE("texture") {

TEST_CASE("thirteen unique directions") {
    const auto& dirs = texture_directions();
    const auto want = oracle::unique_offsets();
    REQUIRE(want.size() == 13);
    for (const auto& w : want) {
        bool found = false;
        for (const auto& d : dirs)
            found |= (d == w) || (d == Index3{-w.x, -w.y, -w.z});
        CHECK(found);
    }
}

TEST_CASE("random ROIs match brute-force oracles") {
    std::mt19937_64 rng(20240501);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<int> ng_pick(2, 8);
        const auto roi = oracle::random_roi(rng, 6, 6, 4, ng_pick(rng));
        CAPTURE(trial);
        // A lone voxel has no GLCM pair and no NGTDM neighbour.
        bool isolated_everywhere = true;
        for (const auto& d : texture_directions()) isolated_everywhere &= glcm_matrix(roi, d).total() == 0;
        if (!isolated_everywhere) check_against(glcm(roi, Execution::serial), oracle::glcm(roi));
        check_against(glrlm(roi, Execution::serial), oracle::glrlm(roi));
        check_against(glszm(roi), oracle::glszm(roi));
        check_against(gldm(roi), oracle::gldm(roi));
        if (ngtdm_table(roi).valid_voxels > 0) check_against(ngtdm(roi), oracle::ngtdm(roi));
    }
}

TEST_CASE("flat ROI glcm fallbacks") {
    const auto f = glcm(flat(3, 3, 3));
    CHECK(f.size() == 19);
    CHECK(f.at("maximum_probability") == 1.0);
    CHECK(f.at("joint_entropy") == 0.0);
    CHECK(f.at("contrast") == 0.0);
    CHECK(f.at("correlation") == 1.0);
    CHECK(f.at("imc1") == 0.0);
    CHECK(f.at("imc2") == 0.0);
}

TEST_CASE("2x2x1 glcm along x by pair enumeration") {
    // levels [[1,1],[1,2]] (row y = 0 first): pairs along x are (1,1) and (1,2).
    const auto roi = oracle::roi_from_grid(Dims{2, 2, 1}, {1, 1, 1, 2}, 2);
    const auto m = glcm_matrix(roi, Index3{1, 0, 0});
    CHECK(m(1, 1) == 2.0);
    CHECK(m(1, 2) == 1.0);
    CHECK(m(2, 1) == 1.0);
    CHECK(m(2, 2) == 0.0);
    check_against(glcm_features(m), oracle::glcm_direction(roi, Index3{1, 0, 0}));
    CHECK(glcm_features(m).at("contrast") == doctest::Approx(0.5));
}

TEST_CASE("gray-level reversal keeps contrast, entropy and energy") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto roi = oracle::random_roi(rng, 5, 5, 3, 6, 0.9);
        std::vector<int> rev = roi.grid;
        for (int& l : rev)
            if (l > 0) l = roi.bin_count + 1 - l;
        const auto r = oracle::roi_from_grid(roi.dims, rev, roi.bin_count);
        bool any = false;
        for (const auto& d : texture_directions()) any |= glcm_matrix(roi, d).total() > 0;
        if (!any) continue;
        const auto a = glcm(roi), b = glcm(r);
        for (const char* name : {"contrast", "joint_entropy", "joint_energy"})
            CHECK(oracle::close(a.at(name), b.at(name), 1e-12));
    }
}

TEST_CASE("flat 3x3x3 runs and zones") {
    const auto roi = flat(3, 3, 3);
    // Along x there are 9 runs of length 3; along a body diagonal, runs of
    // lengths 1, 2 and 3.
    const auto mx = glrlm_matrix(roi, Index3{1, 0, 0});
    CHECK(mx(1, 3) == 9.0);
    CHECK(mx.total() == 9.0);
    const auto md = glrlm_matrix(roi, Index3{1, 1, 1});
    CHECK(md(1, 3) == 1.0);
    CHECK(md(1, 1) + 2 * md(1, 2) + 3 * md(1, 3) == 27.0);
    check_against(glrlm(roi), oracle::glrlm(roi));

    const auto z = glszm_matrix(roi);
    CHECK(z.total() == 1.0);
    CHECK(z(1, 27) == 1.0);
}

TEST_CASE("flat ROI ngtdm") {
    const auto f = ngtdm(flat(3, 3, 3));
    CHECK(f.at("coarseness") == kNgtdmCoarsenessCap);
    CHECK(f.at("contrast") == 0.0);
    CHECK(f.at("busyness") == 0.0);
    CHECK(f.at("strength") == 0.0);
}

TEST_CASE("checkerboard dependence counts by neighbourhood scan") {
    std::vector<int> g(16);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) g[x + 4 * y] = 1 + (x + y) % 2;
    const auto roi = oracle::roi_from_grid(Dims{4, 4, 1}, g, 2);
    // In-plane diagonal neighbours share the level, so dependence is
    // 1 + number of diagonal neighbours inside the grid.
    const auto m = gldm_matrix(roi);
    CHECK(m(1, 2) + m(2, 2) == 4.0);  // corners have a single diagonal
    CHECK(m(1, 3) + m(2, 3) == 8.0);  // edges
    CHECK(m(1, 5) + m(2, 5) == 4.0);  // interior voxels
    check_against(gldm(roi), oracle::gldm(roi));
    // Face-neighbour-only zones would all be singletons; 26-connectivity joins diagonals.
    CHECK(glszm_matrix(roi).total() == 2.0);
}

TEST_CASE("normalised matrices sum to one") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto roi = oracle::random_roi(rng, 6, 6, 4, 8, 0.8);
        for (const auto& m : {glrlm_matrix(roi, Index3{1, 0, 0}), glszm_matrix(roi), gldm_matrix(roi)}) {
            double s = 0;
            for (double c : m.normalized().cells) {
                CHECK(c >= 0);
                s += c;
            }
            CHECK(std::fabs(s - 1) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(TextureMatrix(TextureFamily::glcm, 2, 2).normalized(), DegenerateMatrixError);
}

TEST_CASE("direction-averaged features are invariant to a 90 degree turn about z") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto roi = oracle::random_roi(rng, 6, 5, 4, 6, 0.85);
        const auto r = rotate_z(roi);
        check_same(glrlm(roi), glrlm(r), 1e-10);
        check_same(glszm(roi), glszm(r), 1e-10);
        check_same(gldm(roi), gldm(r), 1e-10);
        bool any = false;
        for (const auto& d : texture_directions()) any |= glcm_matrix(roi, d).total() > 0;
        if (any) check_same(glcm(roi), glcm(r), 1e-10);
        if (ngtdm_table(roi).valid_voxels > 0) check_same(ngtdm(roi), ngtdm(r), 1e-10);
    }
}

TEST_CASE("translation leaves texture unchanged") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto roi = oracle::random_roi(rng, 5, 5, 3, 5, 0.85);
        const auto t = pad(roi, 2, 1, 3);
        check_same(glrlm(roi), glrlm(t), 1e-12);
        check_same(glszm(roi), glszm(t), 1e-12);
        check_same(gldm(roi), gldm(t), 1e-12);
    }
}

TEST_CASE("degenerate inputs throw the matrix error") {
    const auto lone = oracle::roi_from_grid(Dims{3, 3, 3}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0,
                                                            0, 0, 0, 0, 0, 0, 0, 0, 0},
                                            4);
    CHECK_THROWS_AS(glcm(lone), DegenerateMatrixError);
    CHECK_THROWS_AS(ngtdm(lone), DegenerateMatrixError);
    CHECK(glszm(lone).at("zone_percentage") == 1.0);
}

TEST_CASE("serial and parallel direction loops agree exactly") {
    std::mt19937_64 rng(55);
    const auto roi = oracle::random_roi(rng, 6, 6, 4, 8, 0.9);
    CHECK(glcm(roi, Execution::serial) == glcm(roi, Execution::parallel));
    CHECK(glrlm(roi, Execution::serial) == glrlm(roi, Execution::parallel));
}

}  // TEST_SUITE
