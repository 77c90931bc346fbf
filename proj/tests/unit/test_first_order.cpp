#include <cmath>
#include <random>

#include "common.hpp"
#include "radiomark/error.hpp"
#include "radiomark/features/first_order.hpp"

using namespace radiomark;

namespace {

FeatureVector fo(const std::vector<double>& vals, int bins = 8, Spacing s = {}) {
    const Dims d{vals.size(), 1, 1};
    return first_order(Volume(d, s, vals), RoiMask(d, std::vector<std::uint8_t>(vals.size(), 1)), bins);
}

}  // namespace

TEST_SUITE("first_order") {

TEST_CASE("eighteen sorted names") {
    const auto f = fo({1, 2, 3, 4});
    CHECK(f.size() == 18);
    const auto names = f.names();
    CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("constant ROI") {
    const auto f = fo(std::vector<double>(10, 5.0));
    CHECK(f.at("mean") == 5.0);
    CHECK(f.at("variance") == 0.0);
    CHECK(f.at("entropy") == 0.0);
    CHECK(f.at("uniformity") == 1.0);
    CHECK(f.at("skewness") == 0.0);
    CHECK(f.at("kurtosis") == 0.0);
    CHECK(f.at("range") == 0.0);
}

TEST_CASE("hand-computed values for 1..4") {
    const auto f = fo({1, 2, 3, 4}, 4, Spacing{1, 1, 2});
    CHECK(f.at("mean") == 2.5);
    CHECK(f.at("range") == 3.0);
    CHECK(f.at("variance") == 1.25);
    CHECK(f.at("minimum") == 1.0);
    CHECK(f.at("maximum") == 4.0);
    CHECK(f.at("median") == 2.5);
    CHECK(f.at("energy") == 30.0);
    CHECK(f.at("total_energy") == 60.0);
    CHECK(f.at("root_mean_squared") == doctest::Approx(std::sqrt(7.5)));
    CHECK(f.at("mean_absolute_deviation") == 1.0);
    // numpy-style linear percentiles: h = q * (n - 1)
    CHECK(f.at("percentile_10") == doctest::Approx(1.3));
    CHECK(f.at("percentile_90") == doctest::Approx(3.7));
    CHECK(f.at("interquartile_range") == doctest::Approx(3.25 - 1.75));
    CHECK(f.at("skewness") == doctest::Approx(0.0));
    CHECK(f.at("kurtosis") == doctest::Approx((0.5 * (2.25 * 2.25 + 0.25 * 0.25)) / (1.25 * 1.25)));
    // four values in four bins: every bin once
    CHECK(f.at("entropy") == doctest::Approx(2.0));
    CHECK(f.at("uniformity") == doctest::Approx(0.25));
    // robust MAD over [1.3, 3.7] keeps {2, 3}
    CHECK(f.at("robust_mean_absolute_deviation") == doctest::Approx(0.5));
}

TEST_CASE("homogeneity under positive scaling") {
    std::mt19937_64 rng(5);
    std::gamma_distribution<double> g(2.0, 3.0);
    std::vector<double> v(200);
    for (auto& x : v) x = g(rng);
    std::vector<double> w = v;
    const double a = 3.7;
    for (auto& x : w) x *= a;
    const auto f = fo(v, 16), h = fo(w, 16);
    CHECK(h.at("mean") == doctest::Approx(a * f.at("mean")).epsilon(1e-12));
    CHECK(h.at("root_mean_squared") == doctest::Approx(a * f.at("root_mean_squared")).epsilon(1e-12));
    CHECK(h.at("mean_absolute_deviation") == doctest::Approx(a * f.at("mean_absolute_deviation")).epsilon(1e-12));
    CHECK(h.at("variance") == doctest::Approx(a * a * f.at("variance")).epsilon(1e-12));
    CHECK(h.at("entropy") == f.at("entropy"));
    CHECK(h.at("skewness") == doctest::Approx(f.at("skewness")).epsilon(1e-10));
}

TEST_CASE("skewed sample moments") {
    const auto f = fo({0, 0, 0, 1});
    // mean 1/4, m2 = 3/16, m3 = 3 * (-1/4)^3 / 4 + (3/4)^3 / 4
    const double m2 = 3.0 / 16, m3 = (3 * std::pow(-0.25, 3) + std::pow(0.75, 3)) / 4,
                 m4 = (3 * std::pow(0.25, 4) + std::pow(0.75, 4)) / 4;
    CHECK(f.at("skewness") == doctest::Approx(m3 / std::pow(m2, 1.5)));
    CHECK(f.at("kurtosis") == doctest::Approx(m4 / (m2 * m2)));
}

TEST_CASE("preconditions") {
    const Dims d{2, 1, 1};
    CHECK_THROWS_AS(first_order(Volume(d, Spacing{}, 1.0), RoiMask(d, {0, 0}), 8), EmptyMaskError);
    CHECK_THROWS_AS(first_order(Volume(d, Spacing{}, 1.0), RoiMask(Dims{1, 2, 1}, {1, 1}), 8), DimsError);
}

}  // TEST_SUITE
