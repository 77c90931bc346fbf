#include <algorithm>
#include <set>

#include "common.hpp"
#include "radiomark/error.hpp"
#include "radiomark/features/catalog.hpp"
#include "radiomark/synth/phantom.hpp"

using namespace radiomark;

namespace {

PhantomSpec small_spec(std::uint64_t seed, bool positive) {
    PhantomSpec s;
    s.dims = Dims{20, 20, 10};
    s.center = {9.5, 9.5, 4.5};
    s.semi_axes = {6.0, 5.0, 3.0};
    s.positive = positive;
    s.seed = seed;
    return s;
}

Study two_sequence_study() {
    Study st;
    st.id = "p1";
    st.visit_time = VisitTime::parse("2019-03-04");
    st.label = 1;
    auto a = make_phantom(small_spec(1, true));
    auto b = make_phantom(small_spec(2, true));
    st.sequences["t2w"] = SequenceImage{a.volume, a.mask};
    st.sequences["adc"] = SequenceImage{b.volume, b.mask};
    return st;
}

// Embeds an image in a larger grid filled with `fill`.
SequenceImage embed(const SequenceImage& im, std::size_t ox, std::size_t oy, std::size_t oz, double fill) {
    const Dims& d = im.volume.dims();
    const Dims big{d.nx + ox + 3, d.ny + oy + 2, d.nz + oz + 1};
    std::vector<double> v(big.count(), fill);
    std::vector<std::uint8_t> m(big.count(), 0);
    for (std::size_t z = 0; z < d.nz; ++z)
        for (std::size_t y = 0; y < d.ny; ++y)
            for (std::size_t x = 0; x < d.nx; ++x) {
                const std::size_t o = (x + ox) + big.nx * ((y + oy) + big.ny * (z + oz));
                v[o] = im.volume.at(x, y, z);
                m[o] = im.mask.contains(x, y, z) ? 1 : 0;
            }
    return SequenceImage{Volume(big, im.volume.spacing(), std::move(v)), RoiMask(big, std::move(m))};
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("full catalog has 1604 columns for two sequences") {
    FeatureCatalogConfig c;
    CHECK(c.filters().size() == 9);
    CHECK(c.sequence_feature_names().size() == 802);
    const auto row = extract_study(two_sequence_study(), c);
    CHECK(row.size() == 1604);
    for (double v : row.values()) CHECK(std::isfinite(v));
}

TEST_CASE("original-only catalog has 98 columns per sequence") {
    FeatureCatalogConfig c;
    c.wavelet = false;
    CHECK(c.sequence_feature_names().size() == 98);
    Study st = two_sequence_study();
    st.sequences.erase("adc");
    CHECK(extract_study(st, c).size() == 98);
}

TEST_CASE("declared names match extracted names in order") {
    for (bool wavelet : {false, true}) {
        FeatureCatalogConfig c;
        c.wavelet = wavelet;
        c.classes = {"first_order", "glszm", "shape"};
        const auto row = extract_study(two_sequence_study(), c);
        std::vector<std::string> want;
        for (const std::string seq : {"adc", "t2w"})
            for (const auto& n : c.sequence_feature_names()) want.push_back(seq + "__" + n);
        CHECK(row.names() == want);
        const std::set<std::string> unique(want.begin(), want.end());
        CHECK(unique.size() == want.size());
    }
}

TEST_CASE("extraction ignores padding outside the ROI") {
    FeatureCatalogConfig c;
    const Study st = two_sequence_study();
    Study padded = st;
    for (auto& [name, im] : padded.sequences) im = embed(im, 4, 3, 2, -50.0);
    const auto a = extract_study(st, c, Execution::serial);
    const auto b = extract_study(padded, c, Execution::serial);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        INFO(a[i].first);
        CHECK(oracle::close(a[i].second, b[i].second, 1e-10));
    }
}

TEST_CASE("errors carry study and sequence context") {
    Study st = two_sequence_study();
    auto& im = st.sequences["t2w"];
    im.mask = RoiMask(im.volume.dims(), std::vector<std::uint8_t>(im.volume.dims().count(), 0));
    try {
        (void)extract_study(st, FeatureCatalogConfig{});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config);
        const std::string what = e.what();
        CHECK(what.find("p1") != std::string::npos);
        CHECK(what.find("t2w") != std::string::npos);
    }
}

TEST_CASE("config validation and JSON round trip") {
    FeatureCatalogConfig c;
    c.bin_count = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.bin_count = 16;
    c.classes.insert("gabor");
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.classes = {"glcm", "ngtdm"};
    c.wavelet = false;
    c.resample_spacing = Spacing{0.5, 0.75, 3.0};
    nlohmann::json j = c;
    const auto back = j.get<FeatureCatalogConfig>();
    CHECK(back.bin_count == 16);
    CHECK(back.classes == c.classes);
    CHECK(back.wavelet == false);
    REQUIRE(back.resample_spacing.has_value());
    CHECK(back.resample_spacing->sz == 3.0);
    CHECK(nlohmann::json(back) == j);

    c.resample_spacing.reset();
    j = c;
    CHECK_FALSE(j.get<FeatureCatalogConfig>().resample_spacing.has_value());
}

}  // TEST_SUITE
