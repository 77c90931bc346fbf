#include <algorithm>
#include <cmath>
#include <random>

#include "common.hpp"
#include "radiomark/error.hpp"
#include "radiomark/evaluation/delong.hpp"
#include "radiomark/evaluation/roc.hpp"
#include "radiomark/evaluation/split.hpp"
#include "radiomark/evaluation/transfer.hpp"

using namespace radiomark;

namespace {

struct Instance {
    std::vector<double> a, b;
    std::vector<int> y;
};

// Correlated paired predictors; scores rounded to create ties.
Instance paired(std::mt19937_64& rng, int n, double grid = 0.0) {
    std::normal_distribution<double> g;
    Instance in;
    for (int i = 0; i < n; ++i) {
        const int label = i % 3 == 0 ? 1 : 0;
        const double common = g(rng);
        double a = 0.8 * label + common + 0.6 * g(rng);
        double b = 0.5 * label + common + 0.6 * g(rng);
        if (grid > 0) {
            a = std::round(a / grid) * grid;
            b = std::round(b / grid) * grid;
        }
        in.a.push_back(a);
        in.b.push_back(b);
        in.y.push_back(label);
    }
    return in;
}

BiomarkerModel linear_model(const std::vector<std::string>& names, const std::vector<double>& beta) {
    BiomarkerModel m;
    m.features = names;
    m.coefficients = beta;
    m.standardizer.features = names;
    m.standardizer.means.assign(names.size(), 0.0);
    m.standardizer.stds.assign(names.size(), 1.0);
    m.provenance.empty_selection = names.empty();
    return m;
}

FeatureTable random_table(std::mt19937_64& rng, int n, int p) {
    std::vector<std::string> names;
    for (int j = 0; j < p; ++j) names.push_back("f" + std::to_string(j));
    FeatureTable t(names);
    std::normal_distribution<double> g;
    for (int i = 0; i < n; ++i) {
        std::vector<double> row(p);
        for (auto& v : row) v = g(rng);
        t.add_row("p" + std::to_string(i), VisitTime::parse("2021-05-05"), i % 2, row);
    }
    return t;
}

std::vector<PatientRecord> records(const std::vector<std::string>& dates) {
    std::vector<PatientRecord> r;
    for (std::size_t i = 0; i < dates.size(); ++i)
        r.push_back({"id" + std::to_string(100 + i), VisitTime::parse(dates[i]), static_cast<int>(i % 2)});
    return r;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("auc examples") {
    CHECK(auc(std::vector<double>{0.1, 0.4, 0.35, 0.8}, std::vector<int>{0, 0, 1, 1}) == 0.75);
    CHECK(auc(std::vector<double>{1, 2, 3, 4}, std::vector<int>{0, 0, 1, 1}) == 1.0);
    CHECK(auc(std::vector<double>{2, 2, 2, 2}, std::vector<int>{0, 1, 0, 1}) == 0.5);
    CHECK_THROWS_AS(auc(std::vector<double>{1, 2}, std::vector<int>{1, 1}), SingleClassError);
}

TEST_CASE("midranks average ties") {
    const auto r = midranks(std::vector<double>{3.0, 1.0, 3.0, 2.0});
    CHECK(r == std::vector<double>{3.5, 1.0, 3.5, 2.0});
}

TEST_CASE("trapezoid, pair count and sorted count agree with ties") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> n_pick(4, 120), level(0, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = n_pick(rng);
        std::vector<double> s(n);
        std::vector<int> y(n);
        for (int i = 0; i < n; ++i) {
            s[i] = level(rng) * 0.1;
            y[i] = i < 2 ? i : level(rng) % 2;
        }
        const auto roc = roc_analysis(s, y);
        const double want = oracle::auc_pairs(s, y);
        CHECK(std::fabs(roc.auc - want) <= 1e-12);
        CHECK(std::fabs(trapezoid_area(roc.points) - want) <= 1e-12);
        CHECK(std::fabs(oracle::auc_sorted(s, y) - want) <= 1e-12);
        CHECK(roc.points.front().fpr == 0.0);
        CHECK(roc.points.back().tpr == 1.0);
        std::vector<double> neg(s);
        for (auto& v : neg) v = -v;
        CHECK(std::fabs(auc(neg, y) - (1 - want)) <= 1e-12);
    }
}

TEST_CASE("DeLong matches the pairwise oracle and is antisymmetric") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 30; ++trial) {
        const auto in = paired(rng, 60 + trial, trial % 2 ? 0.25 : 0.0);
        const auto r = delong_paired(in.a, in.b, in.y);
        const auto o = oracle::delong_pairs(in.a, in.b, in.y);
        CHECK(std::fabs(r.difference - o.difference) <= 1e-12);
        CHECK(oracle::close(r.variance, o.variance, 1e-12));
        CHECK(oracle::close(r.z, o.z, 1e-10));
        CHECK(std::fabs(r.p - o.p) <= 1e-12);
        const auto s = delong_paired(in.b, in.a, in.y);
        CHECK(s.z == doctest::Approx(-r.z).epsilon(1e-14));
        CHECK(s.p == doctest::Approx(r.p).epsilon(1e-14));
    }
}

TEST_CASE("order-preserving shift gives a degenerate comparison") {
    std::mt19937_64 rng(107);
    const auto in = paired(rng, 80);
    std::vector<double> shifted(in.a);
    for (auto& v : shifted) v += 100;
    const auto r = delong_paired(in.a, shifted, in.y);
    CHECK(r.difference == 0.0);
    CHECK(r.degenerate);
    CHECK(r.p == 1.0);
    CHECK(r.z == 0.0);
}

TEST_CASE("DeLong p tracks a stratified bootstrap") {
    std::mt19937_64 rng(109);
    const auto in = paired(rng, 200);
    const auto r = delong_paired(in.a, in.b, in.y);
    CHECK(std::fabs(r.p - oracle::bootstrap_p(in.a, in.b, in.y, 2000, 7)) <= 0.05);
}

TEST_CASE("normal tail") {
    CHECK(two_sided_p(0.0) == 1.0);
    CHECK(two_sided_p(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(two_sided_p(-3.0) == two_sided_p(3.0));
}

TEST_CASE("time split of ten distinct visits") {
    const auto cohort = records({"2018-01-10", "2018-01-02", "2018-01-03", "2018-01-09", "2018-01-05", "2018-01-06",
                                 "2018-01-07", "2018-01-08", "2018-01-04", "2018-01-01"});
    const auto s = split_by_time(cohort);
    REQUIRE(s.train_ids.size() == 7);
    REQUIRE(s.validation_ids.size() == 3);
    CHECK(s.validation_ids == std::vector<std::string>{"id107", "id103", "id100"});
    CHECK(s.train_ids.front() == "id109");
}

TEST_CASE("split sizes for 574 patients and tie-break by id") {
    std::vector<std::string> dates(574, "2019-06-01");
    const auto s = split_by_time(records(dates));
    CHECK(s.train_ids.size() == 402);
    CHECK(s.validation_ids.size() == 172);
    CHECK(std::is_sorted(s.ordered_ids.begin(), s.ordered_ids.end()));
    auto shuffled = records(dates);
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(3));
    CHECK(split_by_time(shuffled).train_ids == s.train_ids);
}

TEST_CASE("split errors") {
    CHECK_THROWS_AS(split_by_time(records({"2018-01-01", "2018-01-02", "2018-01-03"})), CohortTooSmallError);
    std::vector<PatientRecord> one_class = records({"2018-01-01", "2018-01-02", "2018-01-03", "2018-01-04"});
    for (auto& r : one_class) r.label = 1;
    one_class.back().label = 0;
    CHECK_THROWS_AS(split_by_time(one_class), CohortTooSmallError);
    CHECK_THROWS(split_by_time(records({"2018-01-01", "2018-01-02", "2018-01-03", "2018-01-04"}), 1.5));
}

TEST_CASE("identical models give constant columns and degenerate tests") {
    std::mt19937_64 rng(113);
    const auto m = linear_model({"f0", "f1"}, {1.0, -0.5});
    std::vector<FeatureTable> cohorts{random_table(rng, 40, 3), random_table(rng, 30, 3), random_table(rng, 50, 3)};
    const auto tm = transfer_matrix({m, m, m}, {"a", "b", "c"}, cohorts, {"a", "b", "c"});
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(tm.auc[0][c] == tm.auc[1][c]);
        CHECK(tm.auc[1][c] == tm.auc[2][c]);
    }
    CHECK(tm.comparisons.size() == 9);
    for (const auto& cmp : tm.comparisons) CHECK(cmp.result.degenerate);
}

TEST_CASE("random model on label-free data sits near one half") {
    std::mt19937_64 rng(127);
    const auto m = linear_model({"f0", "f1", "f2"}, {0.3, -1.1, 0.7});
    const auto t = random_table(rng, 2000, 3);
    const auto tm = transfer_matrix({m}, {"r"}, {t}, {"r"});
    CHECK(std::fabs(tm.auc[0][0] - 0.5) < 0.05);
}

TEST_CASE("transfer reports missing features and writes CSVs") {
    std::mt19937_64 rng(131);
    const auto t = random_table(rng, 20, 2);
    CHECK_THROWS_AS(transfer_matrix({linear_model({"zz"}, {1.0})}, {"m"}, {t}, {"c"}), MissingFeatureError);
    const auto tm = transfer_matrix({linear_model({"f0"}, {1.0}), linear_model({"f1"}, {1.0})}, {"a", "b"},
                                    {t, t}, {"a", "b"});
    CHECK(tm.mean_off_diagonal(0) == tm.auc[0][1]);
    const auto dir = scratch("evaluation_csv");
    tm.write_auc_csv(dir / "auc.csv");
    tm.write_delong_csv(dir / "delong.csv", 0.05);
    tm.write_roc_csv(dir / "roc.csv");
    for (const char* f : {"auc.csv", "delong.csv", "roc.csv"}) CHECK(std::filesystem::file_size(dir / f) > 0);
}

}  // TEST_SUITE
