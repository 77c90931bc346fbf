#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "common.hpp"
#include "radiomark/error.hpp"
#include "radiomark/selection/biomarker.hpp"
#include "radiomark/selection/lasso.hpp"

using namespace radiomark;

namespace {

struct Problem {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

// Standardized Gaussian design with a sparse logistic truth.
Problem logistic_problem(int n, int p, std::uint64_t seed, std::vector<double> truth) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0, 1);
    Problem pr{Eigen::MatrixXd(n, p), Eigen::VectorXd(n)};
    for (int i = 0; i < n; ++i) {
        double eta = 0.2;
        for (int j = 0; j < p; ++j) {
            pr.X(i, j) = g(rng);
            if (j < static_cast<int>(truth.size())) eta += truth[j] * pr.X(i, j);
        }
        pr.y(i) = u(rng) < 1 / (1 + std::exp(-eta)) ? 1.0 : 0.0;
    }
    return pr;
}

FeatureTable table_from(const Problem& pr, const std::string& prefix = "f") {
    std::vector<std::string> names;
    for (int j = 0; j < pr.X.cols(); ++j) names.push_back(prefix + std::to_string(j));
    FeatureTable t(names);
    for (int i = 0; i < pr.X.rows(); ++i) {
        std::vector<double> row(pr.X.cols());
        for (int j = 0; j < pr.X.cols(); ++j) row[j] = pr.X(i, j);
        char id[16];
        std::snprintf(id, sizeof id, "pt%03d", i);
        t.add_row(id, VisitTime::parse("2020-01-01"), static_cast<int>(pr.y(i)), row);
    }
    return t;
}

SelectionConfig quick_config() {
    SelectionConfig c;
    c.grid_size = 30;
    c.seed = 11;
    return c;
}

}  // namespace

TEST_SUITE("selection") {

TEST_CASE("lambda at or above lambda_max gives the exact null model") {
    const auto pr = logistic_problem(60, 5, 3, {1.0, -0.5});
    const double lmax = lambda_max(pr.X, pr.y);
    const double ybar = pr.y.mean();
    for (double lambda : {lmax, 2 * lmax}) {
        const auto fit = lasso_logistic_fit(pr.X, pr.y, lambda);
        CHECK(fit.beta.isZero(0.0));
        CHECK(fit.intercept == doctest::Approx(std::log(ybar / (1 - ybar))).epsilon(1e-12));
        CHECK(kkt_violation(pr.X, pr.y, fit, lambda) <= 1e-6);
    }
}

TEST_CASE("lambda zero matches an independent Newton MLE") {
    const auto pr = logistic_problem(40, 2, 5, {0.8, -0.6});
    const auto fit = lasso_logistic_fit(pr.X, pr.y, 0.0, LassoOptions{1e-10, 1e-9, 2000});
    const auto mle = oracle::newton_logistic(pr.X, pr.y);
    REQUIRE(mle.converged);
    CHECK(std::fabs(fit.intercept - mle.intercept) <= 1e-6);
    for (int j = 0; j < 2; ++j) CHECK(std::fabs(fit.beta(j) - mle.beta(j)) <= 1e-6);
}

TEST_CASE("duplicated column splits the original coefficient") {
    const auto pr = logistic_problem(120, 3, 8, {1.2, 0.0, -0.7});
    const double lambda = 0.2 * lambda_max(pr.X, pr.y);
    const LassoOptions tight{1e-10, 1e-9, 5000};
    const auto base = lasso_logistic_fit(pr.X, pr.y, lambda, tight);
    Eigen::MatrixXd Xd(pr.X.rows(), 4);
    Xd << pr.X, pr.X.col(0);
    const auto dup = lasso_logistic_fit(Xd, pr.y, lambda, tight);
    CHECK(std::fabs(dup.beta(0) + dup.beta(3) - base.beta(0)) <= 1e-4);
    CHECK(std::fabs(dup.beta(2) - base.beta(2)) <= 1e-4);
}

TEST_CASE("lambda_max of an aligned balanced +-1 column is one half") {
    Eigen::MatrixXd X(6, 1);
    Eigen::VectorXd y(6);
    for (int i = 0; i < 6; ++i) {
        y(i) = i % 2;
        X(i, 0) = i % 2 ? 1.0 : -1.0;
    }
    CHECK(lambda_max(X, y) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("grid endpoints and strict decrease") {
    const auto pr = logistic_problem(50, 4, 2, {1.0});
    const double lmax = lambda_max(pr.X, pr.y);
    const auto two = lambda_grid(pr.X, pr.y, 2, 0.01);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == lmax);
    CHECK(two[1] == doctest::Approx(0.01 * lmax).epsilon(1e-14));
    const auto g = lambda_grid(pr.X, pr.y, 100, 1e-3);
    CHECK(g.size() == 100);
    for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] < g[k - 1]);
}

TEST_CASE("KKT holds along a warm-started path and objective beats the null model") {
    const auto pr = logistic_problem(100, 30, 17, {1.0, -1.0, 0.5});
    const auto grid = lambda_grid(pr.X, pr.y, 40, 1e-3);
    const auto null_fit = lasso_logistic_fit(pr.X, pr.y, grid.front());
    LogisticFit warm;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto fit = lasso_logistic_fit(pr.X, pr.y, grid[k], {}, k ? &warm : nullptr);
        CAPTURE(k);
        CHECK(kkt_violation(pr.X, pr.y, fit, grid[k]) <= 1e-6);
        CHECK(lasso_objective(pr.X, pr.y, fit, grid[k]) <= lasso_objective(pr.X, pr.y, null_fit, grid[k]) + 1e-12);
        const auto cold = lasso_logistic_fit(pr.X, pr.y, grid[k]);
        CHECK(lasso_objective(pr.X, pr.y, fit, grid[k]) <= lasso_objective(pr.X, pr.y, cold, grid[k]) + 1e-9);
        warm = fit;
    }
}

TEST_CASE("fit errors") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Random(10, 2);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(10);
    CHECK_THROWS_AS(lasso_logistic_fit(X, y, 0.1), SingleClassError);
    y(0) = 1;
    X(3, 1) = std::nan("");
    CHECK_THROWS_AS(lasso_logistic_fit(X, y, 0.1), NonFiniteInputError);
}

TEST_CASE("cross-validation is deterministic and MIN never exceeds ONE_SE") {
    const auto pr = logistic_problem(150, 20, 23, {1.0, -0.8, 0.6});
    const auto grid = lambda_grid(pr.X, pr.y, 30, 1e-3);
    const auto a = cv_select(pr.X, pr.y, 5, grid, SelectionRule::one_se, 99);
    const auto b = cv_select(pr.X, pr.y, 5, grid, SelectionRule::one_se, 99);
    CHECK(a.mean_loss == b.mean_loss);
    CHECK(a.se_loss == b.se_loss);
    CHECK(a.chosen_lambda == b.chosen_lambda);
    const auto m = cv_select(pr.X, pr.y, 5, grid, SelectionRule::min, 99);
    CHECK(m.chosen_lambda <= a.chosen_lambda);
    CHECK(std::find(grid.begin(), grid.end(), a.chosen_lambda) != grid.end());
    CHECK(a.lambdas == grid);
}

TEST_CASE("separable data stays finite under the penalty") {
    Eigen::MatrixXd X(40, 1);
    Eigen::VectorXd y(40);
    for (int i = 0; i < 40; ++i) {
        y(i) = i < 20 ? 0 : 1;
        X(i, 0) = (i < 20 ? -1.0 : 1.0) * (1 + 0.05 * i);
    }
    const auto grid = lambda_grid(X, y, 20, 1e-2);
    const auto cv = cv_select(X, y, 5, grid, SelectionRule::min, 4);
    CHECK(cv.chosen_lambda > 0);
    const auto fit = lasso_logistic_fit(X, y, cv.chosen_lambda);
    CHECK(std::isfinite(fit.beta(0)));
    CHECK(fit.beta(0) > 0);
}

TEST_CASE("stratified folds keep both classes and reject tiny classes") {
    Eigen::VectorXd y(23);
    for (int i = 0; i < 23; ++i) y(i) = i < 8 ? 1 : 0;
    const auto f = stratified_folds(y, 5, 1);
    for (int k = 0; k < 5; ++k) {
        int pos = 0, neg = 0;
        for (int i = 0; i < 23; ++i)
            if (f[i] == k) (y(i) > 0.5 ? pos : neg)++;
        CHECK(pos >= 1);
        CHECK(neg >= 1);
    }
    Eigen::VectorXd small(8);
    small << 1, 1, 1, 0, 0, 0, 0, 0;
    CHECK_THROWS_AS(stratified_folds(small, 5, 1), FoldError);
}

TEST_CASE("standardizer gives zero mean and unit std and drops constants") {
    auto pr = logistic_problem(70, 4, 31, {1.0});
    pr.X.col(1) = pr.X.col(1) * 250.0 + Eigen::VectorXd::Constant(70, 1e4);
    pr.X.col(2).setConstant(7.5);
    const auto t = table_from(pr);
    const auto s = Standardizer::fit(t);
    CHECK(s.dropped == std::vector<std::string>{"f2"});
    const Eigen::MatrixXd Z = s.transform(t);
    REQUIRE(Z.cols() == 3);
    for (int j = 0; j < 3; ++j) {
        const double mean = Z.col(j).mean();
        const double sd = std::sqrt((Z.col(j).array() - mean).square().mean());
        CHECK(std::fabs(mean) <= 1e-10);
        CHECK(std::fabs(sd - 1) <= 1e-10);
    }
}

TEST_CASE("perfectly label-correlated feature is selected") {
    auto pr = logistic_problem(60, 6, 41, {});
    for (int i = 0; i < 60; ++i) pr.X(i, 4) = pr.y(i) * 2.0 - 1.0 + 0.01 * i / 60.0;
    const auto r = build_biomarker(table_from(pr), quick_config(), "c");
    CHECK(std::find(r.model.features.begin(), r.model.features.end(), "f4") != r.model.features.end());
    for (double b : r.model.coefficients) CHECK(b != 0.0);
}

TEST_CASE("row order does not change the model") {
    const auto pr = logistic_problem(90, 12, 43, {1.0, -1.0});
    const auto t = table_from(pr);
    std::vector<std::size_t> perm(t.rows());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(5));
    const auto a = build_biomarker(t, quick_config(), "c");
    const auto b = build_biomarker(t.select_rows(perm), quick_config(), "c");
    CHECK(a.model == b.model);
    CHECK(a.curve.mean_loss == b.curve.mean_loss);
}

TEST_CASE("pure noise with a large lambda floor gives an empty flagged model") {
    const auto pr = logistic_problem(60, 8, 47, {});
    auto cfg = quick_config();
    cfg.lambda_floor = 10.0;
    const auto r = build_biomarker(table_from(pr), cfg, "noise");
    CHECK(r.model.features.empty());
    CHECK(r.model.provenance.empty_selection);
    const auto s = score(r.model, table_from(pr));
    const double want = 1 / (1 + std::exp(-r.model.intercept));
    for (double v : s) CHECK(v == want);
}

TEST_CASE("scores are invariant to positive rescaling of raw features") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    const auto pr = logistic_problem(80, 6, 53, {1.0, -0.7, 0.4});
    const auto base_t = table_from(pr);
    const auto base = build_biomarker(base_t, quick_config(), "c");
    REQUIRE_FALSE(base.model.features.empty());
    for (int trial = 0; trial < 5; ++trial) {
        Problem q = pr;
        for (int j = 0; j < q.X.cols(); ++j) q.X.col(j) *= scale(rng);
        const auto t = table_from(q);
        const auto r = build_biomarker(t, quick_config(), "c");
        const auto a = score(base.model, base_t);
        const auto b = score(r.model, t);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-8);
    }
}

TEST_CASE("scoring reproduces training scores and is monotone") {
    const auto pr = logistic_problem(80, 6, 59, {1.0, -0.7});
    const auto t = table_from(pr);
    const auto r = build_biomarker(t, quick_config(), "c");
    CHECK(score(r.model, t) == r.training_scores);
    REQUIRE_FALSE(r.model.features.empty());
    std::size_t k = 0;
    while (k < r.model.coefficients.size() && r.model.coefficients[k] <= 0) ++k;
    if (k < r.model.coefficients.size()) {
        const std::size_t col = t.column(r.model.features[k]);
        FeatureTable bumped = t;
        for (std::size_t i = 0; i < t.rows(); ++i) bumped.value(i, col) += 0.5;
        const auto a = score(r.model, t), b = score(r.model, bumped);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] > a[i]);
    }
    FeatureTable missing(std::vector<std::string>{"other"});
    missing.add_row("x", VisitTime::parse("2020-01-01"), 0, std::vector<double>{1.0});
    CHECK_THROWS_AS(score(r.model, missing), MissingFeatureError);
}

TEST_CASE("model JSON round trip is bit exact") {
    const auto pr = logistic_problem(80, 6, 61, {1.0, -0.7});
    const auto r = build_biomarker(table_from(pr), quick_config(), "cohort-x");
    const auto path = scratch("selection_json") / "model.json";
    r.model.write_json(path);
    const auto back = BiomarkerModel::read_json(path);
    CHECK(back == r.model);
    CHECK(back.intercept == r.model.intercept);
    CHECK(back.standardizer.stds == r.model.standardizer.stds);
    CHECK(back.provenance.cohort_id == "cohort-x");
}

TEST_CASE("too few patients per class is rejected") {
    auto pr = logistic_problem(10, 3, 67, {});
    for (int i = 0; i < 10; ++i) pr.y(i) = i == 0 ? 1 : 0;
    CHECK_THROWS_AS(build_biomarker(table_from(pr), quick_config(), "c"), CohortTooSmallError);
}

TEST_CASE("selection config hash and validation") {
    SelectionConfig a, b;
    CHECK(a.hash() == b.hash());
    b.folds = 10;
    CHECK(a.hash() != b.hash());
    b.folds = 1;
    CHECK_THROWS_AS(b.validate(), ConfigError);
    CHECK(selection_rule_from_string(to_string(SelectionRule::min)) == SelectionRule::min);
    CHECK_THROWS_AS(selection_rule_from_string("best"), ConfigError);
}

}  // TEST_SUITE
