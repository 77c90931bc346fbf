#include "radiomark/selection/biomarker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "radiomark/error.hpp"
#include "radiomark/random.hpp"

namespace radiomark {

using nlohmann::json;

void SelectionConfig::validate() const {
    if (folds < 2) throw ConfigError("folds must be at least 2");
    if (grid_size < 2) throw ConfigError("grid_size must be at least 2");
    if (!(grid_ratio > 0 && grid_ratio < 1)) throw ConfigError("grid_ratio must lie in (0, 1)");
    if (!(lambda_floor >= 0)) throw ConfigError("lambda_floor must be nonnegative");
    if (!(tolerance > 0)) throw ConfigError("tolerance must be positive");
}

std::string SelectionConfig::hash() const {
    const json j = *this;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

void to_json(json& j, const SelectionConfig& c) {
    j = json{{"folds", c.folds},           {"rule", to_string(c.rule)},     {"grid_size", c.grid_size},
             {"grid_ratio", c.grid_ratio}, {"lambda_floor", c.lambda_floor}, {"seed", c.seed},
             {"tolerance", c.tolerance}};
}

void from_json(const json& j, SelectionConfig& c) {
    c = SelectionConfig{};
    if (j.contains("folds")) c.folds = j.at("folds").get<int>();
    if (j.contains("rule")) c.rule = selection_rule_from_string(j.at("rule").get<std::string>());
    if (j.contains("grid_size")) c.grid_size = j.at("grid_size").get<int>();
    if (j.contains("grid_ratio")) c.grid_ratio = j.at("grid_ratio").get<double>();
    if (j.contains("lambda_floor")) c.lambda_floor = j.at("lambda_floor").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
    c.validate();
}

void to_json(json& j, const BiomarkerModel& m) {
    j = json{{"features", m.features},
             {"coefficients", m.coefficients},
             {"intercept", m.intercept},
             {"lambda", m.lambda},
             {"standardizer", m.standardizer},
             {"provenance",
              {{"cohort_id", m.provenance.cohort_id},
               {"config_hash", m.provenance.config_hash},
               {"seed", m.provenance.seed},
               {"empty_selection", m.provenance.empty_selection},
               {"training_patients", m.provenance.training_patients}}}};
}

void from_json(const json& j, BiomarkerModel& m) {
    j.at("features").get_to(m.features);
    j.at("coefficients").get_to(m.coefficients);
    j.at("intercept").get_to(m.intercept);
    j.at("lambda").get_to(m.lambda);
    j.at("standardizer").get_to(m.standardizer);
    const auto& p = j.at("provenance");
    p.at("cohort_id").get_to(m.provenance.cohort_id);
    p.at("config_hash").get_to(m.provenance.config_hash);
    p.at("seed").get_to(m.provenance.seed);
    p.at("empty_selection").get_to(m.provenance.empty_selection);
    p.at("training_patients").get_to(m.provenance.training_patients);
    if (m.coefficients.size() != m.features.size())
        throw ConfigError("model has " + std::to_string(m.features.size()) + " features but " +
                          std::to_string(m.coefficients.size()) + " coefficients");
    for (const auto& f : m.features)
        if (std::find(m.standardizer.features.begin(), m.standardizer.features.end(), f) ==
            m.standardizer.features.end())
            throw ConfigError("selected feature '" + f + "' missing from the model's standardizer");
}

void BiomarkerModel::write_json(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << json(*this).dump(2) << '\n';
}

BiomarkerModel BiomarkerModel::read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model '" + path.string() + "'");
    try {
        return json::parse(in).get<BiomarkerModel>();
    } catch (const json::exception& e) {
        throw ConfigError("model '" + path.string() + "' is malformed: " + e.what());
    }
}

bool BiomarkerModel::operator==(const BiomarkerModel& o) const {
    return json(*this) == json(o);
}

std::vector<double> score(const BiomarkerModel& model, const FeatureTable& table) {
    std::vector<std::size_t> cols(model.features.size());
    std::vector<double> means(model.features.size()), stds(model.features.size());
    for (std::size_t k = 0; k < model.features.size(); ++k) {
        cols[k] = table.column(model.features[k]);
        const auto& sf = model.standardizer.features;
        const auto at = static_cast<std::size_t>(std::find(sf.begin(), sf.end(), model.features[k]) - sf.begin());
        if (at == sf.size()) throw ConfigError("feature '" + model.features[k] + "' missing from standardizer");
        means[k] = model.standardizer.means[at];
        stds[k] = model.standardizer.stds[at];
    }
    std::vector<double> out(table.rows());
    for (std::size_t r = 0; r < table.rows(); ++r) {
        double eta = model.intercept;
        for (std::size_t k = 0; k < cols.size(); ++k)
            eta += model.coefficients[k] * ((table.value(r, cols[k]) - means[k]) / stds[k]);
        out[r] = eta >= 0 ? 1.0 / (1.0 + std::exp(-eta)) : std::exp(eta) / (1.0 + std::exp(eta));
    }
    return out;
}

BuildResult build_biomarker(const FeatureTable& table, const SelectionConfig& config, const std::string& cohort_id,
                            Execution exec) {
    config.validate();
    const auto positives = static_cast<std::size_t>(std::count(table.labels().begin(), table.labels().end(), 1));
    if (positives < 2 || table.rows() - positives < 2)
        throw CohortTooSmallError("biomarker construction needs at least two patients per class (cohort '" +
                                  cohort_id + "')");

    std::vector<std::size_t> order(table.rows());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return table.ids()[a] < table.ids()[b]; });
    const FeatureTable sorted = table.select_rows(order);

    std::uint64_t id_hash = fnv1a64("");
    for (const auto& id : sorted.ids()) {
        id_hash = fnv1a64(id, id_hash);
        id_hash = fnv1a64(std::string_view("\n", 1), id_hash);
    }
    const std::uint64_t fold_seed = derive_seed(config.seed, id_hash);

    BuildResult result;
    BiomarkerModel& model = result.model;
    model.standardizer = Standardizer::fit(sorted);
    model.provenance = {cohort_id, config.hash(), fold_seed, false, sorted.rows()};
    const Eigen::MatrixXd X = model.standardizer.transform(sorted);
    Eigen::VectorXd y(static_cast<Eigen::Index>(sorted.rows()));
    for (std::size_t r = 0; r < sorted.rows(); ++r) y(static_cast<Eigen::Index>(r)) = sorted.labels()[r];

    LassoOptions options;
    options.tolerance = config.tolerance;

    LogisticFit fit;
    if (X.cols() == 0 || lambda_max(X, y) <= 0) {
        // Nothing to select; record a flat curve at the null model.
        fit = lasso_logistic_fit(X, y, 0.0, options);
        result.curve.lambdas = {0.0};
        result.curve.mean_loss = {logistic_loss(X, y, fit)};
        result.curve.se_loss = {0.0};
        result.curve.rule = config.rule;
        model.lambda = 0.0;
    } else {
        const auto grid = lambda_grid(X, y, config.grid_size, config.grid_ratio);
        result.curve = cv_select(X, y, config.folds, grid, config.rule, fold_seed, options, exec);
        const double chosen = std::max(result.curve.chosen_lambda, config.lambda_floor);
        const LogisticFit* warm = nullptr;
        for (double lambda : grid) {
            if (lambda <= chosen) break;
            fit = lasso_logistic_fit(X, y, lambda, options, warm);
            warm = &fit;
        }
        // The returned model is polished well past the path tolerance so that
        // rescaled copies of the same data land on the same coefficients.
        LassoOptions final_options = options;
        final_options.tolerance = std::min(options.tolerance, 1e-12);
        final_options.kkt_tolerance = std::min(options.kkt_tolerance, 1e-12);
        fit = lasso_logistic_fit(X, y, chosen, final_options, warm);
        model.lambda = chosen;
    }

    model.intercept = fit.intercept;
    for (Eigen::Index j = 0; j < fit.beta.size(); ++j)
        if (fit.beta(j) != 0.0) {
            model.features.push_back(model.standardizer.features[static_cast<std::size_t>(j)]);
            model.coefficients.push_back(fit.beta(j));
        }
    model.provenance.empty_selection = model.features.empty();
    result.training_scores = score(model, table);
    return result;
}

}  // namespace radiomark
