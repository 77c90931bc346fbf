#include "radiomark/selection/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "radiomark/error.hpp"
#include "radiomark/random.hpp"

namespace radiomark {

namespace {

constexpr double kMinWeight = 1e-5;

double sigmoid(double t) {
    if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double softplus(double u) { return u > 0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

double soft_threshold(double z, double gamma) {
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

void check_inputs(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw ConfigError("design matrix rows differ from label count");
    if (X.rows() < 2) throw SingleClassError("logistic fit needs at least two observations");
    bool has0 = false, has1 = false;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y(i) == 0.0) has0 = true;
        else if (y(i) == 1.0) has1 = true;
        else throw ConfigError("labels must be 0 or 1");
    }
    if (!has0 || !has1) throw SingleClassError("logistic fit needs both classes present");
    if (!X.allFinite()) throw NonFiniteInputError("design matrix contains non-finite values");
}

Eigen::VectorXd predictor(const Eigen::MatrixXd& X, const LogisticFit& fit) {
    Eigen::VectorXd eta = Eigen::VectorXd::Constant(X.rows(), fit.intercept);
    if (fit.beta.size() > 0) eta.noalias() += X * fit.beta;
    return eta;
}

double mean_loss(const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
    double s = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) s += softplus(y(i) > 0.5 ? -eta(i) : eta(i));
    return s / static_cast<double>(y.size());
}

LogisticFit null_model(const Eigen::VectorXd& y, Eigen::Index p) {
    const double ybar = y.mean();
    LogisticFit fit;
    fit.intercept = std::log(ybar / (1.0 - ybar));
    fit.beta = Eigen::VectorXd::Zero(p);
    fit.converged = true;
    return fit;
}

}  // namespace

double logistic_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LogisticFit& fit) {
    return mean_loss(predictor(X, fit), y);
}

double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LogisticFit& fit, double lambda) {
    return logistic_loss(X, y, fit) + lambda * fit.beta.lpNorm<1>();
}

Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LogisticFit& fit) {
    const Eigen::VectorXd eta = predictor(X, fit);
    Eigen::VectorXd resid(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) resid(i) = sigmoid(eta(i)) - y(i);
    const double n = static_cast<double>(y.size());
    Eigen::VectorXd g(X.cols() + 1);
    g(0) = resid.sum() / n;
    g.tail(X.cols()) = X.transpose() * resid / n;
    return g;
}

double kkt_violation(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LogisticFit& fit, double lambda) {
    const Eigen::VectorXd g = logistic_gradient(X, y, fit);
    double worst = std::fabs(g(0));
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double gj = g(j + 1);
        const double b = fit.beta(j);
        const double v = b == 0.0 ? std::fabs(gj) - lambda : std::fabs(gj + (b > 0 ? lambda : -lambda));
        worst = std::max(worst, v);
    }
    return worst;
}

double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const Eigen::VectorXd centred = y.array() - y.mean();
    if (X.cols() == 0) return 0.0;
    return (X.transpose() * centred).cwiseAbs().maxCoeff() / static_cast<double>(y.size());
}

LogisticFit lasso_logistic_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                               const LassoOptions& options, const LogisticFit* warm_start) {
    check_inputs(X, y);
    if (!(lambda >= 0) || !std::isfinite(lambda)) throw ConfigError("lambda must be a nonnegative finite number");
    const Eigen::Index n = X.rows(), p = X.cols();
    const double inv_n = 1.0 / static_cast<double>(n);

    if (lambda >= lambda_max(X, y)) return null_model(y, p);

    LogisticFit fit = warm_start && warm_start->beta.size() == p ? *warm_start : null_model(y, p);
    fit.converged = false;
    fit.iterations = 0;

    Eigen::VectorXd eta = predictor(X, fit);
    double objective = mean_loss(eta, y) + lambda * fit.beta.lpNorm<1>();
    double inner_tol = 1e-9;

    Eigen::VectorXd prob(n), w(n), r(n), v(p), c(p), Xd(n), eta_trial(n);
    std::vector<Eigen::Index> active;

    for (int outer = 0; outer < options.max_iterations; ++outer) {
        fit.iterations = outer + 1;
        for (Eigen::Index i = 0; i < n; ++i) {
            prob(i) = sigmoid(eta(i));
            w(i) = std::max(prob(i) * (1.0 - prob(i)), kMinWeight);
            r(i) = (y(i) - prob(i)) / w(i);
        }
        v.noalias() = X.cwiseAbs2().transpose() * w * inv_n;
        const double sum_w = w.sum();

        // Weighted lasso on the quadratic model, starting at the current point.
        double c0 = fit.intercept;
        c = fit.beta;
        auto update_intercept = [&]() {
            const double delta = w.dot(r) / sum_w;
            c0 += delta;
            r.array() -= delta;
            return std::fabs(delta);
        };
        auto update = [&](Eigen::Index j) {
            if (v(j) <= 0) return 0.0;
            const double grad = X.col(j).cwiseProduct(w).dot(r) * inv_n;
            const double next = soft_threshold(grad + v(j) * c(j), lambda) / v(j);
            const double delta = next - c(j);
            if (delta == 0.0) return 0.0;
            c(j) = next;
            r.noalias() -= delta * X.col(j);
            return std::fabs(delta);
        };
        for (int sweep = 0; sweep < 100; ++sweep) {
            double change = update_intercept();
            for (Eigen::Index j = 0; j < p; ++j) change = std::max(change, update(j));
            active.clear();
            for (Eigen::Index j = 0; j < p; ++j)
                if (c(j) != 0.0) active.push_back(j);
            if (change < inner_tol) break;
            for (int pass = 0; pass < 10000; ++pass) {
                double ac = update_intercept();
                for (Eigen::Index j : active) ac = std::max(ac, update(j));
                if (ac < inner_tol) break;
            }
        }

        // Backtracking line search on the true objective.
        const double d0 = c0 - fit.intercept;
        const Eigen::VectorXd d = c - fit.beta;
        const double max_step = std::max(std::fabs(d0), d.size() ? d.cwiseAbs().maxCoeff() : 0.0);
        Xd = Eigen::VectorXd::Constant(n, d0);
        for (Eigen::Index j = 0; j < p; ++j)
            if (d(j) != 0.0) Xd.noalias() += d(j) * X.col(j);
        const double directional =
            (prob - y).dot(Xd) * inv_n + lambda * (c.lpNorm<1>() - fit.beta.lpNorm<1>());

        // Objective differences vanish below ~sqrt(eps) steps, so tiny proximal
        // Newton steps are taken whole instead of being judged on rounding noise.
        const bool whole_step = max_step > 0 && max_step < 1e-6;
        double t = 1.0;
        bool accepted = false;
        double trial_objective = objective;
        if (whole_step) {
            eta_trial = eta + Xd;
            trial_objective = mean_loss(eta_trial, y) + lambda * c.lpNorm<1>();
            accepted = true;
        }
        for (int k = 0; k < 50 && max_step > 0 && !accepted; ++k, t *= 0.5) {
            eta_trial = eta + t * Xd;
            trial_objective = mean_loss(eta_trial, y) + lambda * (fit.beta + t * d).lpNorm<1>();
            if (trial_objective <= objective + 1e-4 * t * std::min(directional, 0.0)) {
                accepted = true;
                break;
            }
        }
        if (accepted) {
            fit.intercept += t * d0;
            fit.beta += t * d;
            // Exact zeros from the inner solve stay exact.
            for (Eigen::Index j = 0; j < p; ++j)
                if (c(j) == 0.0 && t == 1.0) fit.beta(j) = 0.0;
            eta = eta_trial;
            objective = trial_objective;
        }
        const double moved = accepted ? t * max_step : 0.0;
        // Inner solves must stay more accurate than the steps they produce.
        if (moved > 0) inner_tol = std::clamp(0.01 * moved, 1e-15, inner_tol);
        if (moved < options.tolerance) {
            if (kkt_violation(X, y, fit, lambda) <= 0.5 * options.kkt_tolerance) {
                fit.converged = true;
                break;
            }
            if (inner_tol <= 1e-15 && !accepted) break;
            inner_tol = std::max(inner_tol * 1e-2, 1e-15);
        }
    }
    return fit;
}

std::vector<double> lambda_grid(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int count, double ratio) {
    if (count < 2) throw ConfigError("lambda grid needs at least two points");
    if (!(ratio > 0 && ratio < 1)) throw ConfigError("lambda grid ratio must lie in (0, 1)");
    const double top = lambda_max(X, y);
    if (!(top > 0)) throw NumericError("lambda_max is zero: no feature correlates with the labels");
    std::vector<double> grid(static_cast<std::size_t>(count));
    const double step = std::log(ratio) / (count - 1);
    for (int k = 0; k < count; ++k) grid[static_cast<std::size_t>(k)] = top * std::exp(step * k);
    grid.front() = top;
    grid.back() = top * ratio;
    return grid;
}

std::string to_string(SelectionRule rule) { return rule == SelectionRule::min ? "min" : "one_se"; }

SelectionRule selection_rule_from_string(const std::string& s) {
    if (s == "min" || s == "MIN") return SelectionRule::min;
    if (s == "one_se" || s == "ONE_SE") return SelectionRule::one_se;
    throw ConfigError("unknown selection rule '" + s + "' (expected min or one_se)");
}

std::vector<int> stratified_folds(const Eigen::VectorXd& y, int folds, std::uint64_t seed) {
    if (folds < 2) throw ConfigError("cross-validation needs at least two folds");
    std::vector<int> out(static_cast<std::size_t>(y.size()), -1);
    Rng rng(seed);
    std::size_t dealt = 0;
    for (double cls : {0.0, 1.0}) {
        std::vector<std::size_t> members;
        for (Eigen::Index i = 0; i < y.size(); ++i)
            if (y(i) == cls) members.push_back(static_cast<std::size_t>(i));
        if (members.size() < static_cast<std::size_t>(folds))
            throw FoldError("class " + std::to_string(static_cast<int>(cls)) + " has " +
                            std::to_string(members.size()) + " patients, fewer than the " + std::to_string(folds) +
                            " folds; every fold must contain both classes");
        for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng.below(i)]);
        for (std::size_t m : members) out[m] = static_cast<int>(dealt++ % static_cast<std::size_t>(folds));
    }
    return out;
}

CvCurve cv_select(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int folds, const std::vector<double>& grid,
                  SelectionRule rule, std::uint64_t seed, const LassoOptions& options, Execution exec) {
    check_inputs(X, y);
    if (grid.empty()) throw ConfigError("empty lambda grid");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] < grid[k - 1])) throw ConfigError("lambda grid must be strictly decreasing");
    const std::vector<int> fold_of = stratified_folds(y, folds, seed);
    const std::size_t g = grid.size();
    std::vector<std::vector<double>> losses(static_cast<std::size_t>(folds), std::vector<double>(g));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(folds));

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (int f = 0; f < folds; ++f) {
        try {
            std::vector<Eigen::Index> train, val;
            for (Eigen::Index i = 0; i < y.size(); ++i)
                (fold_of[static_cast<std::size_t>(i)] == f ? val : train).push_back(i);
            const Eigen::MatrixXd Xtr = X(train, Eigen::all), Xva = X(val, Eigen::all);
            const Eigen::VectorXd ytr = y(train), yva = y(val);
            LogisticFit fit;
            for (std::size_t k = 0; k < g; ++k) {
                fit = lasso_logistic_fit(Xtr, ytr, grid[k], options, k == 0 ? nullptr : &fit);
                losses[static_cast<std::size_t>(f)][k] = mean_loss(predictor(Xva, fit), yva);
            }
        } catch (...) {
            errors[static_cast<std::size_t>(f)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    CvCurve curve;
    curve.lambdas = grid;
    curve.rule = rule;
    curve.mean_loss.resize(g);
    curve.se_loss.resize(g);
    const double k = folds;
    for (std::size_t j = 0; j < g; ++j) {
        double s = 0;
        for (int f = 0; f < folds; ++f) s += losses[static_cast<std::size_t>(f)][j];
        const double mean = s / k;
        double ss = 0;
        for (int f = 0; f < folds; ++f) {
            const double d = losses[static_cast<std::size_t>(f)][j] - mean;
            ss += d * d;
        }
        curve.mean_loss[j] = mean;
        curve.se_loss[j] = std::sqrt(ss / (k - 1)) / std::sqrt(k);
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < g; ++j)
        if (curve.mean_loss[j] < curve.mean_loss[best]) best = j;
    curve.chosen_index = best;
    if (rule == SelectionRule::one_se) {
        const double threshold = curve.mean_loss[best] + curve.se_loss[best];
        for (std::size_t j = 0; j <= best; ++j)
            if (curve.mean_loss[j] <= threshold) {
                curve.chosen_index = j;
                break;
            }
    }
    curve.chosen_lambda = grid[curve.chosen_index];
    return curve;
}

}  // namespace radiomark
