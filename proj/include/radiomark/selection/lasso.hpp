#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "radiomark/parallel.hpp"

namespace radiomark {

/// Intercept and coefficients of a logistic model on standardized inputs.
struct LogisticFit {
    double intercept = 0.0;
    Eigen::VectorXd beta;
    int iterations = 0;
    bool converged = false;
};

struct LassoOptions {
    double tolerance = 1e-7;       // max coefficient change between outer iterations
    double kkt_tolerance = 1e-6;
    int max_iterations = 500;
};

/// Mean logistic loss (1/n) sum log(1 + exp(-y~ eta)), y~ in {-1, +1}.
double logistic_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LogisticFit& fit);
/// logistic_loss + lambda * ||beta||_1.
double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LogisticFit& fit, double lambda);
/// Gradient of the mean logistic loss; entry 0 is the intercept.
Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LogisticFit& fit);

/// Largest KKT violation of `fit` at `lambda`: |g_j| - lambda for zero
/// coefficients, |g_j + lambda sign(beta_j)| for nonzero ones, |g_0| for the
/// intercept. Nonpositive values mean the conditions hold exactly.
double kkt_violation(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LogisticFit& fit, double lambda);

/// Smallest lambda with the all-zero solution: max_j |(1/n) sum_i x_ij (y_i - ybar)|.
double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// L1-penalised logistic regression with unpenalised intercept.
///
/// Proximal Newton: each outer step solves the weighted least-squares
/// model of the loss by cyclic coordinate descent over an active set, then
/// backtracks along the step until the objective decreases sufficiently.
/// Stops once the largest coefficient change is below `tolerance` and the
/// KKT certificate holds. `lambda >= lambda_max` returns the exact null
/// model. Throws SingleClassError or NonFiniteInputError.
LogisticFit lasso_logistic_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                               const LassoOptions& options = {}, const LogisticFit* warm_start = nullptr);

/// `count` log-spaced values from lambda_max down to ratio * lambda_max.
std::vector<double> lambda_grid(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int count, double ratio);

enum class SelectionRule { min, one_se };

std::string to_string(SelectionRule rule);
SelectionRule selection_rule_from_string(const std::string& s);

struct CvCurve {
    std::vector<double> lambdas;    // strictly decreasing
    std::vector<double> mean_loss;  // mean validation log-loss across folds
    std::vector<double> se_loss;    // standard error across folds
    std::size_t chosen_index = 0;
    double chosen_lambda = 0.0;
    SelectionRule rule = SelectionRule::one_se;
};

/// Stratified fold labels 0..folds-1: each class is shuffled with `seed`
/// and dealt round-robin. Throws FoldError when a class has fewer members
/// than folds.
std::vector<int> stratified_folds(const Eigen::VectorXd& y, int folds, std::uint64_t seed);

/// K-fold cross-validation of the warm-started path over `grid`. Folds run
/// in parallel; per-fold losses are reduced in fold order.
CvCurve cv_select(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int folds, const std::vector<double>& grid,
                  SelectionRule rule, std::uint64_t seed, const LassoOptions& options = {},
                  Execution exec = Execution::parallel);

}  // namespace radiomark
