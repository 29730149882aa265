#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "frontier/panel.hpp"
#include "frontier/stats.hpp"

namespace frontier::stats {

enum class Estimator { Pooled, FixedEffects, RandomEffectsGls };

enum class SeMode { Conventional, Hc1Robust, ClusterByEntity };

struct RegressionResult {
    Estimator estimator = Estimator::Pooled;
    SeMode se_mode = SeMode::Conventional;
    std::vector<std::string> names;  // coefficient order, "_cons" last when present
    Eigen::VectorXd beta;
    Eigen::MatrixXd cov;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_values;
    Eigen::VectorXd p_values;
    std::size_t n_obs = 0;
    double df_resid = 0.0;
    double sigma2 = 0.0;                    // residual variance estimate
    std::optional<double> r2_overall;
    std::optional<double> r2_within;
    std::optional<double> theta_min;        // RE quasi-demeaning range
    std::optional<double> theta_max;
    std::optional<double> sigma2_entity;    // RE variance components
    std::optional<double> sigma2_idio;
    std::vector<std::string> warnings;

    std::optional<double> coefficient(const std::string& name) const;
};

/// Least squares via column-pivoted QR. Throws std::invalid_argument on rank
/// deficiency, naming the collinear columns. Entity ids are required for
/// cluster-robust errors only.
RegressionResult pooled_ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                            const std::vector<std::string>& names, SeMode se_mode = SeMode::Conventional,
                            const std::vector<std::string>& entity_ids = {});

/// Within (entity-demeaned) estimator; degrees of freedom subtract one per
/// entity. The design matrix must not contain an intercept column.
RegressionResult fixed_effects(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                               const std::vector<std::string>& names,
                               const std::vector<std::string>& entity_ids,
                               SeMode se_mode = SeMode::Conventional);

/// Swamy-Arora random-effects GLS with per-entity quasi-demeaning for
/// unbalanced panels; negative variance components truncate to zero with a
/// warning. An intercept is appended internally as "_cons".
RegressionResult random_effects_gls(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                                    const std::vector<std::string>& names,
                                    const std::vector<std::string>& entity_ids,
                                    SeMode se_mode = SeMode::Conventional);

/// Chi-squared comparison of FE and RE over their shared time-varying
/// coefficients. A non-positive-definite covariance difference falls back to
/// a pseudo-inverse and sets degenerate.
TestResult hausman_test(const RegressionResult& fe, const RegressionResult& re);

/// First differences per entity, ordered by year: one output row per
/// observation that has a predecessor. Differenced columns are prefixed "d";
/// a "gap" column marks pairs of non-consecutive years.
data::Panel difference_panel(const data::Panel& panel, const std::vector<std::string>& variables);

/// Regresses (catch - 1) on the given regressors over complete rows of a
/// panel that already carries the catch-up series and the differenced
/// bank-specific variables.
RegressionResult catch_up_regression(const data::Panel& panel, const std::string& catch_var,
                                     const std::vector<std::string>& regressors, Estimator estimator,
                                     SeMode se_mode = SeMode::Hc1Robust);

/// "0.232*** (4.914)"-style cell used by the regression tables.
std::string format_regression_cell(double coefficient, double t_value, double p_value);

}  // namespace frontier::stats
