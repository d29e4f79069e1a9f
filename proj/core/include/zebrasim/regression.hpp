#pragma once

#include <vector>

#include "zebrasim/metrics.hpp"

namespace zebrasim {

/// Multiple linear regression with an intercept and classical inference.
struct RegressionResult {
    std::vector<double> beta;        // intercept first, then one per predictor
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    std::vector<double> p_values;    // two-sided
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double f_stat = 0.0;
    double f_p_value = 1.0;
    int df_model = 0;     // k
    int df_residual = 0;  // n - k - 1
    long n = 0;
    double ssr = 0.0;  // residual sum of squares
    double sst = 0.0;  // total sum of squares about the mean
};

/// Ordinary least squares via Householder QR. `predictors` holds n rows of k
/// values; an intercept column is prepended internally. Standard errors come
/// from s^2 (X'X)^-1, p-values from the t distribution, and the overall F
/// test from the F distribution.
///
/// Throws SingularDesignError for a rank-deficient design and
/// InsufficientDataError when n <= k + 1.
RegressionResult ols_fit(const std::vector<std::vector<double>>& predictors,
                         const std::vector<double>& response);

struct NoncomplianceRegression {
    RegressionResult result;
    long minutes_used = 0;
    long minutes_excluded = 0;  // minutes without episodes (response undefined)
};

/// The per-minute analysis: percentage of non-compliant drivers regressed on
/// vehicles per minute and crossing pedestrians per minute. Minutes without
/// episodes are excluded, not imputed.
NoncomplianceRegression regress_noncompliance(const std::vector<MinuteRecord>& minutes);

}  // namespace zebrasim
