#include "zebrasim/regression.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "zebrasim/distributions.hpp"
#include "zebrasim/errors.hpp"

namespace zebrasim {

namespace {

// Householder QR of the n x p design, in place. Returns false on rank
// deficiency. R ends up in the upper triangle; qty receives Q'y.
bool householder_qr(std::vector<double>& a, long n, int p, std::vector<double>& y) {
    for (int j = 0; j < p; ++j) {
        double norm = 0.0;
        for (long i = j; i < n; ++i) norm += a[i * p + j] * a[i * p + j];
        norm = std::sqrt(norm);
        if (norm < 1e-12) return false;

        if (a[j * p + j] > 0.0) norm = -norm;
        for (long i = j; i < n; ++i) a[i * p + j] /= norm;
        a[j * p + j] += 1.0;

        for (int k = j + 1; k < p; ++k) {
            double s = 0.0;
            for (long i = j; i < n; ++i) s += a[i * p + j] * a[i * p + k];
            s = -s / a[j * p + j];
            for (long i = j; i < n; ++i) a[i * p + k] += s * a[i * p + j];
        }
        double s = 0.0;
        for (long i = j; i < n; ++i) s += a[i * p + j] * y[i];
        s = -s / a[j * p + j];
        for (long i = j; i < n; ++i) y[i] += s * a[i * p + j];

        // the reflector maps the column onto -norm * e_j
        a[j * p + j] = -norm;
    }
    return true;
}

}  // namespace

RegressionResult ols_fit(const std::vector<std::vector<double>>& predictors,
                         const std::vector<double>& response) {
    const long n = static_cast<long>(response.size());
    if (predictors.size() != response.size())
        throw InsufficientDataError("ols_fit: predictor and response row counts differ");
    const int k = n > 0 ? static_cast<int>(predictors[0].size()) : 0;
    if (k < 1) throw InsufficientDataError("ols_fit: at least one predictor required");
    const int p = k + 1;
    if (n <= p)
        throw InsufficientDataError("ols_fit: need more than " + std::to_string(p) +
                                    " observations, got " + std::to_string(n));

    std::vector<double> a(n * p);
    for (long i = 0; i < n; ++i) {
        if (static_cast<int>(predictors[i].size()) != k)
            throw InsufficientDataError("ols_fit: ragged predictor matrix");
        a[i * p] = 1.0;
        for (int j = 0; j < k; ++j) a[i * p + 1 + j] = predictors[i][j];
    }
    std::vector<double> qty(response);

    // column scale for the rank test
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::fabs(v));

    std::vector<double> r(a);
    if (!householder_qr(r, n, p, qty))
        throw SingularDesignError("ols_fit: design matrix is rank deficient");
    for (int j = 0; j < p; ++j)
        if (std::fabs(r[j * p + j]) < 1e-10 * std::max(scale, 1.0))
            throw SingularDesignError("ols_fit: design matrix is rank deficient");

    RegressionResult res;
    res.n = n;
    res.df_model = k;
    res.df_residual = static_cast<int>(n) - p;

    // back substitution: R beta = Q'y
    res.beta.assign(p, 0.0);
    for (int i = p - 1; i >= 0; --i) {
        double s = qty[i];
        for (int j = i + 1; j < p; ++j) s -= r[i * p + j] * res.beta[j];
        res.beta[i] = s / r[i * p + i];
    }

    // residuals against the original design
    double ssr = 0.0;
    double mean_y = 0.0;
    for (long i = 0; i < n; ++i) mean_y += response[i];
    mean_y /= n;
    double sst = 0.0;
    for (long i = 0; i < n; ++i) {
        double fit = 0.0;
        for (int j = 0; j < p; ++j) fit += a[i * p + j] * res.beta[j];
        const double e = response[i] - fit;
        ssr += e * e;
        sst += (response[i] - mean_y) * (response[i] - mean_y);
    }
    res.ssr = ssr;
    res.sst = sst;
    res.r_squared = sst > 0.0 ? 1.0 - ssr / sst : (ssr <= 1e-12 ? 1.0 : 0.0);
    res.adj_r_squared =
        1.0 - (1.0 - res.r_squared) * (static_cast<double>(n) - 1.0) / res.df_residual;

    const double s2 = ssr / res.df_residual;

    // (X'X)^-1 = R^-1 R^-T from the triangular factor
    std::vector<double> rinv(p * p, 0.0);
    for (int col = 0; col < p; ++col) {
        rinv[col * p + col] = 1.0 / r[col * p + col];
        for (int i = col - 1; i >= 0; --i) {
            double s = 0.0;
            for (int j = i + 1; j <= col; ++j) s += r[i * p + j] * rinv[j * p + col];
            rinv[i * p + col] = -s / r[i * p + i];
        }
    }

    res.std_errors.assign(p, 0.0);
    res.t_stats.assign(p, 0.0);
    res.p_values.assign(p, 1.0);
    for (int i = 0; i < p; ++i) {
        double c = 0.0;
        for (int j = i; j < p; ++j) c += rinv[i * p + j] * rinv[i * p + j];
        res.std_errors[i] = std::sqrt(s2 * c);
        if (res.std_errors[i] > 0.0) {
            res.t_stats[i] = res.beta[i] / res.std_errors[i];
            res.p_values[i] = student_t_two_sided_p(res.t_stats[i], res.df_residual);
        } else {
            res.t_stats[i] = res.beta[i] == 0.0 ? 0.0
                                                : std::numeric_limits<double>::infinity();
            res.p_values[i] = res.beta[i] == 0.0 ? 1.0 : 0.0;
        }
    }

    if (res.r_squared >= 1.0) {
        res.f_stat = std::numeric_limits<double>::infinity();
        res.f_p_value = 0.0;
    } else {
        res.f_stat = (res.r_squared / res.df_model) /
                     ((1.0 - res.r_squared) / res.df_residual);
        res.f_p_value = f_tail_probability(res.f_stat, res.df_model, res.df_residual);
    }
    return res;
}

NoncomplianceRegression regress_noncompliance(const std::vector<MinuteRecord>& minutes) {
    NoncomplianceRegression out;
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (const MinuteRecord& m : minutes) {
        if (!m.pct_noncompliant) {
            ++out.minutes_excluded;
            continue;
        }
        x.push_back({static_cast<double>(m.n_vehicles), static_cast<double>(m.n_crossing_peds)});
        y.push_back(*m.pct_noncompliant);
    }
    out.minutes_used = static_cast<long>(y.size());
    if (out.minutes_used < 4)
        throw InsufficientDataError(
            "regress_noncompliance: need at least 4 minutes with episodes, got " +
            std::to_string(out.minutes_used));
    out.result = ols_fit(x, y);
    return out;
}

}  // namespace zebrasim
