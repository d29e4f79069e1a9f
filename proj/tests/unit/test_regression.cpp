#include <doctest.h>

#include <cmath>

#include "oracles/normal_equations_oracle.hpp"
#include "oracles/quadrature_oracle.hpp"
#include "zebrasim/distributions.hpp"
#include "zebrasim/regression.hpp"
#include "zebrasim/rng.hpp"

using namespace zebrasim;

namespace {

std::vector<std::vector<double>> random_predictors(RngStream& rng, int n, int k) {
    std::vector<std::vector<double>> x(n, std::vector<double>(k));
    for (auto& row : x)
        for (auto& v : row) v = rng.uniform(-5.0, 5.0);
    return x;
}

}  // namespace

TEST_SUITE("regression") {

TEST_CASE("exact linear data is fit exactly") {
    std::vector<std::vector<double>> x = {{0, 1}, {1, 0}, {2, 3}, {3, 1},
                                          {4, 4}, {5, 2}, {6, 6}, {7, 3}};
    std::vector<double> y;
    for (const auto& row : x) y.push_back(1.0 + 2.0 * row[0] + 3.0 * row[1]);
    const RegressionResult res = ols_fit(x, y);
    CHECK(res.beta[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.beta[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(res.beta[2] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(res.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.ssr <= 1e-18);
}

TEST_CASE("degrees of freedom at the reference sample size") {
    RngStream rng(8);
    const auto x = random_predictors(rng, 73, 2);
    std::vector<double> y(73);
    for (int i = 0; i < 73; ++i) y[i] = 40 + x[i][0] - x[i][1] + rng.normal(0, 3);
    const RegressionResult res = ols_fit(x, y);
    CHECK(res.df_model == 2);
    CHECK(res.df_residual == 70);
}

TEST_CASE("fixed six-point dataset matches the normal-equations oracle") {
    const std::vector<std::vector<double>> x = {{1.0, 2.0}, {2.0, 1.0}, {3.0, 4.0},
                                                {4.0, 2.5}, {5.0, 5.0}, {6.0, 3.0}};
    const std::vector<double> y = {3.1, 4.2, 8.3, 8.9, 12.8, 12.1};
    const RegressionResult res = ols_fit(x, y);
    const auto oracle = oracle::ols_normal_equations(x, y);
    for (int j = 0; j < 3; ++j)
        CHECK(res.beta[j] == doctest::Approx(oracle.beta[j]).epsilon(1e-9));
    CHECK(res.r_squared == doctest::Approx(oracle.r_squared).epsilon(1e-9));
    CHECK(res.ssr == doctest::Approx(oracle.ssr).epsilon(1e-9));
}

TEST_CASE("fifty randomized datasets match the oracle to 1e-9 relative") {
    RngStream rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + static_cast<int>(rng.below(4));
        const int n = k + 3 + static_cast<int>(rng.below(30));
        const auto x = random_predictors(rng, n, k);
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
            y[i] = rng.uniform(-2.0, 2.0);
            for (int j = 0; j < k; ++j) y[i] += (j + 1) * 0.7 * x[i][j];
            y[i] += rng.normal(0.0, 1.5);
        }
        const RegressionResult res = ols_fit(x, y);
        const auto oracle = oracle::ols_normal_equations(x, y);
        for (int j = 0; j <= k; ++j)
            CHECK(res.beta[j] == doctest::Approx(oracle.beta[j]).epsilon(1e-9));
        CHECK(res.r_squared == doctest::Approx(oracle.r_squared).epsilon(1e-9));
    }
}

TEST_CASE("rank-deficient and undersized designs are rejected") {
    RngStream rng(9);
    SUBCASE("duplicated column") {
        std::vector<std::vector<double>> x;
        std::vector<double> y;
        for (int i = 0; i < 12; ++i) {
            const double v = rng.uniform(0.0, 4.0);
            x.push_back({v, 2.0 * v});
            y.push_back(v + rng.uniform(0.0, 0.1));
        }
        CHECK_THROWS_AS(ols_fit(x, y), SingularDesignError);
    }
    SUBCASE("constant predictor collides with the intercept") {
        std::vector<std::vector<double>> x(10, std::vector<double>{3.0});
        std::vector<double> y(10, 1.0);
        for (int i = 0; i < 10; ++i) y[i] = i;
        CHECK_THROWS_AS(ols_fit(x, y), SingularDesignError);
    }
    SUBCASE("too few rows") {
        std::vector<std::vector<double>> x = {{1, 2}, {2, 1}, {3, 3}};
        std::vector<double> y = {1, 2, 3};
        CHECK_THROWS_AS(ols_fit(x, y), InsufficientDataError);
    }
}

TEST_CASE("scaling a predictor rescales its coefficient and nothing else") {
    RngStream rng(31);
    const int n = 40;
    auto x = random_predictors(rng, n, 3);
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i)
        y[i] = 5 + 2 * x[i][0] - x[i][1] + 0.5 * x[i][2] + rng.normal(0, 2);
    const RegressionResult base = ols_fit(x, y);

    const double c = 100.0;
    for (auto& row : x) row[1] *= c;
    const RegressionResult scaled = ols_fit(x, y);

    CHECK(scaled.beta[2] == doctest::Approx(base.beta[2] / c).epsilon(1e-9));
    CHECK(scaled.beta[1] == doctest::Approx(base.beta[1]).epsilon(1e-9));
    CHECK(scaled.t_stats[2] == doctest::Approx(base.t_stats[2]).epsilon(1e-9));
    CHECK(scaled.r_squared == doctest::Approx(base.r_squared).epsilon(1e-9));
    CHECK(scaled.f_stat == doctest::Approx(base.f_stat).epsilon(1e-9));
}

TEST_CASE("f statistic satisfies the r-squared identity") {
    RngStream rng(77);
    const int n = 50, k = 2;
    const auto x = random_predictors(rng, n, k);
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = 1 + x[i][0] + rng.normal(0, 2);
    const RegressionResult res = ols_fit(x, y);
    const double expect =
        (res.r_squared / k) / ((1.0 - res.r_squared) / (n - k - 1));
    CHECK(res.f_stat == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("t and f tails match the quadrature oracle to 1e-6") {
    const double t_quantiles[] = {0.3, 0.8, 1.2, 1.7, 2.1, 2.6, 3.2, 4.0, 5.0, 6.5};
    const double t_dfs[] = {4.0, 11.0, 30.0, 70.0, 200.0};
    int checked = 0;
    for (double df : t_dfs)
        for (double q : t_quantiles) {
            const double ours = student_t_two_sided_p(q, df);
            const double ref = oracle::t_two_sided_p_quadrature(q, df);
            CHECK(std::fabs(ours - ref) < 1e-6);
            ++checked;
        }
    const double f_quantiles[] = {0.4, 0.9, 1.4, 2.2, 3.1, 4.5, 6.0, 8.0, 11.0, 14.526};
    for (double q : f_quantiles) {
        const double ours = f_tail_probability(q, 2.0, 70.0);
        const double ref = oracle::f_tail_p_quadrature(q, 2.0, 70.0);
        CHECK(std::fabs(ours - ref) < 1e-6);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("pure-noise predictors do not raise adjusted r-squared on average") {
    RngStream rng(555);
    double gain = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        const int n = 40;
        auto x = random_predictors(rng, n, 2);
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = 3 + x[i][0] - 2 * x[i][1] + rng.normal(0, 4);
        const double before = ols_fit(x, y).adj_r_squared;
        for (auto& row : x) {
            row.push_back(rng.normal(0, 1));
            row.push_back(rng.normal(0, 1));
        }
        const double after = ols_fit(x, y).adj_r_squared;
        gain += after - before;
    }
    CHECK(gain / trials <= 0.002);
}

TEST_CASE("noncompliance regression recovers generator signs with CI coverage") {
    RngStream rng(909);
    int covered_veh = 0, covered_ped = 0, sign_ok = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        std::vector<MinuteRecord> minutes;
        for (int m = 0; m < 73; ++m) {
            MinuteRecord rec;
            rec.minute = m;
            rec.n_vehicles = rng.poisson(19.0);
            rec.n_crossing_peds = rng.poisson(8.0);
            rec.n_episodes = 10;
            rec.pct_noncompliant = 60.0 - 1.5 * rec.n_vehicles + 2.0 * rec.n_crossing_peds +
                                   rng.normal(0.0, 5.0);
            minutes.push_back(rec);
        }
        const auto reg = regress_noncompliance(minutes);
        const RegressionResult& r = reg.result;
        if (r.beta[1] < 0.0 && r.beta[2] > 0.0) ++sign_ok;
        // 95% CI via +-t(0.975, df); 1.994 is close enough for df=70
        const double tcrit = 1.994;
        if (std::fabs(r.beta[1] - (-1.5)) <= tcrit * r.std_errors[1]) ++covered_veh;
        if (std::fabs(r.beta[2] - 2.0) <= tcrit * r.std_errors[2]) ++covered_ped;
    }
    CHECK(sign_ok == trials);
    CHECK(covered_veh >= 88);
    CHECK(covered_ped >= 88);
    CHECK(covered_veh <= 100);
}

TEST_CASE("minutes without episodes are excluded, and too few minutes fail") {
    std::vector<MinuteRecord> minutes;
    for (int m = 0; m < 10; ++m) {
        MinuteRecord rec;
        rec.minute = m;
        rec.n_vehicles = 10 + m;
        rec.n_crossing_peds = (m * 7) % 5;
        if (m % 2 == 0) {
            rec.n_episodes = 3;
            rec.pct_noncompliant = 30.0 + m;
        }
        minutes.push_back(rec);
    }
    const auto reg = regress_noncompliance(minutes);
    CHECK(reg.minutes_used == 5);
    CHECK(reg.minutes_excluded == 5);

    std::vector<MinuteRecord> too_few(minutes.begin(), minutes.begin() + 4);
    CHECK_THROWS_AS(regress_noncompliance(too_few), InsufficientDataError);
}

TEST_CASE("identical predictor columns in the minute data surface as singular") {
    std::vector<MinuteRecord> minutes;
    for (int m = 0; m < 10; ++m) {
        MinuteRecord rec;
        rec.minute = m;
        rec.n_vehicles = 12;  // constant: collinear with the intercept
        rec.n_crossing_peds = 12;
        rec.n_episodes = 2;
        rec.pct_noncompliant = 40.0 + m;
        minutes.push_back(rec);
    }
    CHECK_THROWS_AS(regress_noncompliance(minutes), SingularDesignError);
}

}  // TEST_SUITE
