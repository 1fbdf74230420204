#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "persim/stats.hpp"

using namespace persim;

namespace {

PairedSamples make(std::vector<double> x, std::vector<double> y) {
    return PairedSamples{std::move(x), std::move(y)};
}

std::vector<double> random_vector(std::mt19937& rng, std::size_t n, bool with_ties) {
    std::vector<double> v(n);
    if (with_ties) {
        std::uniform_int_distribution<int> d(0, 4);
        for (double& x : v) x = d(rng);
    } else {
        std::uniform_real_distribution<double> d(-10.0, 10.0);
        for (double& x : v) x = d(rng);
    }
    return v;
}

// plain evaluation of the five-parameter map, kept separate from the library
double vqeg_curve(const std::array<double, 5>& b, double x) {
    return b[0] * (0.5 - 1.0 / (1.0 + std::exp(b[1] * (x - b[2])))) + b[3] * x + b[4];
}

double affine_ols_rmse(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = slope * x[i] + intercept - y[i];
        sse += r * r;
    }
    return std::sqrt(sse / n);
}

}  // namespace

TEST_CASE("pearson on exact relations") {
    std::vector<double> x, y;
    for (int i = 1; i <= 10; ++i) {
        x.push_back(i);
        y.push_back(2.0 * i + 1.0);
    }
    CHECK(pearson(make(x, y)) == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> neg;
    for (double v : x) neg.push_back(-v);
    CHECK(pearson(make(x, neg)) == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK(pearson(make({1, 2, 3, 4}, {1, 3, 2, 4})) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK_THROWS_AS(pearson(make({1, 1, 1}, {1, 2, 3})), DegenerateInputError);
}

TEST_CASE("spearman on exact relations") {
    CHECK(spearman(make({1, 4, 9, 16, 25}, {2, 3, 5, 7, 11})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spearman(make({1, 2, 3, 4}, {9, 7, 5, 3})) == doctest::Approx(-1.0).epsilon(1e-12));
    // d^2 = 4 -> 1 - 6*4/(5*24) via the tie-free closed form
    CHECK(spearman(make({1, 2, 3, 4, 5}, {1, 3, 2, 5, 4})) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("kendall on exact relations") {
    CHECK(kendall(make({1, 2, 3, 4}, {10, 20, 30, 40})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kendall(make({1, 2, 3, 4}, {4, 3, 2, 1})) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(kendall(make({1, 2, 3}, {1, 3, 2})) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(kendall(make({2, 2, 2}, {1, 2, 3})), DegenerateInputError);
}

TEST_CASE("rank statistics match brute-force oracles, ties included") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<std::size_t> len(3, 20);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = len(rng);
        const bool ties = trial % 2 == 0;
        const std::vector<double> x = random_vector(rng, n, ties);
        const std::vector<double> y = random_vector(rng, n, ties);

        bool x_const = true, y_const = true;
        for (double v : x) x_const &= v == x[0];
        for (double v : y) y_const &= v == y[0];
        if (x_const || y_const) continue;

        CHECK(std::abs(spearman(make(x, y)) - oracle::naive_spearman(x, y)) < 1e-12);
        CHECK(std::abs(kendall(make(x, y)) - oracle::naive_kendall(x, y)) < 1e-12);
        CHECK(std::abs(pearson(make(x, y)) - oracle::naive_pearson(x, y)) < 1e-12);
    }
}

TEST_CASE("rank statistics are invariant under strictly increasing transforms") {
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> d(0.1, 4.0);
    std::vector<double> x(40), y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        x[i] = d(rng);
        y[i] = d(rng);
    }
    const double s0 = spearman(make(x, y));
    const double k0 = kendall(make(x, y));

    std::vector<double> x_cubed, x_pow25;
    for (double v : x) {
        x_cubed.push_back(v * v * v);
        x_pow25.push_back(std::pow(v, 25.0));
    }
    CHECK(spearman(make(x_cubed, y)) == s0);
    CHECK(kendall(make(x_cubed, y)) == k0);
    CHECK(spearman(make(x_pow25, y)) == s0);
    CHECK(kendall(make(x_pow25, y)) == k0);
}

TEST_CASE("paired sample validation") {
    CHECK_THROWS_AS(pearson(make({1, 2}, {1, 2})), DimensionError);
    CHECK_THROWS_AS(pearson(make({1, 2, 3}, {1, 2})), DimensionError);
    CHECK_THROWS_AS(pearson(make({1, 2, std::nan("")}, {1, 2, 3})), ParameterError);
}

TEST_CASE("logistic model reduces to affine when b2 = 0") {
    LogisticFit fit;
    fit.beta = {5.0, 0.0, 1.0, 0.25, 3.0};
    fit.model = LogisticModel::Vqeg;
    for (double x : {-2.0, 0.0, 1.5, 10.0})
        CHECK(logistic_eval(fit, x) == doctest::Approx(0.25 * x + 3.0).epsilon(1e-12));
}

TEST_CASE("fit recovers a noise-free logistic relation") {
    const std::array<double, 5> truth{1.0, 0.5, 0.0, 0.1, 2.0};
    std::vector<double> x, y;
    for (int i = 0; i < 60; ++i) {
        const double v = -6.0 + 0.2 * i;
        x.push_back(v);
        y.push_back(vqeg_curve(truth, v));
    }
    const LogisticFit fit = fit_logistic(make(x, y));
    CHECK(fit.residual_rmse < 1e-6);
    CHECK(fit.converged);
}

TEST_CASE("perfectly linear data is fit exactly") {
    std::vector<double> x, y;
    for (int i = 0; i < 30; ++i) {
        x.push_back(0.1 * i);
        y.push_back(3.0 * 0.1 * i);
    }
    const LogisticFit fit = fit_logistic(make(x, y));
    CHECK(fit.residual_rmse < 1e-8);

    const RegressionResult reg = plcc_rmse_after_regression(make(x, y));
    CHECK(reg.plcc == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("post-regression PLCC linearizes a monotone cubic") {
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
        const double v = i / 49.0;
        x.push_back(v);
        y.push_back(v * v * v);
    }
    const RegressionResult reg = plcc_rmse_after_regression(make(x, y));
    CHECK(reg.plcc > 0.999);
    CHECK(reg.rmse < 1e-3);  // range(MOS) = 1
}

TEST_CASE("regression leaves already-linear data unchanged") {
    std::mt19937 rng(107);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<double> x, y;
    for (int i = 0; i < 40; ++i) {
        x.push_back(d(rng));
        y.push_back(2.0 * x.back() + 0.5);
    }
    const double before = pearson(make(x, y));
    const RegressionResult reg = plcc_rmse_after_regression(make(x, y));
    CHECK(reg.plcc == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("shuffled pairing carries no signal") {
    std::mt19937 rng(109);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<double> x(100), y(100);
    for (int i = 0; i < 100; ++i) {
        x[i] = d(rng);
        y[i] = d(rng);
    }
    const RegressionResult reg = plcc_rmse_after_regression(make(x, y));
    CHECK(std::abs(reg.plcc) < 0.3);
}

TEST_CASE("logistic fit never loses to the affine fit") {
    std::mt19937 rng(113);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(25), y(25);
        for (int i = 0; i < 25; ++i) {
            x[i] = d(rng);
            y[i] = d(rng) + 0.5 * x[i];
        }
        const LogisticFit fit = fit_logistic(make(x, y));
        CHECK(fit.residual_rmse <= affine_ols_rmse(x, y) + 1e-12);
    }
}

TEST_CASE("the literal-print variant fits its own data") {
    const std::array<double, 5> truth{2.0, 1.5, 0.5, 0.3, -1.0};
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
        const double v = -3.0 + 0.12 * i;
        x.push_back(v);
        y.push_back(truth[0] * (1.0 - 1.0 / (2.0 + std::exp(truth[1] * (v - truth[2])))) +
                    truth[3] * v + truth[4]);
    }
    const LogisticFit fit = fit_logistic(make(x, y), std::nullopt, LogisticModel::LiteralPrint);
    CHECK(fit.model == LogisticModel::LiteralPrint);
    CHECK(fit.residual_rmse < 1e-6);
}

TEST_CASE("fit is deterministic given an explicit init") {
    std::mt19937 rng(127);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<double> x(30), y(30);
    for (int i = 0; i < 30; ++i) {
        x[i] = d(rng);
        y[i] = x[i] * x[i] + 0.05 * d(rng);
    }
    const std::array<double, 5> init{1.0, 1.0, 0.5, 0.0, 0.0};
    const LogisticFit a = fit_logistic(make(x, y), init);
    const LogisticFit b = fit_logistic(make(x, y), init);
    for (int i = 0; i < 5; ++i) CHECK(a.beta[i] == b.beta[i]);
    CHECK(a.residual_rmse == b.residual_rmse);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("fit requires five samples") {
    CHECK_THROWS_AS(fit_logistic(make({1, 2, 3, 4}, {1, 2, 3, 4})), DimensionError);
}
