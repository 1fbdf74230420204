#pragma once

#include <array>
#include <optional>
#include <vector>

#include "persim/errors.hpp"

namespace persim {

// Objective metric scores paired with subjective MOS/DMOS values.
struct PairedSamples {
    std::vector<double> objective;
    std::vector<double> subjective;

    std::size_t size() const { return objective.size(); }
    void validate(std::size_t min_n = 3) const;
};

double pearson(const PairedSamples& s);

// Pearson correlation of fractional ranks; ties get average ranks.
double spearman(const PairedSamples& s);

// Kendall tau-b with tie corrections, computed by sort-and-merge inversion
// counting (the per-pair oracle lives in the tests).
double kendall(const PairedSamples& s);

enum class LogisticModel {
    Vqeg,          // b1*(1/2 - 1/(1+exp(b2*(x-b3)))) + b4*x + b5
    LiteralPrint,  // b1*(1 - 1/(2+exp(b2*(x-b3)))) + b4*x + b5
};

struct LogisticFit {
    std::array<double, 5> beta{};
    double residual_rmse = 0.0;
    bool converged = false;
    int iterations = 0;
    LogisticModel model = LogisticModel::Vqeg;
};

double logistic_eval(const LogisticFit& fit, double x);

// Least-squares fit of the five-parameter monotonic map, damped Gauss-Newton
// with analytic Jacobian and multi-start initialization. Non-convergence is
// reported through the flag, never thrown.
LogisticFit fit_logistic(const PairedSamples& s,
                         const std::optional<std::array<double, 5>>& init = std::nullopt,
                         LogisticModel model = LogisticModel::Vqeg);

struct RegressionResult {
    double plcc = 0.0;
    double rmse = 0.0;
    LogisticFit fit;
};

// Maps objective scores through the fitted curve, then Pearson and RMSE
// against the subjective scores.
RegressionResult plcc_rmse_after_regression(const PairedSamples& s,
                                            LogisticModel model = LogisticModel::Vqeg);

}  // namespace persim
