#include "persim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace persim {

void PairedSamples::validate(std::size_t min_n) const {
    if (objective.size() != subjective.size())
        throw DimensionError("PairedSamples: objective/subjective lengths differ");
    if (objective.size() < min_n)
        throw DimensionError("PairedSamples: need at least " + std::to_string(min_n) +
                             " samples, got " + std::to_string(objective.size()));
    for (const auto& seq : {objective, subjective})
        for (double v : seq)
            if (!std::isfinite(v))
                throw ParameterError("PairedSamples: samples must be finite");
}

namespace {

double pearson_of(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInputError("pearson: constant sequence");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

// Strict inversions in v (pairs i<j with v[i] > v[j]) by merge counting.
long long count_inversions(std::vector<double>& v, std::vector<double>& scratch, std::size_t lo,
                           std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    long long inv = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (v[a] <= v[b]) {
            scratch[out++] = v[a++];
        } else {
            inv += static_cast<long long>(mid - a);
            scratch[out++] = v[b++];
        }
    }
    while (a < mid) scratch[out++] = v[a++];
    while (b < hi) scratch[out++] = v[b++];
    std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
    return inv;
}

long long tie_pair_count(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    long long ties = 0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
        const long long t = static_cast<long long>(j - i + 1);
        ties += t * (t - 1) / 2;
        i = j + 1;
    }
    return ties;
}

}  // namespace

double pearson(const PairedSamples& s) {
    s.validate();
    return pearson_of(s.objective, s.subjective);
}

double spearman(const PairedSamples& s) {
    s.validate();
    return pearson_of(fractional_ranks(s.objective), fractional_ranks(s.subjective));
}

double kendall(const PairedSamples& s) {
    s.validate();
    const std::size_t n = s.size();
    const std::vector<double>& x = s.objective;
    const std::vector<double>& y = s.subjective;

    // Sort by (x asc, y asc); pairs inside an x-tie group then contribute no
    // strict y-inversion, so inversion count == discordant pair count.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    long long ties_x = 0, ties_xy = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const long long t = static_cast<long long>(j - i + 1);
        ties_x += t * (t - 1) / 2;
        std::size_t k = i;
        while (k <= j) {
            std::size_t l = k;
            while (l + 1 <= j && y[order[l + 1]] == y[order[k]]) ++l;
            const long long u = static_cast<long long>(l - k + 1);
            ties_xy += u * (u - 1) / 2;
            k = l + 1;
        }
        i = j + 1;
    }

    std::vector<double> y_seq(n);
    for (std::size_t k = 0; k < n; ++k) y_seq[k] = y[order[k]];
    std::vector<double> scratch(n);
    const long long discordant = count_inversions(y_seq, scratch, 0, n);

    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    const long long ties_y = tie_pair_count(y);
    const long long con_minus_dis = total - ties_x - ties_y + ties_xy - 2 * discordant;

    const double denom = std::sqrt(static_cast<double>(total - ties_x)) *
                         std::sqrt(static_cast<double>(total - ties_y));
    if (denom == 0.0)
        throw DegenerateInputError("kendall: all samples tied");
    return std::clamp(con_minus_dis / denom, -1.0, 1.0);
}

namespace {

// Value and partials wrt (b1, b2, b3); the b4/b5 partials are x and 1.
struct ModelPoint {
    double value;
    double d1, d2, d3;
};

ModelPoint eval_model(const std::array<double, 5>& b, double x, LogisticModel model) {
    const double t = b[1] * (x - b[2]);
    ModelPoint p{};
    if (model == LogisticModel::Vqeg) {
        // g = 1/(1 + exp(t)), computed without overflow
        double g;
        if (t >= 0.0) {
            const double e = std::exp(-t);
            g = e / (1.0 + e);
        } else {
            g = 1.0 / (1.0 + std::exp(t));
        }
        const double gg = g * (1.0 - g);
        p.value = b[0] * (0.5 - g) + b[3] * x + b[4];
        p.d1 = 0.5 - g;
        p.d2 = b[0] * gg * (x - b[2]);
        p.d3 = -b[0] * b[1] * gg;
    } else {
        // invD = 1/(2 + exp(t)); exp(t)/D^2 == invD*(1 - 2*invD)
        double inv_d;
        if (t >= 0.0) {
            const double e = std::exp(-t);
            inv_d = e / (2.0 * e + 1.0);
        } else {
            inv_d = 1.0 / (2.0 + std::exp(t));
        }
        const double ed2 = inv_d * (1.0 - 2.0 * inv_d);
        p.value = b[0] * (1.0 - inv_d) + b[3] * x + b[4];
        p.d1 = 1.0 - inv_d;
        p.d2 = b[0] * ed2 * (x - b[2]);
        p.d3 = -b[0] * b[1] * ed2;
    }
    return p;
}

double sse_of(const std::array<double, 5>& b, const std::vector<double>& x,
              const std::vector<double>& y, LogisticModel model) {
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = eval_model(b, x[i], model).value - y[i];
        sse += r * r;
    }
    return sse;
}

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve5(double a[5][5], double rhs[5], double out[5]) {
    int perm[5] = {0, 1, 2, 3, 4};
    for (int col = 0; col < 5; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 5; ++r)
            if (std::abs(a[perm[r]][col]) > std::abs(a[perm[pivot]][col])) pivot = r;
        std::swap(perm[col], perm[pivot]);
        const double diag = a[perm[col]][col];
        if (std::abs(diag) < 1e-300) return false;
        for (int r = col + 1; r < 5; ++r) {
            const double f = a[perm[r]][col] / diag;
            if (f == 0.0) continue;
            for (int c = col; c < 5; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    for (int row = 4; row >= 0; --row) {
        double acc = rhs[perm[row]];
        for (int c = row + 1; c < 5; ++c) acc -= a[perm[row]][c] * out[c];
        out[row] = acc / a[perm[row]][row];
    }
    return true;
}

struct LmOutcome {
    std::array<double, 5> beta{};
    double sse = 0.0;
    bool converged = false;
    int iterations = 0;
};

LmOutcome run_lm(std::array<double, 5> beta, const std::vector<double>& x,
                 const std::vector<double>& y, LogisticModel model) {
    constexpr int kMaxIter = 500;
    constexpr double kGtol = 1e-10;

    const std::size_t n = x.size();
    double lambda = 1e-3;
    double sse = sse_of(beta, x, y, model);
    LmOutcome out{beta, sse, false, 0};

    for (int iter = 1; iter <= kMaxIter; ++iter) {
        out.iterations = iter;

        double jtj[5][5] = {};
        double jtr[5] = {};
        double col_sq[5] = {};
        for (std::size_t i = 0; i < n; ++i) {
            const ModelPoint p = eval_model(beta, x[i], model);
            const double jac[5] = {p.d1, p.d2, p.d3, x[i], 1.0};
            const double r = p.value - y[i];
            for (int a = 0; a < 5; ++a) {
                jtr[a] += jac[a] * r;
                col_sq[a] += jac[a] * jac[a];
                for (int b = a; b < 5; ++b) jtj[a][b] += jac[a] * jac[b];
            }
        }
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < a; ++b) jtj[a][b] = jtj[b][a];

        // gradient criteria: relative (cosine of residual against each column)
        // for the noisy regime, absolute for near-perfect fits where the
        // residual direction is numerical noise
        const double rnorm = std::sqrt(sse);
        double gmax_rel = 0.0;
        bool g_small_abs = true;
        for (int a = 0; a < 5; ++a) {
            const double cn = std::sqrt(col_sq[a]);
            if (cn > 0.0 && rnorm > 0.0)
                gmax_rel = std::max(gmax_rel, std::abs(jtr[a]) / (cn * rnorm));
            g_small_abs = g_small_abs && std::abs(jtr[a]) <= 1e-8 * (1.0 + cn);
        }
        if (rnorm == 0.0 || gmax_rel <= kGtol || g_small_abs) {
            out.converged = true;
            break;
        }

        bool stepped = false;
        while (lambda <= 1e14) {
            double damped[5][5];
            double rhs[5];
            for (int a = 0; a < 5; ++a) {
                for (int b = 0; b < 5; ++b) damped[a][b] = jtj[a][b];
                damped[a][a] += lambda * std::max(jtj[a][a], 1e-12);
                rhs[a] = -jtr[a];
            }
            double delta[5];
            if (solve5(damped, rhs, delta)) {
                std::array<double, 5> cand = beta;
                for (int a = 0; a < 5; ++a) cand[a] += delta[a];
                const double cand_sse = sse_of(cand, x, y, model);
                if (std::isfinite(cand_sse) && cand_sse < sse) {
                    beta = cand;
                    sse = cand_sse;
                    lambda = std::max(lambda / 3.0, 1e-12);
                    stepped = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        out.beta = beta;
        out.sse = sse;
        if (!stepped) break;  // damping exhausted, no further progress
    }
    out.beta = beta;
    out.sse = sse;
    return out;
}

}  // namespace

double logistic_eval(const LogisticFit& fit, double x) {
    return eval_model(fit.beta, x, fit.model).value;
}

LogisticFit fit_logistic(const PairedSamples& s, const std::optional<std::array<double, 5>>& init,
                         LogisticModel model) {
    s.validate(5);
    const std::vector<double>& x = s.objective;
    const std::vector<double>& y = s.subjective;
    const std::size_t n = x.size();

    std::vector<std::array<double, 5>> starts;
    if (init) {
        starts.push_back(*init);
    } else {
        std::vector<double> sorted = x;
        std::sort(sorted.begin(), sorted.end());
        const double med = sorted[n / 2];

        const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
        const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
        const double intercept = my - slope * mx;
        const double sd = std::sqrt(sxx / n);
        const double b2 = sd > 0.0 ? 1.0 / sd : 1.0;
        const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
        const double yrange = *ymax - *ymin;

        starts.push_back({yrange, b2, med, slope, intercept});
        starts.push_back({yrange, -b2, med, slope, intercept});
        // affine start: nested model, guarantees the fit never loses to OLS
        starts.push_back({0.0, b2, med, slope, intercept});
    }

    LmOutcome best;
    bool have_best = false;
    int total_iter = 0;
    for (const auto& b0 : starts) {
        const LmOutcome r = run_lm(b0, x, y, model);
        total_iter += r.iterations;
        if (!have_best || r.sse < best.sse) {
            best = r;
            have_best = true;
        }
    }

    LogisticFit fit;
    fit.beta = best.beta;
    fit.residual_rmse = std::sqrt(best.sse / static_cast<double>(n));
    fit.converged = best.converged;
    fit.iterations = total_iter;
    fit.model = model;
    return fit;
}

RegressionResult plcc_rmse_after_regression(const PairedSamples& s, LogisticModel model) {
    s.validate(5);
    RegressionResult res;
    res.fit = fit_logistic(s, std::nullopt, model);

    const std::size_t n = s.size();
    std::vector<double> mapped(n);
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mapped[i] = logistic_eval(res.fit, s.objective[i]);
        const double d = mapped[i] - s.subjective[i];
        sse += d * d;
    }
    res.plcc = pearson_of(mapped, s.subjective);
    res.rmse = std::sqrt(sse / static_cast<double>(n));
    return res;
}

}  // namespace persim
