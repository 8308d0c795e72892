#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bowley/error.hpp"
#include "bowley/lsq.hpp"
#include "bowley/series.hpp"

namespace bowley {

/// x(t) = x0 * exp(b t), fitted as ln x = c + b t.
struct ExpFit {
    double b = 0.0;
    double x0 = 1.0;
    double c = 0.0;
    double rss_log = 0.0;
    double rss_raw = 0.0;

    static ExpFit from_rate(double b, double x0) { return ExpFit{b, x0, std::log(x0), 0.0, 0.0}; }
};

/// x(t) = N x0 / (x0 + (N - x0) exp(-b t)); solves x' = b x (1 - x/N), x(0) = x0.
struct LogisticFit {
    double b = 0.0;
    double x0 = 1.0;
    double N = 2.0;
    double rss = 0.0;
    bool converged = false;
    /// Carrying capacity is weakly identified: the fit did not converge or
    /// N ended above 10x the largest observation.
    bool near_degenerate = false;
    int iterations = 0;
    Termination termination = Termination::MaxIterations;

    static LogisticFit from_params(double b, double x0, double N) {
        LogisticFit f;
        f.b = b;
        f.x0 = x0;
        f.N = N;
        f.converged = true;
        return f;
    }
};

struct LogisticInit {
    double b;
    double x0;
    double N;
};

/// One fit per panel series, all on the panel's time index.
template <class Fit>
struct TripleFit {
    Fit labor;
    Fit capital;
    Fit production;
};

inline double eval_exponential(const ExpFit& fit, double t) { return fit.x0 * std::exp(fit.b * t); }

inline double eval_logistic(const LogisticFit& fit, double t) {
    return fit.N * fit.x0 / (fit.x0 + (fit.N - fit.x0) * std::exp(-fit.b * t));
}

namespace detail {

inline void require_positive(std::span<const double> values, const char* who) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw Error(ErrorCode::NonPositiveValue,
                        std::string(who) + ": value at index " + std::to_string(i) + " must be positive and finite");
        }
    }
}

inline std::vector<double> unit_times(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i);
    return t;
}

}  // namespace detail

inline ExpFit fit_exponential(std::span<const double> ts, std::span<const double> series) {
    detail::require_positive(series, "fit_exponential");
    std::vector<double> logs(series.size());
    std::transform(series.begin(), series.end(), logs.begin(), [](double v) { return std::log(v); });
    const LinearFit line = linear_fit(ts, logs);

    ExpFit fit;
    fit.b = line.slope;
    fit.c = line.intercept;
    fit.x0 = std::exp(line.intercept);
    fit.rss_log = line.rss;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double r = series[i] - eval_exponential(fit, ts[i]);
        fit.rss_raw += r * r;
    }
    return fit;
}

/// Fit on t = 0, 1, ..., n-1.
inline ExpFit fit_exponential(std::span<const double> series) {
    const auto ts = detail::unit_times(series.size());
    return fit_exponential(ts, series);
}

/// Raw-scale least squares for (b, x0, N). Without `init`, the warm start is
/// N = 1.05 max(series), b = slope of ln(x / (N - x)) against t, and x0 the
/// first observation (or the logit intercept when t does not start at 0).
inline LogisticFit fit_logistic(std::span<const double> ts, std::span<const double> series,
                                std::optional<LogisticInit> init = std::nullopt, const NlsOptions& opts = {}) {
    detail::require_positive(series, "fit_logistic");
    if (ts.size() != series.size()) throw Error(ErrorCode::LengthMismatch, "fit_logistic: time and value lengths differ");
    if (series.size() < 3) throw Error(ErrorCode::DegenerateDesign, "fit_logistic: need at least 3 points");
    const double peak = *std::max_element(series.begin(), series.end());

    LogisticInit start{};
    if (init) {
        start = *init;
        if (!(start.x0 > 0.0) || !(start.x0 < start.N)) {
            throw Error(ErrorCode::InitOutOfRange, "fit_logistic: initial guess needs 0 < x0 < N");
        }
        if (peak >= start.N) {
            throw Error(ErrorCode::InitOutOfRange, "fit_logistic: initial N must exceed the largest observation");
        }
    } else {
        start.N = 1.05 * peak;
        std::vector<double> logits(series.size());
        for (std::size_t i = 0; i < series.size(); ++i) logits[i] = std::log(series[i] / (start.N - series[i]));
        const LinearFit line = linear_fit(ts, logits);
        start.b = line.slope;
        start.x0 = ts.front() == 0.0 ? series.front() : start.N / (1.0 + std::exp(-line.intercept));
    }

    const std::size_t n = series.size();
    auto residual = [&](const Vector& p) {
        const double b = p[0], x0 = p[1], cap = p[2];
        Vector r(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const double denom = x0 + (cap - x0) * std::exp(-b * ts[i]);
            r[static_cast<Eigen::Index>(i)] = cap * x0 / denom - series[i];
        }
        return r;
    };
    const JacobianFn jacobian = [&](const Vector& p) {
        const double b = p[0], x0 = p[1], cap = p[2];
        Matrix J(static_cast<Eigen::Index>(n), 3);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = static_cast<Eigen::Index>(i);
            const double e = std::exp(-b * ts[i]);
            const double denom = x0 + (cap - x0) * e;
            const double d2 = denom * denom;
            J(row, 0) = cap * x0 * (cap - x0) * ts[i] * e / d2;
            J(row, 1) = cap * cap * e / d2;
            J(row, 2) = x0 * x0 * (1.0 - e) / d2;
        }
        return J;
    };

    Vector p0(3);
    p0 << start.b, start.x0, start.N;
    const NlsResult solved = nls_fit(residual, jacobian, p0, opts);

    LogisticFit fit;
    fit.b = solved.parameters[0];
    fit.x0 = solved.parameters[1];
    fit.N = solved.parameters[2];
    fit.rss = solved.rss;
    fit.converged = solved.converged;
    fit.iterations = solved.iterations;
    fit.termination = solved.termination;
    if (!(fit.b > 0.0) || !(fit.x0 > 0.0) || !(fit.x0 < fit.N)) {
        throw Error(ErrorCode::DegenerateFit, "fit_logistic: fitted parameters leave the region b > 0, 0 < x0 < N");
    }
    fit.near_degenerate = !fit.converged || fit.N > 10.0 * peak;
    return fit;
}

/// Fit on t = 0, 1, ..., n-1.
inline LogisticFit fit_logistic(std::span<const double> series, std::optional<LogisticInit> init = std::nullopt,
                                const NlsOptions& opts = {}) {
    const auto ts = detail::unit_times(series.size());
    return fit_logistic(ts, series, init, opts);
}

inline TripleFit<ExpFit> fit_exponential_triple(const EconPanel& panel) {
    const auto ts = panel.times();
    return {fit_exponential(ts, panel.labor), fit_exponential(ts, panel.capital), fit_exponential(ts, panel.production)};
}

inline TripleFit<LogisticFit> fit_logistic_triple(const EconPanel& panel, std::optional<LogisticInit> init = std::nullopt,
                                                  const NlsOptions& opts = {}) {
    const auto ts = panel.times();
    return {fit_logistic(ts, panel.labor, init, opts), fit_logistic(ts, panel.capital, init, opts),
            fit_logistic(ts, panel.production, init, opts)};
}

}  // namespace bowley
