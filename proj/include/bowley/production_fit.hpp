#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bowley/error.hpp"
#include "bowley/invariants.hpp"
#include "bowley/lsq.hpp"
#include "bowley/series.hpp"

namespace bowley {

// Production-function estimation on a panel: every objective here is the
// raw-scale residual sum of squares against observed production.

struct CobbDouglasFit {
    CobbDouglas cd;
    double rss = 0.0;
    bool converged = true;
    int iterations = 0;
};

struct LogisticProductionFit {
    LogisticProduction lp;
    double rss = 0.0;
    bool converged = true;
    int iterations = 0;
};

template <class Surface>
double production_rss(const EconPanel& panel, Surface&& surface) {
    double rss = 0.0;
    for (std::size_t i = 0; i < panel.size(); ++i) {
        const double r = panel.production[i] - surface(panel.labor[i], panel.capital[i]);
        rss += r * r;
    }
    return rss;
}

namespace detail {

inline Vector ols(const Matrix& design, const Vector& y) {
    const auto qr = design.colPivHouseholderQr();
    if (qr.rank() < design.cols()) throw Error(ErrorCode::DegenerateDesign, "regressors are collinear");
    return qr.solve(y);
}

inline Eigen::Index rows_of(const EconPanel& panel) { return static_cast<Eigen::Index>(panel.size()); }

}  // namespace detail

/// Total factor productivity for fixed exponents; closed form
/// A = sum(Y g) / sum(g^2) with g = L^alpha K^beta.
inline CobbDouglasFit fit_tfp(const EconPanel& panel, double alpha, double beta) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < panel.size(); ++i) {
        const double g = std::pow(panel.labor[i], alpha) * std::pow(panel.capital[i], beta);
        num += panel.production[i] * g;
        den += g * g;
    }
    if (!(den > 0.0)) throw Error(ErrorCode::DegenerateDesign, "fit_tfp: empty panel");
    CobbDouglasFit fit;
    fit.cd = {num / den, alpha, beta};
    fit.rss = production_rss(panel, [&](double L, double K) { return eval_cobb_douglas(fit.cd, L, K); });
    return fit;
}

/// Unconstrained (A, alpha, beta). Warm start: OLS of ln Y on (1, ln L, ln K).
inline CobbDouglasFit fit_cobb_douglas(const EconPanel& panel, const NlsOptions& opts = {}) {
    const Eigen::Index n = detail::rows_of(panel);
    Matrix design(n, 3);
    Vector logy(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        design(i, 0) = 1.0;
        design(i, 1) = std::log(panel.labor[k]);
        design(i, 2) = std::log(panel.capital[k]);
        logy[i] = std::log(panel.production[k]);
    }
    const Vector start = detail::ols(design, logy);

    auto residual = [&](const Vector& p) {
        Vector r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            r[i] = std::exp(p[0] + p[1] * design(i, 1) + p[2] * design(i, 2)) - panel.production[static_cast<std::size_t>(i)];
        }
        return r;
    };
    const JacobianFn jacobian = [&](const Vector& p) {
        Matrix J(n, 3);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double model = std::exp(p[0] + p[1] * design(i, 1) + p[2] * design(i, 2));
            J(i, 0) = model;
            J(i, 1) = model * design(i, 1);
            J(i, 2) = model * design(i, 2);
        }
        return J;
    };
    const NlsResult solved = nls_fit(residual, jacobian, start, opts);

    CobbDouglasFit fit;
    fit.cd = {std::exp(solved.parameters[0]), solved.parameters[1], solved.parameters[2]};
    fit.rss = solved.rss;
    fit.converged = solved.converged;
    fit.iterations = solved.iterations;
    return fit;
}

/// Constant returns imposed: beta = 1 - alpha, parameters (A, alpha).
inline CobbDouglasFit fit_cobb_douglas_crs(const EconPanel& panel, const NlsOptions& opts = {}) {
    const Eigen::Index n = detail::rows_of(panel);
    Matrix design(n, 2);
    Vector logyk(n);
    Vector logl(n), logk(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        logl[i] = std::log(panel.labor[k]);
        logk[i] = std::log(panel.capital[k]);
        design(i, 0) = 1.0;
        design(i, 1) = logl[i] - logk[i];
        logyk[i] = std::log(panel.production[k]) - logk[i];
    }
    const Vector start = detail::ols(design, logyk);

    auto residual = [&](const Vector& p) {
        Vector r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            r[i] = std::exp(p[0] + p[1] * logl[i] + (1.0 - p[1]) * logk[i]) - panel.production[static_cast<std::size_t>(i)];
        }
        return r;
    };
    const JacobianFn jacobian = [&](const Vector& p) {
        Matrix J(n, 2);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double model = std::exp(p[0] + p[1] * logl[i] + (1.0 - p[1]) * logk[i]);
            J(i, 0) = model;
            J(i, 1) = model * (logl[i] - logk[i]);
        }
        return J;
    };
    const NlsResult solved = nls_fit(residual, jacobian, start, opts);

    CobbDouglasFit fit;
    fit.cd = {std::exp(solved.parameters[0]), solved.parameters[1], 1.0 - solved.parameters[1]};
    fit.rss = solved.rss;
    fit.converged = solved.converged;
    fit.iterations = solved.iterations;
    return fit;
}

/// Fits (alpha, beta, C) of the logistic production function with the
/// capacities held fixed. With `crs`, beta = 1 - alpha.
///
/// Warm start: for Y < N_Y the model linearizes to
///   ln(Y / (N_Y - Y)) = -ln C + alpha ln(L / |N_L - L|) + beta ln(K / |N_K - K|),
/// solved by OLS over the rows where every term is defined; otherwise
/// (alpha, beta, C) = (0.5, 0.5, 1).
inline LogisticProductionFit fit_logistic_production(const EconPanel& panel, double N_L, double N_K, double N_Y,
                                                     bool crs = false, const NlsOptions& opts = {}) {
    if (!(N_L > 0.0) || !(N_K > 0.0) || !(N_Y > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "fit_logistic_production: capacities must be > 0");
    }
    const Eigen::Index n = detail::rows_of(panel);
    std::vector<double> ll, lk, ly;
    for (std::size_t i = 0; i < panel.size(); ++i) {
        const double L = panel.labor[i], K = panel.capital[i], Y = panel.production[i];
        if (Y >= N_Y || L == N_L || K == N_K) continue;
        ll.push_back(std::log(L / std::abs(N_L - L)));
        lk.push_back(std::log(K / std::abs(N_K - K)));
        ly.push_back(std::log(Y / (N_Y - Y)));
    }
    const auto m = static_cast<Eigen::Index>(ly.size());
    const Eigen::Index k = crs ? 2 : 3;
    Vector start(k);
    start.setConstant(0.5);
    start[0] = 0.0;
    if (m > k) {
        Matrix design(m, k);
        Vector rhs(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto j = static_cast<std::size_t>(i);
            design(i, 0) = -1.0;
            if (crs) {
                design(i, 1) = ll[j] - lk[j];
                rhs[i] = ly[j] - lk[j];
            } else {
                design(i, 1) = ll[j];
                design(i, 2) = lk[j];
                rhs[i] = ly[j];
            }
        }
        // Collinear logits (e.g. noise-free logistic flows) keep the default start.
        try {
            start = detail::ols(design, rhs);
        } catch (const Error&) {
        }
    }

    auto unpack = [&](const Vector& p) {
        LogisticProduction lp{N_L, N_K, N_Y, std::exp(p[0]), p[1], crs ? 1.0 - p[1] : p[2]};
        return lp;
    };
    auto residual = [&](const Vector& p) {
        const LogisticProduction lp = unpack(p);
        Vector r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(i);
            r[i] = eval_logistic_production(lp, panel.labor[j], panel.capital[j]) - panel.production[j];
        }
        return r;
    };
    const NlsResult solved = nls_fit(residual, start, opts);

    LogisticProductionFit fit;
    fit.lp = unpack(solved.parameters);
    fit.rss = solved.rss;
    fit.converged = solved.converged;
    fit.iterations = solved.iterations;
    return fit;
}

}  // namespace bowley
