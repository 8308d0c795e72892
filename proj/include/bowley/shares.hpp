#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bowley/error.hpp"
#include "bowley/growth.hpp"
#include "bowley/invariants.hpp"

namespace bowley {

/// Scaling generator a K d/dK + b L d/dL + c Y d/dY.
struct Generator {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
};

/// First-order jet coordinates (K, L, Y, Y_K, Y_L). K, L, Y must be positive;
/// the partials may take any sign.
struct JetPoint {
    double K = 1.0;
    double L = 1.0;
    double Y = 1.0;
    double Y_K = 0.0;
    double Y_L = 0.0;

    void validate() const {
        if (!(K > 0.0) || !(L > 0.0) || !(Y > 0.0)) {
            throw Error(ErrorCode::NonPositiveInput, "JetPoint: K, L and Y must be > 0");
        }
    }
};

enum class ShareMethod { Analytic, Invariants, NumericDerivative };

constexpr const char* to_string(ShareMethod m) noexcept {
    switch (m) {
        case ShareMethod::Analytic: return "Analytic";
        case ShareMethod::Invariants: return "Invariants";
        case ShareMethod::NumericDerivative: return "NumericDerivative";
    }
    return "Unknown";
}

struct ShareReport {
    double s_L = 0.0;
    double s_K = 0.0;
    ShareMethod method = ShareMethod::Analytic;
};

/// Components of the first prolongation at p, in the order
/// (d/dK, d/dL, d/dY, d/dY_K, d/dY_L).
inline std::array<double, 5> prolonged_coefficients(const Generator& g, const JetPoint& p) {
    return {g.a * p.K, g.b * p.L, g.c * p.Y, (g.c - g.a) * p.Y_K, (g.c - g.b) * p.Y_L};
}

/// I1 = L K^{-b/a}, I2 = Y K^{-c/a}, I3 = Y_K K^{(a-c)/a}, I4 = Y_L K^{(b-c)/a}.
inline std::array<double, 4> fundamental_invariants(const Generator& g, const JetPoint& p) {
    if (g.a == 0.0) throw Error(ErrorCode::ZeroScaleCoefficient, "fundamental_invariants: coefficient a must be nonzero");
    p.validate();
    const double lk = std::log(p.K);
    return {p.L * std::exp(-g.b / g.a * lk), p.Y * std::exp(-g.c / g.a * lk), p.Y_K * std::exp((g.a - g.c) / g.a * lk),
            p.Y_L * std::exp((g.b - g.c) / g.a * lk)};
}

/// s_L = I1 I4 / I2 and s_K = I3 / I2; the generator coefficients cancel.
inline ShareReport shares_from_invariants(const std::array<double, 4>& I) {
    if (I[1] == 0.0) throw Error(ErrorCode::ZeroDenominator, "shares_from_invariants: I2 is zero");
    return {I[0] * I[3] / I[1], I[2] / I[1], ShareMethod::Invariants};
}

/// Elasticities of f(L, K) by central differences with relative step h.
template <class Surface>
ShareReport numeric_wage_share(Surface&& f, double L, double K, double h = 1e-6) {
    if (!(L > 0.0) || !(K > 0.0)) throw Error(ErrorCode::NonPositiveInput, "numeric_wage_share: L and K must be > 0");
    const double y = f(L, K);
    // Divide by the spacing of the rounded abscissae, not by 2 h L.
    const double l_hi = L + h * L, l_lo = L - h * L;
    const double k_hi = K + h * K, k_lo = K - h * K;
    const double y_l = (f(l_hi, K) - f(l_lo, K)) / (l_hi - l_lo);
    const double y_k = (f(L, k_hi) - f(L, k_lo)) / (k_hi - k_lo);
    const double s_l = y_l * L / y;
    const double s_k = y_k * K / y;
    if (!std::isfinite(s_l) || !std::isfinite(s_k)) {
        throw Error(ErrorCode::NonFiniteValue, "numeric_wage_share: surface not finite on the stencil");
    }
    return {s_l, s_k, ShareMethod::NumericDerivative};
}

/// Cobb-Douglas shares are the exponents themselves.
inline ShareReport cobb_douglas_shares(const CobbDouglas& cd) { return {cd.alpha, cd.beta, ShareMethod::Analytic}; }

/// s_L = alpha N_L / (N_L - L) * G / (G + L^alpha K^beta),
/// G = C |N_L - L|^alpha |N_K - K|^beta.
inline double analytic_logistic_share(const LogisticProduction& lp, double L, double K) {
    if (L == lp.N_L) throw Error(ErrorCode::AtCapacity, "analytic_logistic_share: L equals N_L");
    const double core = std::pow(L, lp.alpha) * std::pow(K, lp.beta);
    const double gap = lp.C * std::pow(std::abs(lp.N_L - L), lp.alpha) * std::pow(std::abs(lp.N_K - K), lp.beta);
    return lp.alpha * (lp.N_L / (lp.N_L - L)) * gap / (gap + core);
}

/// Both shares of the logistic production function in closed form.
inline ShareReport logistic_production_shares(const LogisticProduction& lp, double L, double K) {
    if (K == lp.N_K) throw Error(ErrorCode::AtCapacity, "logistic_production_shares: K equals N_K");
    const double s_l = analytic_logistic_share(lp, L, K);
    const double core = std::pow(L, lp.alpha) * std::pow(K, lp.beta);
    const double gap = lp.C * std::pow(std::abs(lp.N_L - L), lp.alpha) * std::pow(std::abs(lp.N_K - K), lp.beta);
    return {s_l, lp.beta * (lp.N_K / (lp.N_K - K)) * gap / (gap + core), ShareMethod::Analytic};
}

/// The logistic production function whose level set contains the three
/// fitted flows: capacities from the fits and
/// C = ((N_Y - Y0) / Y0) (L0 / (N_L - L0))^alpha (K0 / (N_K - K0))^beta.
/// Output equals the production flow along the input flows whenever
/// alpha b_L + beta b_K = b_Y.
inline LogisticProduction consistent_logistic_production(const TripleFit<LogisticFit>& fits, double alpha, double beta) {
    const auto& l = fits.labor;
    const auto& k = fits.capital;
    const auto& y = fits.production;
    const double C = ((y.N - y.x0) / y.x0) * std::pow(l.x0 / (l.N - l.x0), alpha) * std::pow(k.x0 / (k.N - k.x0), beta);
    return {l.N, k.N, y.N, C, alpha, beta};
}

namespace detail {
inline void require_usable(const TripleFit<LogisticFit>& fits) {
    if (!fits.labor.converged || !fits.capital.converged || !fits.production.converged) {
        throw Error(ErrorCode::DegenerateFit, "logistic_share_trajectory: every fit must have converged");
    }
    if (fits.labor.b == 0.0) throw Error(ErrorCode::DegenerateFit, "logistic_share_trajectory: labor growth rate is zero");
}
}  // namespace detail

/// Wage share along the logistic flows with an explicit labor elasticity:
///   s_L(t) = alpha (N_Y - Y0) e^{(b_L - b_Y) t} / (N_L - L0)
///            * (L0 + (N_L - L0) e^{-b_L t}) / (Y0 + (N_Y - Y0) e^{-b_Y t}).
/// Matches analytic_logistic_share() along the flows for the consistent
/// production function of any (alpha, beta) on the orthogonality line.
inline std::vector<double> logistic_share_trajectory(const TripleFit<LogisticFit>& fits, std::span<const double> t_grid,
                                                     double alpha) {
    detail::require_usable(fits);
    const auto& l = fits.labor;
    const auto& y = fits.production;
    std::vector<double> out(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        out[i] = alpha * ((y.N - y.x0) * std::exp((l.b - y.b) * t) / (l.N - l.x0)) *
                 ((l.x0 + (l.N - l.x0) * std::exp(-l.b * t)) / (y.x0 + (y.N - y.x0) * std::exp(-y.b * t)));
    }
    return out;
}

/// Same trajectory with the prefactor b_Y / b_L, the labor elasticity that
/// orthogonality forces when capital carries no weight (beta = 0).
inline std::vector<double> logistic_share_trajectory(const TripleFit<LogisticFit>& fits, std::span<const double> t_grid) {
    detail::require_usable(fits);
    return logistic_share_trajectory(fits, t_grid, fits.production.b / fits.labor.b);
}

struct ShareConstancy {
    double mean = 0.0;
    double max_abs_deviation = 0.0;
    /// (max - min) / |mean|; the bare range when the mean is zero.
    double relative_range = 0.0;
    std::vector<double> shares;
};

inline ShareConstancy summarize_shares(std::vector<double> shares) {
    ShareConstancy out;
    if (shares.empty()) throw Error(ErrorCode::EmptySeries, "share summary over an empty grid");
    const auto [lo, hi] = std::minmax_element(shares.begin(), shares.end());
    double offset = 0.0;
    for (double s : shares) offset += s - *lo;
    out.mean = *lo + offset / static_cast<double>(shares.size());
    for (double s : shares) out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(s - out.mean));
    const double range = *hi - *lo;
    out.relative_range = out.mean != 0.0 ? range / std::abs(out.mean) : range;
    out.shares = std::move(shares);
    return out;
}

/// Numeric wage share of `surface` sampled along (labor_flow(t), capital_flow(t)).
template <class Surface, class LaborFlow, class CapitalFlow>
ShareConstancy share_constancy_report(Surface&& surface, LaborFlow&& labor_flow, CapitalFlow&& capital_flow,
                                      std::span<const double> t_grid, double h = 1e-6) {
    std::vector<double> shares;
    shares.reserve(t_grid.size());
    for (double t : t_grid) shares.push_back(numeric_wage_share(surface, labor_flow(t), capital_flow(t), h).s_L);
    return summarize_shares(std::move(shares));
}

}  // namespace bowley
