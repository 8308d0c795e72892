#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "bowley/error.hpp"
#include "bowley/growth.hpp"
#include "bowley/invariants.hpp"
#include "bowley/shares.hpp"

namespace bowley {

// Numeric property checks shared by `verify-invariants` and the test suites.

/// max_t |f(t) / f(t_0) - 1| for the general invariant along x_i^0 e^{b_i t}.
inline double exponential_flow_variation(std::span<const double> x0, std::span<const double> b, const ExponentVector& a,
                                         std::span<const double> t_grid) {
    if (t_grid.empty()) throw Error(ErrorCode::EmptySeries, "exponential_flow_variation: empty time grid");
    std::vector<double> x(x0.size());
    double ref = 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        for (std::size_t i = 0; i < x0.size(); ++i) x[i] = eval_exponential(ExpFit::from_rate(b[i], x0[i]), t_grid[k]);
        const double v = general_invariant_value(x0, a, x);
        if (k == 0) {
            ref = v;
        } else {
            worst = std::max(worst, std::abs(v / ref - 1.0));
        }
    }
    return worst;
}

/// Same for the logistic invariant along the logistic flows through x^0.
inline double logistic_flow_variation(std::span<const double> x0, std::span<const double> b, std::span<const double> N,
                                      const ExponentVector& a, std::span<const double> t_grid) {
    if (t_grid.empty()) throw Error(ErrorCode::EmptySeries, "logistic_flow_variation: empty time grid");
    std::vector<double> x(x0.size());
    double ref = 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        for (std::size_t i = 0; i < x0.size(); ++i) {
            x[i] = eval_logistic(LogisticFit::from_params(b[i], x0[i], N[i]), t_grid[k]);
        }
        const double v = logistic_invariant_value(x0, N, a, x);
        if (k == 0) {
            ref = v;
        } else {
            worst = std::max(worst, std::abs(v / ref - 1.0));
        }
    }
    return worst;
}

/// max_k |Pr1(u)(I_k)| / max(1, |I_k|), the Lie derivative taken by a
/// five-point central difference along the prolonged field.
inline double prolongation_residual(const Generator& g, const JetPoint& p) {
    const auto v = prolonged_coefficients(g, p);
    const std::array<double, 5> base = {p.K, p.L, p.Y, p.Y_K, p.Y_L};
    double ratio = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        if (v[i] != 0.0) ratio = std::max(ratio, std::abs(v[i]) / std::max(std::abs(base[i]), 1e-300));
    }
    if (ratio == 0.0) return 0.0;
    const double s = 1e-3 / ratio;
    auto at = [&](double shift) {
        const JetPoint q{base[0] + shift * v[0], base[1] + shift * v[1], base[2] + shift * v[2], base[3] + shift * v[3],
                         base[4] + shift * v[4]};
        return fundamental_invariants(g, q);
    };
    const auto m2 = at(-2 * s), m1 = at(-s), p1 = at(s), p2 = at(2 * s), here = at(0.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double d = (-p2[k] + 8.0 * p1[k] - 8.0 * m1[k] + m2[k]) / (12.0 * s);
        worst = std::max(worst, std::abs(d) / std::max(1.0, std::abs(here[k])));
    }
    return worst;
}

/// max_i |chain-rule field - closed-form field| / max_i |closed-form field|.
inline double pushforward_gap(std::span<const double> b, std::span<const double> N, std::span<const double> xt) {
    const auto chain = pushforward_field(b, N, xt);
    const auto closed = logistic_field(b, N, xt);
    double gap = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        gap = std::max(gap, std::abs(chain[i] - closed[i]));
        scale = std::max(scale, std::abs(closed[i]));
    }
    return scale > 0.0 ? gap / scale : gap;
}

}  // namespace bowley
