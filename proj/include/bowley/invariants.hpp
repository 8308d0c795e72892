#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bowley/error.hpp"

namespace bowley {

/// Exponents (a_1, ..., a_n) of a multiplicative invariant prod x_i^{a_i}.
class ExponentVector {
public:
    ExponentVector(std::vector<double> a) : a_(std::move(a)) {
        if (a_.empty()) throw Error(ErrorCode::LengthMismatch, "ExponentVector: need at least one exponent");
        for (double v : a_) {
            if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "ExponentVector: exponents must be finite");
        }
    }
    ExponentVector(std::initializer_list<double> a) : ExponentVector(std::vector<double>(a)) {}

    [[nodiscard]] std::size_t size() const noexcept { return a_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return a_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return a_; }

private:
    std::vector<double> a_;
};

/// Where the line alpha*b1 + beta*b2 = b3 meets alpha + beta = 1.
enum class ReturnsClass { CrsAttainable, IncreasingOnly, DecreasingOnly, Degenerate };

constexpr const char* to_string(ReturnsClass c) noexcept {
    switch (c) {
        case ReturnsClass::CrsAttainable: return "CrsAttainable";
        case ReturnsClass::IncreasingOnly: return "IncreasingOnly";
        case ReturnsClass::DecreasingOnly: return "DecreasingOnly";
        case ReturnsClass::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

struct ElasticitySolution {
    double alpha = 0.0;
    double beta = 0.0;
    ReturnsClass classification = ReturnsClass::Degenerate;
};

/// Y = A L^alpha K^beta.
struct CobbDouglas {
    double A = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Y = N_Y L^a K^b / (C |N_L - L|^a |N_K - K|^b + L^a K^b).
struct LogisticProduction {
    double N_L = 1.0;
    double N_K = 1.0;
    double N_Y = 1.0;
    double C = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Y = a K^p L^(1-p) / (1 + b K^p L^(-p)).
struct SShaped {
    double a = 1.0;
    double b = 0.0;
    double p = 0.5;
};

/// Growth rates (b_1, b_2, b_3) for labor, capital and production.
using RateTriple = std::array<double, 3>;

inline constexpr double kTieTolerance = 1e-12;

namespace detail {

inline void require_same_length(std::size_t a, std::size_t b, const char* who) {
    if (a != b) {
        throw Error(ErrorCode::LengthMismatch,
                    std::string(who) + ": lengths differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

inline void require_positive_input(double v, const char* who) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::NonPositiveInput, std::string(who) + ": inputs must be > 0");
}

inline ReturnsClass classify_rates(const RateTriple& b) {
    const double scale = std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[2])});
    const double tol = kTieTolerance * scale;
    const double lo = std::min(b[0], b[1]);
    const double hi = std::max(b[0], b[1]);
    if (hi - lo <= tol || std::abs(b[2] - lo) <= tol || std::abs(b[2] - hi) <= tol) return ReturnsClass::Degenerate;
    if (b[2] > hi) return ReturnsClass::IncreasingOnly;
    if (b[2] < lo) return ReturnsClass::DecreasingOnly;
    return ReturnsClass::CrsAttainable;
}

}  // namespace detail

/// sum a_i b_i. The product prod (x_i^0 e^{b_i t})^{a_i} is independent of t
/// exactly when this vanishes.
inline double orthogonality_residual(const ExponentVector& a, std::span<const double> b) {
    detail::require_same_length(a.size(), b.size(), "orthogonality_residual");
    double dot = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) dot += a[i] * b[i];
    return dot;
}

/// Ties within 1e-12 * max|b_i| classify as Degenerate.
inline ReturnsClass classify_returns(const RateTriple& b) {
    for (double v : b) {
        if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::NonPositiveRate, "classify_returns: rates must be > 0");
    }
    return detail::classify_rates(b);
}

/// Intersection of alpha b1 + beta b2 = b3 with alpha + beta = 1. The
/// elasticities are filled whenever b1 != b2; they are both positive only for
/// CrsAttainable.
inline ElasticitySolution crs_elasticities(const RateTriple& b) {
    ElasticitySolution out;
    out.classification = detail::classify_rates(b);
    const double scale = std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[2])});
    if (std::abs(b[0] - b[1]) <= kTieTolerance * scale) {
        out.classification = ReturnsClass::Degenerate;
        out.alpha = 0.0;
        out.beta = 0.0;
        return out;
    }
    out.alpha = (b[2] - b[1]) / (b[0] - b[1]);
    out.beta = 1.0 - out.alpha;
    return out;
}

/// The unique beta on alpha b1 + beta b2 = b3.
inline double beta_given_alpha(const RateTriple& b, double alpha) {
    if (b[1] == 0.0) throw Error(ErrorCode::ZeroDivisor, "beta_given_alpha: capital growth rate is zero");
    return (b[2] - alpha * b[0]) / b[1];
}

inline double eval_cobb_douglas(const CobbDouglas& cd, double L, double K) {
    detail::require_positive_input(L, "eval_cobb_douglas");
    detail::require_positive_input(K, "eval_cobb_douglas");
    return cd.A * std::pow(L, cd.alpha) * std::pow(K, cd.beta);
}

/// prod (x_i^0)^{a_i} * prod x_i^{a_i}.
///
/// Identical to prod (x_i^0 x_i)^{a_i}. It differs from the bare monomial
/// prod x_i^{a_i} only by the constant prod (x_i^0)^{a_i}, so level sets agree.
inline double general_invariant_value(std::span<const double> x0, const ExponentVector& a, std::span<const double> x) {
    detail::require_same_length(x0.size(), a.size(), "general_invariant_value");
    detail::require_same_length(x.size(), a.size(), "general_invariant_value");
    double log_value = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        detail::require_positive_input(x0[i], "general_invariant_value");
        detail::require_positive_input(x[i], "general_invariant_value");
        log_value += a[i] * (std::log(x0[i]) + std::log(x[i]));
    }
    return std::exp(log_value);
}

/// Scale factor of the Cobb-Douglas surface on the level set of value C:
/// (C / prod_i (x_i^0)^{a_i})^{1/a_3}.
inline double invariant_scale_factor(std::span<const double> x0, const ExponentVector& a, double C) {
    if (a.size() != 3 || x0.size() != 3) throw Error(ErrorCode::LengthMismatch, "invariant_scale_factor: need three factors");
    if (a[2] == 0.0) throw Error(ErrorCode::ZeroExponent, "invariant_scale_factor: production exponent is zero");
    if (!(C > 0.0)) throw Error(ErrorCode::NonPositiveInput, "invariant_scale_factor: level must be > 0");
    double log_base = std::log(C);
    for (std::size_t i = 0; i < 3; ++i) {
        detail::require_positive_input(x0[i], "invariant_scale_factor");
        log_base -= a[i] * std::log(x0[i]);
    }
    return std::exp(log_base / a[2]);
}

/// Solves general_invariant_value(x0, a, (x1, x2, x3)) = C for x3, i.e.
/// x3 = A x1^{-a1/a3} x2^{-a2/a3} with A = invariant_scale_factor(x0, a, C).
inline double solve_production_from_invariant(std::span<const double> x0, const ExponentVector& a, double C, double x1,
                                              double x2) {
    if (a.size() != 3 || x0.size() != 3) {
        throw Error(ErrorCode::LengthMismatch, "solve_production_from_invariant: need three factors");
    }
    if (a[2] == 0.0) throw Error(ErrorCode::ZeroExponent, "solve_production_from_invariant: production exponent is zero");
    detail::require_positive_input(x1, "solve_production_from_invariant");
    detail::require_positive_input(x2, "solve_production_from_invariant");
    if (!(C > 0.0)) throw Error(ErrorCode::NonPositiveInput, "solve_production_from_invariant: level must be > 0");
    double log_x3 = std::log(C);
    for (std::size_t i = 0; i < 3; ++i) log_x3 -= a[i] * std::log(x0[i]);
    log_x3 -= a[0] * std::log(x1) + a[1] * std::log(x2);
    log_x3 /= a[2];
    return std::exp(log_x3);
}

/// prod [x_i (N_i - x_i^0) / (x_i^0 (N_i - x_i))]^{a_i}; every bracket equals
/// exp(b_i t) along the logistic flow through x^0.
inline double logistic_invariant_value(std::span<const double> x0, std::span<const double> N, const ExponentVector& a,
                                       std::span<const double> x) {
    detail::require_same_length(x0.size(), a.size(), "logistic_invariant_value");
    detail::require_same_length(N.size(), a.size(), "logistic_invariant_value");
    detail::require_same_length(x.size(), a.size(), "logistic_invariant_value");
    double log_value = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(x[i] > 0.0) || !(x[i] < N[i]) || !(x0[i] > 0.0) || !(x0[i] < N[i])) {
            throw Error(ErrorCode::OutOfRange, "logistic_invariant_value: need 0 < x_i, x_i^0 < N_i at index " +
                                                   std::to_string(i));
        }
        log_value += a[i] * (std::log(x[i]) + std::log(N[i] - x0[i]) - std::log(x0[i]) - std::log(N[i] - x[i]));
    }
    return std::exp(log_value);
}

/// Evaluation is defined beyond the capacities through |N - L|, |N - K|.
inline double eval_logistic_production(const LogisticProduction& lp, double L, double K) {
    const double core = std::pow(L, lp.alpha) * std::pow(K, lp.beta);
    const double gap = lp.C * std::pow(std::abs(lp.N_L - L), lp.alpha) * std::pow(std::abs(lp.N_K - K), lp.beta);
    return lp.N_Y * core / (gap + core);
}

/// C from the B parameterization: C = N_Y N_L^{-alpha} N_K^{-beta} / B.
inline double logistic_c_from_b(double N_L, double N_K, double N_Y, double alpha, double beta, double B) {
    return N_Y * std::pow(N_L, -alpha) * std::pow(N_K, -beta) / B;
}

/// x~_i = N_i x_i / (N_i + x_i), mapping R_+^n onto prod (0, N_i).
inline std::vector<double> psi_forward(std::span<const double> N, std::span<const double> x) {
    detail::require_same_length(N.size(), x.size(), "psi_forward");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(N[i] > 0.0)) throw Error(ErrorCode::OutOfRange, "psi_forward: need x_i > 0 and N_i > 0");
        out[i] = N[i] * x[i] / (N[i] + x[i]);
    }
    return out;
}

inline std::vector<double> psi_inverse(std::span<const double> N, std::span<const double> xt) {
    detail::require_same_length(N.size(), xt.size(), "psi_inverse");
    std::vector<double> out(xt.size());
    for (std::size_t i = 0; i < xt.size(); ++i) {
        if (!(xt[i] > 0.0) || !(xt[i] < N[i])) throw Error(ErrorCode::OutOfRange, "psi_inverse: need 0 < x~_i < N_i");
        out[i] = N[i] * xt[i] / (N[i] - xt[i]);
    }
    return out;
}

/// Image of the exponential field b_i x_i d/dx_i under psi, evaluated by the
/// chain rule: (d x~_i / d x_i) * b_i x_i at x = psi^{-1}(x~), with
/// d x~_i / d x_i = N_i^2 / (N_i + x_i)^2.
inline std::vector<double> pushforward_field(std::span<const double> b, std::span<const double> N,
                                             std::span<const double> xt) {
    detail::require_same_length(b.size(), N.size(), "pushforward_field");
    const std::vector<double> x = psi_inverse(N, xt);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double denom = N[i] + x[i];
        out[i] = (N[i] * N[i] / (denom * denom)) * (b[i] * x[i]);
    }
    return out;
}

/// Closed form of the pushed-forward field: b_i x~_i (1 - x~_i / N_i).
inline std::vector<double> logistic_field(std::span<const double> b, std::span<const double> N,
                                          std::span<const double> xt) {
    detail::require_same_length(b.size(), N.size(), "logistic_field");
    detail::require_same_length(xt.size(), N.size(), "logistic_field");
    std::vector<double> out(xt.size());
    for (std::size_t i = 0; i < xt.size(); ++i) {
        if (!(xt[i] > 0.0) || !(xt[i] < N[i])) throw Error(ErrorCode::OutOfRange, "logistic_field: need 0 < x~_i < N_i");
        out[i] = b[i] * xt[i] * (1.0 - xt[i] / N[i]);
    }
    return out;
}

inline double eval_s_shaped(const SShaped& s, double K, double L) {
    detail::require_positive_input(K, "eval_s_shaped");
    detail::require_positive_input(L, "eval_s_shaped");
    const double kp = std::pow(K, s.p);
    return s.a * std::pow(L, 1.0 - s.p) * kp / (1.0 + s.b * kp * std::pow(L, -s.p));
}

}  // namespace bowley
