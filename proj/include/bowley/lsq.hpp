#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bowley/error.hpp"

namespace bowley {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rss = 0.0;
};

/// Ordinary least-squares line y = intercept + slope * t, solved in centered
/// form so that large t offsets (calendar years) do not cost precision.
inline LinearFit linear_fit(std::span<const double> ts, std::span<const double> ys) {
    if (ts.size() != ys.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "linear_fit: " + std::to_string(ts.size()) + " abscissae vs " + std::to_string(ys.size()) + " ordinates");
    }
    const std::size_t n = ts.size();
    if (n < 2) throw Error(ErrorCode::DegenerateDesign, "linear_fit: need at least 2 points");

    double t_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t_mean += ts[i];
        y_mean += ys[i];
    }
    t_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = ts[i] - t_mean;
        sxx += dt * dt;
        sxy += dt * (ys[i] - y_mean);
    }
    if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateDesign, "linear_fit: all abscissae are equal");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * t_mean;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * ts[i]);
        fit.rss += r * r;
    }
    return fit;
}

/// Central-difference Jacobian; coordinate j is perturbed by h * max(1, |at_j|).
template <class Fn>
Matrix numeric_jacobian(Fn&& fn, const Vector& at, double h = 1e-6) {
    if (!(h > 0.0)) throw Error(ErrorCode::NonFiniteValue, "numeric_jacobian: step must be positive");
    Vector probe = at;
    Matrix jac;
    for (Eigen::Index j = 0; j < at.size(); ++j) {
        const double step = h * std::max(1.0, std::abs(at[j]));
        probe[j] = at[j] + step;
        const Vector plus = fn(probe);
        probe[j] = at[j] - step;
        const Vector minus = fn(probe);
        probe[j] = at[j];
        if (!plus.allFinite() || !minus.allFinite()) {
            throw Error(ErrorCode::NonFiniteValue,
                        "numeric_jacobian: function not finite around coordinate " + std::to_string(j));
        }
        if (j == 0) jac.resize(plus.size(), at.size());
        jac.col(j) = (plus - minus) / (2.0 * step);
    }
    return jac;
}

struct NlsOptions {
    int max_iterations = 200;
    double gradient_tolerance = 1e-10;
    double step_tolerance = 1e-12;
    double initial_damping = 1e-3;

    void validate() const {
        if (max_iterations <= 0 || !(gradient_tolerance > 0.0) || !(step_tolerance > 0.0) ||
            !(initial_damping > 0.0)) {
            throw Error(ErrorCode::OutOfRange, "NlsOptions: every field must be strictly positive");
        }
    }
};

enum class Termination { GradientSmall, StepSmall, MaxIterations };

constexpr const char* to_string(Termination t) noexcept {
    switch (t) {
        case Termination::GradientSmall: return "GradientSmall";
        case Termination::StepSmall: return "StepSmall";
        case Termination::MaxIterations: return "MaxIterations";
    }
    return "Unknown";
}

struct NlsResult {
    Vector parameters;
    double rss = 0.0;
    int iterations = 0;
    bool converged = false;
    Termination termination = Termination::MaxIterations;
    /// Objective after the start point and after every accepted step.
    std::vector<double> rss_history;
};

using JacobianFn = std::function<Matrix(const Vector&)>;

namespace detail {
inline constexpr double kMaxDamping = 1e20;
inline constexpr double kMinDamping = 1e-20;
inline constexpr double kJacobianStep = 1e-6;
}  // namespace detail

/// Levenberg-Marquardt with Marquardt (diag J'J) scaling. Damping is divided
/// by 10 after an accepted step and multiplied by 10 after a rejected or
/// non-finite trial. Stops on max|J'r| <= gradient_tolerance or on
/// |step| <= step_tolerance * (|p| + step_tolerance).
///
/// `jacobian` may be empty, in which case numeric_jacobian() is used.
template <class Residual>
NlsResult nls_fit(Residual&& residual, const JacobianFn& jacobian, Vector init, const NlsOptions& opts = {}) {
    opts.validate();
    if (!init.allFinite()) throw Error(ErrorCode::NonFiniteValue, "nls_fit: initial parameters are not finite");

    auto jac_at = [&](const Vector& p) -> Matrix {
        Matrix j = jacobian ? jacobian(p) : numeric_jacobian(residual, p, detail::kJacobianStep);
        if (!j.allFinite()) throw Error(ErrorCode::NonFiniteValue, "nls_fit: Jacobian is not finite");
        return j;
    };

    NlsResult result;
    Vector p = std::move(init);
    Vector r = residual(p);
    if (!r.allFinite()) throw Error(ErrorCode::NonFiniteResidual, "nls_fit: residual not finite at the initial point");
    double cost = r.squaredNorm();
    result.rss_history.push_back(cost);
    Matrix J = jac_at(p);
    double lambda = opts.initial_damping;

    auto finish = [&](Termination why, int iterations) {
        result.parameters = p;
        result.rss = cost;
        result.iterations = iterations;
        result.termination = why;
        result.converged = why != Termination::MaxIterations;
        return result;
    };

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        const Vector gradient = J.transpose() * r;
        if (gradient.cwiseAbs().maxCoeff() <= opts.gradient_tolerance) return finish(Termination::GradientSmall, iter);

        Vector scale = J.colwise().squaredNorm().transpose();
        const double max_diag = scale.maxCoeff();
        const double floor = max_diag > 0.0 ? max_diag * std::numeric_limits<double>::epsilon() : 1.0;
        scale = scale.cwiseMax(floor);

        bool saw_non_finite = false;
        for (;;) {
            if (lambda > detail::kMaxDamping) {
                if (saw_non_finite) {
                    throw Error(ErrorCode::NonFiniteResidual,
                                "nls_fit: residual stays non-finite near the current point after maximal damping");
                }
                throw Error(ErrorCode::SingularNormalMatrix, "nls_fit: no descent step found after maximal damping");
            }
            // min |J s + r|^2 + lambda |D s|^2 as one stacked least-squares
            // problem, so the conditioning of J is not squared.
            const Eigen::Index m = J.rows(), k = J.cols();
            Matrix stacked(m + k, k);
            stacked.topRows(m) = J;
            stacked.bottomRows(k) = (lambda * scale).cwiseSqrt().asDiagonal();
            Vector rhs = Vector::Zero(m + k);
            rhs.head(m) = -r;
            const Vector step = stacked.colPivHouseholderQr().solve(rhs);
            if (!step.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            if (step.norm() <= opts.step_tolerance * (p.norm() + opts.step_tolerance)) {
                return finish(Termination::StepSmall, iter);
            }

            const Vector trial = p + step;
            const Vector trial_r = residual(trial);
            const bool finite = trial_r.allFinite();
            saw_non_finite = saw_non_finite || !finite;
            const double trial_cost = finite ? trial_r.squaredNorm() : std::numeric_limits<double>::infinity();
            if (finite && trial_cost < cost) {
                p = trial;
                r = trial_r;
                cost = trial_cost;
                result.rss_history.push_back(cost);
                J = jac_at(p);
                lambda = std::max(lambda / 10.0, detail::kMinDamping);
                break;
            }
            lambda *= 10.0;
        }
    }
    return finish(Termination::MaxIterations, opts.max_iterations);
}

template <class Residual>
NlsResult nls_fit(Residual&& residual, Vector init, const NlsOptions& opts = {}) {
    return nls_fit(std::forward<Residual>(residual), JacobianFn{}, std::move(init), opts);
}

}  // namespace bowley
