#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "bowley/lsq.hpp"

using namespace bowley;
using Catch::Approx;

namespace {

void check_monotone(const NlsResult& r) {
    for (std::size_t i = 1; i < r.rss_history.size(); ++i) CHECK(r.rss_history[i] <= r.rss_history[i - 1]);
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("linear_fit exact line") {
    const std::vector<double> t{0, 1, 2}, y{1, 3, 5};
    const auto f = linear_fit(t, y);
    CHECK(f.slope == Approx(2.0).margin(1e-15));
    CHECK(f.intercept == Approx(1.0).margin(1e-15));
    CHECK(f.rss == Approx(0.0).margin(1e-28));
}

TEST_CASE("linear_fit hand-solved normal equations") {
    // Sxx = 2, Sxy = 0, so slope 0 and intercept mean(y) = 1/3; residuals (-1/3, 2/3, -1/3).
    const std::vector<double> t{0, 1, 2}, y{0, 1, 0};
    const auto f = linear_fit(t, y);
    CHECK(f.slope == Approx(0.0).margin(1e-15));
    CHECK(f.intercept == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(f.rss == Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("linear_fit errors") {
    const std::vector<double> t{5, 5, 5}, y{1, 2, 3};
    CHECK_THROWS_AS(linear_fit(t, y), Error);
    try {
        linear_fit(t, y);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateDesign);
    }
    const std::vector<double> short_y{1, 2};
    try {
        linear_fit(t, short_y);
        FAIL("expected LengthMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LengthMismatch);
    }
}

TEST_CASE("numeric_jacobian") {
    auto f = [](const Vector& p) {
        Vector r(2);
        r << p[0] * p[0], p[0] * p[1];
        return r;
    };
    Vector at(2);
    at << 2, 3;
    const Matrix J = numeric_jacobian(f, at, 1e-6);
    CHECK(J(0, 0) == Approx(4).margin(1e-6));
    CHECK(J(0, 1) == Approx(0).margin(1e-6));
    CHECK(J(1, 0) == Approx(3).margin(1e-6));
    CHECK(J(1, 1) == Approx(2).margin(1e-6));

    Matrix M(3, 2);
    M << 1, 2, -3, 4, 0.5, -7;
    auto lin = [&](const Vector& p) -> Vector { return M * p; };
    Vector q(2);
    q << 0.3, -1.1;
    CHECK((numeric_jacobian(lin, q, 1e-6) - M).cwiseAbs().maxCoeff() < 1e-9);

    auto e = [](const Vector& p) {
        Vector r(1);
        r << std::exp(p[0]);
        return r;
    };
    CHECK(numeric_jacobian(e, Vector::Zero(1), 1e-6)(0, 0) == Approx(1).margin(1e-9));
}

TEST_CASE("nls_fit linear residuals") {
    auto r = [](const Vector& p) {
        Vector out(2);
        out << p[0] - 3.0, p[1] + 1.0;
        return out;
    };
    const auto res = nls_fit(r, Vector::Zero(2));
    CHECK(res.converged);
    CHECK(res.parameters[0] == Approx(3).margin(1e-10));
    CHECK(res.parameters[1] == Approx(-1).margin(1e-10));
    CHECK(res.rss < 1e-20);
    check_monotone(res);
}

TEST_CASE("nls_fit matches linear_fit on a linear problem") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> noise(0.0, 0.3);
    std::vector<double> t(40), y(40);
    for (int i = 0; i < 40; ++i) {
        t[i] = 0.25 * i;
        y[i] = 1.5 - 0.7 * t[i] + noise(rng);
    }
    const auto line = linear_fit(t, y);
    auto residual = [&](const Vector& p) {
        Vector out(40);
        for (int i = 0; i < 40; ++i) out[i] = p[0] + p[1] * t[i] - y[i];
        return out;
    };

    const auto res = nls_fit(residual, Vector::Zero(2));
    CHECK(res.converged);
    CHECK(std::abs(res.parameters[0] - line.intercept) < 1e-10);
    CHECK(std::abs(res.parameters[1] - line.slope) < 1e-10);

    // Gauss-Newton is exact on linear residuals; with negligible damping the
    // first step lands on the solution.
    NlsOptions gn;
    gn.initial_damping = 1e-12;
    const auto fast = nls_fit(residual, Vector::Zero(2), gn);
    CHECK(fast.converged);
    CHECK(fast.iterations <= 2);
    CHECK(std::abs(fast.parameters[0] - line.intercept) < 1e-10);
    CHECK(std::abs(fast.parameters[1] - line.slope) < 1e-10);
    check_monotone(fast);
}

TEST_CASE("nls_fit exponential model, noise-free") {
    const double b = 0.0255, x0 = 106.7;
    std::vector<double> y(24);
    for (int t = 0; t < 24; ++t) y[t] = x0 * std::exp(b * t);
    auto residual = [&](const Vector& p) {
        Vector out(24);
        for (int t = 0; t < 24; ++t) out[t] = p[1] * std::exp(p[0] * t) - y[t];
        return out;
    };
    const JacobianFn jac = [&](const Vector& p) {
        Matrix J(24, 2);
        for (int t = 0; t < 24; ++t) {
            J(t, 0) = p[1] * t * std::exp(p[0] * t);
            J(t, 1) = std::exp(p[0] * t);
        }
        return J;
    };
    Vector init(2);
    init << 0.01, 90.0;
    const auto analytic = nls_fit(residual, jac, init);
    const auto numeric = nls_fit(residual, init);
    CHECK(analytic.converged);
    CHECK(rel(analytic.parameters[0], b) < 1e-8);
    CHECK(rel(analytic.parameters[1], x0) < 1e-8);
    CHECK(rel(numeric.parameters[0], analytic.parameters[0]) < 1e-6);
    CHECK(rel(numeric.parameters[1], analytic.parameters[1]) < 1e-6);
    check_monotone(analytic);
    check_monotone(numeric);
}

TEST_CASE("nls_fit Rosenbrock") {
    auto residual = [](const Vector& p) {
        Vector out(2);
        out << 1.0 - p[0], 10.0 * (p[1] - p[0] * p[0]);
        return out;
    };
    const JacobianFn jac = [](const Vector& p) {
        Matrix J(2, 2);
        J << -1.0, 0.0, -20.0 * p[0], 10.0;
        return J;
    };
    Vector init(2);
    init << -1.2, 1.0;
    const auto res = nls_fit(residual, jac, init);
    CHECK(res.converged);
    CHECK(std::abs(res.parameters[0] - 1.0) < 1e-6);
    CHECK(std::abs(res.parameters[1] - 1.0) < 1e-6);
    check_monotone(res);

    const auto numeric = nls_fit(residual, init);
    CHECK(std::abs(numeric.parameters[0] - res.parameters[0]) < 1e-6);
    CHECK(std::abs(numeric.parameters[1] - res.parameters[1]) < 1e-6);
}

TEST_CASE("nls_fit input errors") {
    auto residual = [](const Vector& p) { return p; };
    Vector bad(1);
    bad << std::nan("");
    CHECK_THROWS_AS(nls_fit(residual, bad), Error);
    NlsOptions opts;
    opts.max_iterations = 0;
    CHECK_THROWS_AS(nls_fit(residual, Vector::Ones(1), opts), Error);
}

TEST_CASE("nls_fit reports MaxIterations") {
    auto residual = [](const Vector& p) {
        Vector out(2);
        out << 1.0 - p[0], 10.0 * (p[1] - p[0] * p[0]);
        return out;
    };
    Vector init(2);
    init << -1.2, 1.0;
    NlsOptions opts;
    opts.max_iterations = 2;
    const auto res = nls_fit(residual, init, opts);
    CHECK_FALSE(res.converged);
    CHECK(res.termination == Termination::MaxIterations);
    CHECK(res.iterations == 2);
}
