#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bowley/production_fit.hpp"

using namespace bowley;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

template <class Surface>
EconPanel synthetic_panel(Surface&& surface, unsigned seed, double noise = 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(20.0, 160.0);
    std::normal_distribution<double> eps(0.0, noise > 0.0 ? noise : 1.0);
    EconPanel p;
    p.origin_year = 1900;
    for (int i = 0; i < 40; ++i) {
        const double L = u(rng), K = u(rng);
        p.years.push_back(1900 + i);
        p.labor.push_back(L);
        p.capital.push_back(K);
        p.production.push_back(surface(L, K) * (noise > 0.0 ? std::exp(eps(rng)) : 1.0));
    }
    return p;
}

}  // namespace

TEST_CASE("Cobb-Douglas fits recover a noise-free surface") {
    const CobbDouglas truth{1.7, 0.62, 0.31};
    const auto panel = synthetic_panel([&](double L, double K) { return eval_cobb_douglas(truth, L, K); }, 1);
    const auto fit = fit_cobb_douglas(panel);
    CHECK(fit.converged);
    CHECK(rel(fit.cd.A, truth.A) < 1e-8);
    CHECK(rel(fit.cd.alpha, truth.alpha) < 1e-8);
    CHECK(rel(fit.cd.beta, truth.beta) < 1e-8);
    CHECK(fit.rss < 1e-12);

    const CobbDouglas crs_truth{0.9, 0.7, 0.3};
    const auto crs_panel = synthetic_panel([&](double L, double K) { return eval_cobb_douglas(crs_truth, L, K); }, 2);
    const auto crs = fit_cobb_douglas_crs(crs_panel);
    CHECK(crs.converged);
    CHECK(rel(crs.cd.alpha, 0.7) < 1e-8);
    CHECK(crs.cd.alpha + crs.cd.beta == 1.0);
}

TEST_CASE("constrained fits never beat the unconstrained one") {
    const CobbDouglas truth{1.1, 0.5, 0.4};
    const auto panel = synthetic_panel([&](double L, double K) { return eval_cobb_douglas(truth, L, K); }, 3, 0.05);
    const auto free = fit_cobb_douglas(panel);
    const auto crs = fit_cobb_douglas_crs(panel);
    const auto fixed = fit_tfp(panel, 0.5, 0.4);
    CHECK(free.rss <= crs.rss * (1 + 1e-12));
    CHECK(free.rss <= fixed.rss * (1 + 1e-12));
}

TEST_CASE("fit_tfp is the least-squares scale") {
    const CobbDouglas truth{1.3, 0.8, 0.15};
    const auto panel = synthetic_panel([&](double L, double K) { return eval_cobb_douglas(truth, L, K); }, 4, 0.03);
    const auto fit = fit_tfp(panel, truth.alpha, truth.beta);
    auto rss_at = [&](double A) {
        return production_rss(panel, [&](double L, double K) { return eval_cobb_douglas({A, truth.alpha, truth.beta}, L, K); });
    };
    CHECK(rel(fit.rss, rss_at(fit.cd.A)) < 1e-12);
    CHECK(fit.rss < rss_at(fit.cd.A * (1 + 1e-4)));
    CHECK(fit.rss < rss_at(fit.cd.A * (1 - 1e-4)));
}

TEST_CASE("logistic production fit recovers a noise-free surface") {
    const LogisticProduction truth{175.97, 230.26, 211.30, 1.59899336, 0.46780229, 0.05955408};
    const auto panel = synthetic_panel([&](double L, double K) { return eval_logistic_production(truth, L, K); }, 5);
    const auto fit = fit_logistic_production(panel, truth.N_L, truth.N_K, truth.N_Y);
    CHECK(fit.converged);
    CHECK(rel(fit.lp.alpha, truth.alpha) < 1e-6);
    CHECK(rel(fit.lp.beta, truth.beta) < 1e-6);
    CHECK(rel(fit.lp.C, truth.C) < 1e-6);

    LogisticProduction crs_truth = truth;
    crs_truth.alpha = 0.6;
    crs_truth.beta = 0.4;
    const auto crs_panel = synthetic_panel([&](double L, double K) { return eval_logistic_production(crs_truth, L, K); }, 6);
    const auto crs = fit_logistic_production(crs_panel, truth.N_L, truth.N_K, truth.N_Y, true);
    CHECK(rel(crs.lp.alpha, 0.6) < 1e-6);
    CHECK(crs.lp.alpha + crs.lp.beta == 1.0);

    CHECK_THROWS_AS(fit_logistic_production(panel, -1.0, 1.0, 1.0), Error);
}
