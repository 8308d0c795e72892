#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bowley/checks.hpp"
#include "bowley/error.hpp"
#include "bowley/growth.hpp"
#include "bowley/invariants.hpp"
#include "bowley/plot.hpp"
#include "bowley/production_fit.hpp"
#include "bowley/report.hpp"
#include "bowley/series.hpp"
#include "bowley/shares.hpp"

#ifndef BOWLEY_VERSION
#define BOWLEY_VERSION "1.0.0"
#endif

namespace bowley::cli {

inline constexpr const char* kToolVersion = BOWLEY_VERSION;

struct Options {
    std::string input;
    std::string out;
    std::string format = "json";
    std::string plot;
    std::optional<int> origin_year;
    std::vector<double> b;
    std::optional<double> alpha;
    bool fix_crs = false;
    std::vector<double> init;
};

struct CommandOutput {
    RunReport report;
    std::vector<PlotSeries> plot;
    PlotOptions plot_options;
    std::string text;   // printed before the report, e.g. property verdicts
    bool ok = true;     // false makes the run exit 1 after writing everything
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::IoError, "cannot read input file '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

inline EconPanel load_panel(const Options& opts, RunReport& report) {
    const std::string bytes = read_file(opts.input);
    std::istringstream stream(bytes);
    EconPanel panel;
    try {
        panel = ingest_csv(stream, opts.origin_year);
    } catch (const Error& e) {
        throw Error(e.code(), "'" + opts.input + "': " + e.what());
    }
    report.set("input.path", opts.input);
    report.set("input.rows", panel.size());
    report.set("input.checksum", fnv1a_hex(bytes));
    report.set("input.origin_year", panel.origin_year);
    return panel;
}

inline RateTriple rates(const TripleFit<ExpFit>& f) { return {f.labor.b, f.capital.b, f.production.b}; }
inline RateTriple rates(const TripleFit<LogisticFit>& f) { return {f.labor.b, f.capital.b, f.production.b}; }

/// Elasticities on the orthogonality line: the constant-returns point when
/// it is attainable, otherwise alpha = 1.
inline std::pair<double, double> line_elasticities(const RateTriple& b) {
    const auto crs = crs_elasticities(b);
    if (crs.classification == ReturnsClass::CrsAttainable) return {crs.alpha, crs.beta};
    return {1.0, beta_given_alpha(b, 1.0)};
}

inline std::optional<LogisticInit> parse_init(const Options& opts) {
    if (opts.init.empty()) return std::nullopt;
    return LogisticInit{opts.init[0], opts.init[1], opts.init[2]};
}

inline const char* kSeriesNames[] = {"labor", "capital", "production"};

template <class Fit>
const Fit& pick(const TripleFit<Fit>& f, int i) {
    return i == 0 ? f.labor : (i == 1 ? f.capital : f.production);
}

inline const std::vector<double>& column(const EconPanel& p, int i) {
    return i == 0 ? p.labor : (i == 1 ? p.capital : p.production);
}

inline void add_exp_fits(RunReport& r, const TripleFit<ExpFit>& fits) {
    for (int i = 0; i < 3; ++i) {
        const auto& f = pick(fits, i);
        const std::string key = std::string("exp.") + kSeriesNames[i];
        r.set(key + ".b", f.b);
        r.set(key + ".c", f.c);
        r.set(key + ".x0", f.x0);
        r.set(key + ".rss_log", f.rss_log);
        r.set(key + ".rss_raw", f.rss_raw);
    }
    const RateTriple b = rates(fits);
    const auto crs = crs_elasticities(b);
    r.set("exp.returns", to_string(crs.classification));
    r.set("exp.crs.alpha", crs.alpha);
    r.set("exp.crs.beta", crs.beta);
}

inline void add_logistic_fits(RunReport& r, const TripleFit<LogisticFit>& fits) {
    for (int i = 0; i < 3; ++i) {
        const auto& f = pick(fits, i);
        const std::string key = std::string("logistic.") + kSeriesNames[i];
        r.set(key + ".b", f.b);
        r.set(key + ".x0", f.x0);
        r.set(key + ".N", f.N);
        r.set(key + ".rss", f.rss);
        r.set(key + ".converged", f.converged);
        r.set(key + ".near_degenerate", f.near_degenerate);
        r.set(key + ".iterations", f.iterations);
        r.set(key + ".termination", to_string(f.termination));
    }
}

template <class Fit, class Eval>
void add_fit_plot(CommandOutput& out, const EconPanel& panel, const TripleFit<Fit>& fits, Eval eval, const char* tag) {
    const auto ts = panel.times();
    std::vector<double> xs(panel.years.begin(), panel.years.end());
    for (int i = 0; i < 3; ++i) {
        std::vector<double> fitted(ts.size());
        for (std::size_t k = 0; k < ts.size(); ++k) fitted[k] = eval(pick(fits, i), ts[k]);
        out.plot.push_back({std::string(kSeriesNames[i]) + " observed", xs, column(panel, i)});
        out.plot.push_back({std::string(kSeriesNames[i]) + " " + tag, xs, std::move(fitted)});
    }
    out.plot_options = {std::string("Observed vs ") + tag + " growth", "year", "index"};
}

template <class Surface>
void add_production_plot(CommandOutput& out, const EconPanel& panel, Surface&& surface, const std::string& label) {
    std::vector<double> xs(panel.years.begin(), panel.years.end());
    std::vector<double> fitted(panel.size());
    for (std::size_t k = 0; k < panel.size(); ++k) fitted[k] = surface(panel.labor[k], panel.capital[k]);
    out.plot.push_back({"production observed", xs, panel.production});
    out.plot.push_back({label, std::move(xs), std::move(fitted)});
    out.plot_options = {"Observed vs estimated production", "year", "production"};
}

inline void add_cd(RunReport& r, const std::string& key, const CobbDouglasFit& fit, const RateTriple& b) {
    r.set(key + ".A", fit.cd.A);
    r.set(key + ".alpha", fit.cd.alpha);
    r.set(key + ".beta", fit.cd.beta);
    r.set(key + ".rss", fit.rss);
    r.set(key + ".converged", fit.converged);
    r.set(key + ".orthogonality_residual", orthogonality_residual({fit.cd.alpha, fit.cd.beta, -1.0}, b));
}

inline void add_lpf(RunReport& r, const std::string& key, const LogisticProductionFit& fit, const RateTriple& b) {
    r.set(key + ".N_L", fit.lp.N_L);
    r.set(key + ".N_K", fit.lp.N_K);
    r.set(key + ".N_Y", fit.lp.N_Y);
    r.set(key + ".C", fit.lp.C);
    r.set(key + ".alpha", fit.lp.alpha);
    r.set(key + ".beta", fit.lp.beta);
    r.set(key + ".rss", fit.rss);
    r.set(key + ".converged", fit.converged);
    r.set(key + ".orthogonality_residual", orthogonality_residual({fit.lp.alpha, fit.lp.beta, -1.0}, b));
}

inline void add_constancy(RunReport& r, const std::string& key, const ShareConstancy& s) {
    r.set(key + ".mean", s.mean);
    r.set(key + ".max_abs_deviation", s.max_abs_deviation);
    r.set(key + ".relative_range", s.relative_range);
    r.set(key + ".values", s.shares);
}

// --- commands -------------------------------------------------------------

inline void cmd_fit_exp(const Options& opts, CommandOutput& out) {
    const EconPanel panel = load_panel(opts, out.report);
    const auto fits = fit_exponential_triple(panel);
    add_exp_fits(out.report, fits);
    add_fit_plot(out, panel, fits, [](const ExpFit& f, double t) { return eval_exponential(f, t); }, "exponential");
}

inline void cmd_fit_logistic(const Options& opts, CommandOutput& out) {
    const EconPanel panel = load_panel(opts, out.report);
    const auto fits = fit_logistic_triple(panel, parse_init(opts));
    add_logistic_fits(out.report, fits);
    add_fit_plot(out, panel, fits, [](const LogisticFit& f, double t) { return eval_logistic(f, t); }, "logistic");
}

inline void cmd_fit_cd(const Options& opts, CommandOutput& out) {
    const EconPanel panel = load_panel(opts, out.report);
    const auto fits = fit_exponential_triple(panel);
    const RateTriple b = rates(fits);
    add_exp_fits(out.report, fits);

    CobbDouglasFit fit;
    std::string mode;
    if (opts.alpha && opts.fix_crs) {
        mode = "fixed_alpha_crs";
        fit = fit_tfp(panel, *opts.alpha, 1.0 - *opts.alpha);
    } else if (opts.alpha) {
        mode = "fixed_alpha";
        fit = fit_tfp(panel, *opts.alpha, beta_given_alpha(b, *opts.alpha));
    } else if (opts.fix_crs) {
        mode = "crs";
        fit = fit_cobb_douglas_crs(panel);
    } else {
        mode = "unconstrained";
        fit = fit_cobb_douglas(panel);
    }
    out.report.set("cd.mode", mode);
    add_cd(out.report, "cd", fit, b);
    add_production_plot(out, panel, [&](double L, double K) { return eval_cobb_douglas(fit.cd, L, K); },
                        "Cobb-Douglas (" + mode + ")");
}

inline void cmd_fit_lpf(const Options& opts, CommandOutput& out) {
    const EconPanel panel = load_panel(opts, out.report);
    const auto fits = fit_logistic_triple(panel, parse_init(opts));
    add_logistic_fits(out.report, fits);
    const auto lpf = fit_logistic_production(panel, fits.labor.N, fits.capital.N, fits.production.N, opts.fix_crs);
    out.report.set("lpf.mode", opts.fix_crs ? "crs" : "unconstrained");
    add_lpf(out.report, "lpf", lpf, rates(fits));
    add_production_plot(out, panel, [&](double L, double K) { return eval_logistic_production(lpf.lp, L, K); },
                        "logistic production function");
}

inline RateTriple rates_from_flag(const Options& opts) { return {opts.b[0], opts.b[1], opts.b[2]}; }

inline void cmd_elasticities(const Options& opts, CommandOutput& out) {
    const RateTriple b = rates_from_flag(opts);
    out.report.set("rates", std::vector<double>(b.begin(), b.end()));
    const auto crs = crs_elasticities(b);
    out.report.set("crs.classification", to_string(crs.classification));
    out.report.set("crs.alpha", crs.alpha);
    out.report.set("crs.beta", crs.beta);
    out.report.set("crs.orthogonality_residual", orthogonality_residual({crs.alpha, crs.beta, -1.0}, b));
    if (opts.alpha) {
        const double beta = beta_given_alpha(b, *opts.alpha);
        out.report.set("fixed_alpha.alpha", *opts.alpha);
        out.report.set("fixed_alpha.beta", beta);
        out.report.set("fixed_alpha.returns_to_scale", *opts.alpha + beta);
    }
}

inline void cmd_classify(const Options& opts, CommandOutput& out) {
    const RateTriple b = rates_from_flag(opts);
    out.report.set("rates", std::vector<double>(b.begin(), b.end()));
    out.report.set("classification", to_string(classify_returns(b)));
}

inline void run_shares(const EconPanel& panel, const Options& opts, CommandOutput& out) {
    const auto ts = panel.times();
    const auto exp_fits = fit_exponential_triple(panel);
    const auto cd = fit_cobb_douglas(panel);
    auto cd_surface = [&](double L, double K) { return eval_cobb_douglas(cd.cd, L, K); };
    const auto exp_side = share_constancy_report(
        cd_surface, [&](double t) { return eval_exponential(exp_fits.labor, t); },
        [&](double t) { return eval_exponential(exp_fits.capital, t); }, ts);
    add_cd(out.report, "shares.exponential.cd", cd, rates(exp_fits));
    add_constancy(out.report, "shares.exponential", exp_side);

    const auto log_fits = fit_logistic_triple(panel, parse_init(opts));
    const auto lpf = fit_logistic_production(panel, log_fits.labor.N, log_fits.capital.N, log_fits.production.N,
                                             opts.fix_crs);
    auto lpf_surface = [&](double L, double K) { return eval_logistic_production(lpf.lp, L, K); };
    const auto log_side = share_constancy_report(
        lpf_surface, [&](double t) { return eval_logistic(log_fits.labor, t); },
        [&](double t) { return eval_logistic(log_fits.capital, t); }, ts);
    add_lpf(out.report, "shares.logistic.lpf", lpf, rates(log_fits));
    add_constancy(out.report, "shares.logistic", log_side);

    if (log_fits.labor.converged && log_fits.capital.converged && log_fits.production.converged) {
        const auto traj = logistic_share_trajectory(log_fits, ts);
        const auto [lo, hi] = std::minmax_element(traj.begin(), traj.end());
        out.report.set("shares.trajectory.values", traj);
        out.report.set("shares.trajectory.max_over_min", *hi / *lo);
    }

    std::vector<double> xs(panel.years.begin(), panel.years.end());
    out.plot.push_back({"Cobb-Douglas share (exponential flows)", xs, exp_side.shares});
    out.plot.push_back({"logistic production share (logistic flows)", xs, log_side.shares});
    out.plot_options = {"Wage share along fitted flows", "year", "s_L"};
}

inline void cmd_shares(const Options& opts, CommandOutput& out) {
    const EconPanel panel = load_panel(opts, out.report);
    run_shares(panel, opts, out);
}

inline void cmd_report(const Options& opts, CommandOutput& out) {
    const EconPanel panel = load_panel(opts, out.report);
    const auto exp_fits = fit_exponential_triple(panel);
    add_exp_fits(out.report, exp_fits);
    const auto log_fits = fit_logistic_triple(panel, parse_init(opts));
    add_logistic_fits(out.report, log_fits);
    add_cd(out.report, "cd.unconstrained", fit_cobb_douglas(panel), rates(exp_fits));
    add_cd(out.report, "cd.crs", fit_cobb_douglas_crs(panel), rates(exp_fits));
    const auto [alpha, beta] = line_elasticities(rates(exp_fits));
    add_cd(out.report, "cd.orthogonal", fit_tfp(panel, alpha, beta), rates(exp_fits));
    add_lpf(out.report, "lpf",
            fit_logistic_production(panel, log_fits.labor.N, log_fits.capital.N, log_fits.production.N, opts.fix_crs),
            rates(log_fits));
    run_shares(panel, opts, out);
}

// --- verify-invariants ------------------------------------------------------

struct Property {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string note;
    bool skipped = false;
};

inline EconPanel synthetic_exponential_panel() {
    EconPanel p;
    const RateTriple b = {0.02549605, 0.06472564, 0.03592651};
    for (int i = 0; i < 24; ++i) {
        p.years.push_back(1899 + i);
        p.labor.push_back(eval_exponential(ExpFit::from_rate(b[0], 100.0), i));
        p.capital.push_back(eval_exponential(ExpFit::from_rate(b[1], 100.0), i));
        p.production.push_back(eval_exponential(ExpFit::from_rate(b[2], 100.0), i));
    }
    p.origin_year = 1899;
    return p;
}

inline EconPanel synthetic_logistic_panel() {
    EconPanel p;
    const LogisticFit l = LogisticFit::from_params(0.07842367, 2.092004, 175.97);
    const LogisticFit k = LogisticFit::from_params(0.07793777, 1.575667, 230.26);
    const LogisticFit y = LogisticFit::from_params(0.04619786, 11.312991, 211.30);
    for (int i = 0; i < 70; ++i) {
        p.years.push_back(1947 + i);
        p.labor.push_back(eval_logistic(l, i));
        p.capital.push_back(eval_logistic(k, i));
        p.production.push_back(eval_logistic(y, i));
    }
    p.origin_year = 1947;
    return p;
}

inline std::vector<double> unit_direction(const RateTriple& b) {
    const double norm = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    return {b[0] / norm, b[1] / norm, b[2] / norm};
}

inline std::vector<Property> exponential_properties(const EconPanel& panel) {
    std::vector<Property> props;
    const auto ts = panel.times();
    const auto fits = fit_exponential_triple(panel);
    const RateTriple b = rates(fits);
    const std::vector<double> x0 = {fits.labor.x0, fits.capital.x0, fits.production.x0};
    const auto [alpha, beta] = line_elasticities(b);

    const double inv = exponential_flow_variation(x0, b, ExponentVector{alpha, beta, -1.0}, ts);
    props.push_back({"exponential-flow-invariance", inv < 1e-10, inv, 1e-10, "orthogonal exponents"});
    const double var = exponential_flow_variation(x0, b, ExponentVector(unit_direction(b)), ts);
    props.push_back({"exponential-flow-variation", var > 1e-3, var, 1e-3, "exponents parallel to rates"});

    const CobbDouglas cd = fit_tfp(panel, alpha, beta).cd;
    const Generator g{b[1], b[0], b[2]};
    double prolong = 0.0;
    double routes = 0.0;
    for (std::size_t i = 0; i < panel.size(); ++i) {
        const double L = panel.labor[i], K = panel.capital[i];
        const double Y = eval_cobb_douglas(cd, L, K);
        const JetPoint jet{K, L, Y, beta * Y / K, alpha * Y / L};
        prolong = std::max(prolong, prolongation_residual(g, jet));
        const auto via_inv = shares_from_invariants(fundamental_invariants(g, jet));
        const auto via_num = numeric_wage_share([&](double l, double k) { return eval_cobb_douglas(cd, l, k); }, L, K);
        routes = std::max({routes, std::abs(via_inv.s_L - via_num.s_L), std::abs(via_inv.s_L - alpha),
                           std::abs(via_num.s_L - alpha), std::abs(via_inv.s_K - via_num.s_K),
                           std::abs(via_inv.s_K - beta)});
    }
    props.push_back({"prolongation-annihilation", prolong < 1e-8, prolong, 1e-8, "jets of the fitted surface"});
    props.push_back({"share-route-agreement", routes < 1e-8, routes, 1e-8, "invariants vs numeric vs exponent"});

    const auto bowley = share_constancy_report([&](double l, double k) { return eval_cobb_douglas(cd, l, k); },
                                               [&](double t) { return eval_exponential(fits.labor, t); },
                                               [&](double t) { return eval_exponential(fits.capital, t); }, ts);
    const double bowley_err = std::max(bowley.relative_range, std::abs(bowley.mean - alpha));
    props.push_back({"bowley-exponential", bowley_err < 1e-8, bowley_err, 1e-8, "share constant and equal to alpha"});
    return props;
}

inline std::vector<Property> logistic_properties(const EconPanel& panel) {
    std::vector<Property> props;
    const auto ts = panel.times();
    const auto fits = fit_logistic_triple(panel);
    const RateTriple b = rates(fits);
    const std::vector<double> x0 = {fits.labor.x0, fits.capital.x0, fits.production.x0};
    const std::vector<double> N = {fits.labor.N, fits.capital.N, fits.production.N};
    const auto [alpha, beta] = line_elasticities(b);

    const double inv = logistic_flow_variation(x0, b, N, ExponentVector{alpha, beta, -1.0}, ts);
    props.push_back({"logistic-flow-invariance", inv < 1e-10, inv, 1e-10, "orthogonal exponents"});
    const double var = logistic_flow_variation(x0, b, N, ExponentVector(unit_direction(b)), ts);
    props.push_back({"logistic-flow-variation", var > 1e-3, var, 1e-3, "exponents parallel to rates"});

    // Printed trajectory vs the closed-form share along the flows, for the
    // production function on the orthogonality line with beta = 0.
    if (fits.labor.converged && fits.capital.converged && fits.production.converged) {
        const auto lp = consistent_logistic_production(fits, fits.production.b / fits.labor.b, 0.0);
        const auto traj = logistic_share_trajectory(fits, ts);
        double oracle = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double direct =
                analytic_logistic_share(lp, eval_logistic(fits.labor, ts[i]), eval_logistic(fits.capital, ts[i]));
            oracle = std::max(oracle, std::abs(traj[i] / direct - 1.0));
        }
        props.push_back({"logistic-share-trajectory", oracle < 1e-10, oracle, 1e-10, "closed form vs share along flows"});
    } else {
        props.push_back({"logistic-share-trajectory", true, 0.0, 1e-10, "a logistic fit did not converge", true});
    }

    double push = 0.0;
    for (std::size_t i = 0; i < panel.size(); ++i) {
        const std::vector<double> x = {panel.labor[i], panel.capital[i], panel.production[i]};
        push = std::max(push, pushforward_gap(b, N, psi_forward(N, x)));
    }
    props.push_back({"pushforward-identity", push < 1e-12, push, 1e-12, "chain rule vs logistic field"});
    return props;
}

inline void cmd_verify(const Options& opts, CommandOutput& out) {
    EconPanel exp_panel, log_panel;
    if (opts.input.empty()) {
        exp_panel = synthetic_exponential_panel();
        log_panel = synthetic_logistic_panel();
        out.report.set("input.path", "synthetic");
    } else {
        exp_panel = load_panel(opts, out.report);
        log_panel = exp_panel;
    }

    std::vector<Property> props = exponential_properties(exp_panel);
    try {
        auto more = logistic_properties(log_panel);
        props.insert(props.end(), more.begin(), more.end());
    } catch (const Error& e) {
        props.push_back({"logistic-fit", false, 0.0, 0.0, e.what()});
    }

    std::ostringstream text;
    for (const auto& p : props) {
        if (p.skipped) {
            text << "SKIP " << p.name << "  (" << p.note << ")\n";
            out.report.set("property." + p.name + ".skipped", true);
            continue;
        }
        text << (p.passed ? "PASS " : "FAIL ") << p.name << "  value=" << format_double(p.value, 7)
             << " threshold=" << format_double(p.threshold, 7) << "  (" << p.note << ")\n";
        out.report.set("property." + p.name + ".passed", p.passed);
        out.report.set("property." + p.name + ".value", p.value);
        out.report.set("property." + p.name + ".threshold", p.threshold);
        out.ok = out.ok && p.passed;
    }
    out.text = text.str();
}

}  // namespace detail

/// Entry point behind the `bowley` executable. `args` excludes the program
/// name. Exit codes: 0 success, 1 data or convergence error, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opts;
    CLI::App app{"Growth-flow production functions and wage-share invariants", "bowley"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(kToolVersion));

    auto add_input = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--input", opts.input, "Panel CSV with header year,labor,capital,production");
        if (required) o->required();
        sub->add_option("--origin-year", opts.origin_year, "Calendar year mapped to t = 0 (default: first row)");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", opts.out, "Write the report here instead of standard output");
        sub->add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_plot = [&](CLI::App* sub) { sub->add_option("--plot", opts.plot, "Write an SVG chart to this path"); };
    auto add_init = [&](CLI::App* sub) {
        sub->add_option("--init", opts.init, "Logistic starting point b,x0,N applied to every series")
            ->delimiter(',')
            ->expected(3);
    };
    auto add_rates = [&](CLI::App* sub) {
        sub->add_option("--b", opts.b, "Growth rates of labor, capital, production")->delimiter(',')->expected(3)->required();
    };

    auto* fit_exp = app.add_subcommand("fit-exp", "Fit exponential growth to each series on a log scale");
    add_input(fit_exp, true);
    add_output(fit_exp);
    add_plot(fit_exp);

    auto* fit_log = app.add_subcommand("fit-logistic", "Fit logistic growth (b, x0, N) to each series");
    add_input(fit_log, true);
    add_output(fit_log);
    add_init(fit_log);
    add_plot(fit_log);

    auto* fit_cd = app.add_subcommand("fit-cd", "Fit a Cobb-Douglas production function");
    add_input(fit_cd, true);
    add_output(fit_cd);
    fit_cd->add_option("--alpha", opts.alpha, "Fix the labor elasticity; beta follows from the growth rates");
    fit_cd->add_flag("--fix-crs", opts.fix_crs, "Impose alpha + beta = 1");
    add_plot(fit_cd);

    auto* fit_lpf = app.add_subcommand("fit-lpf", "Fit the logistic production function with fitted capacities");
    add_input(fit_lpf, true);
    add_output(fit_lpf);
    add_init(fit_lpf);
    fit_lpf->add_flag("--fix-crs", opts.fix_crs, "Impose alpha + beta = 1");
    add_plot(fit_lpf);

    auto* elast = app.add_subcommand("elasticities", "Output elasticities from growth rates");
    add_rates(elast);
    elast->add_option("--alpha", opts.alpha, "Also report beta on the orthogonality line for this alpha");
    add_output(elast);

    auto* classify = app.add_subcommand("classify", "Classify attainable returns to scale from growth rates");
    add_rates(classify);
    add_output(classify);

    auto* shares = app.add_subcommand("shares", "Wage-share constancy along exponential and logistic flows");
    add_input(shares, true);
    add_output(shares);
    add_init(shares);
    shares->add_flag("--fix-crs", opts.fix_crs, "Impose alpha + beta = 1 on the logistic production function");
    add_plot(shares);

    auto* verify = app.add_subcommand("verify-invariants", "Check the invariance properties on a panel or synthetic data");
    add_input(verify, false);
    add_output(verify);

    auto* report = app.add_subcommand("report", "Every fit, production function and share statistic in one report");
    add_input(report, true);
    add_output(report);
    add_init(report);
    report->add_flag("--fix-crs", opts.fix_crs, "Impose alpha + beta = 1 on the logistic production function");
    add_plot(report);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    CommandOutput result;
    CLI::App* chosen = app.get_subcommands().front();
    result.report.set("command", chosen->get_name());
    result.report.set("tool_version", kToolVersion);

    try {
        if (chosen == fit_exp) detail::cmd_fit_exp(opts, result);
        else if (chosen == fit_log) detail::cmd_fit_logistic(opts, result);
        else if (chosen == fit_cd) detail::cmd_fit_cd(opts, result);
        else if (chosen == fit_lpf) detail::cmd_fit_lpf(opts, result);
        else if (chosen == elast) detail::cmd_elasticities(opts, result);
        else if (chosen == classify) detail::cmd_classify(opts, result);
        else if (chosen == shares) detail::cmd_shares(opts, result);
        else if (chosen == verify) detail::cmd_verify(opts, result);
        else if (chosen == report) detail::cmd_report(opts, result);

        const ReportFormat format = opts.format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
        out << result.text;
        if (!opts.out.empty()) {
            std::ofstream file(opts.out, std::ios::binary);
            if (!file) throw Error(ErrorCode::IoError, "cannot open output file '" + opts.out + "'");
            emit_report(result.report, format, file);
            emit_summary(result.report, out);
        } else if (result.text.empty()) {
            emit_report(result.report, format, out);
        }
        if (!opts.plot.empty()) {
            if (result.plot.empty()) throw Error(ErrorCode::EmptySeries, "this command has nothing to plot");
            emit_plot(result.plot, opts.plot, result.plot_options);
        }
    } catch (const Error& e) {
        err << "bowley " << chosen->get_name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "bowley " << chosen->get_name() << ": " << e.what() << '\n';
        return 1;
    }
    return result.ok ? 0 : 1;
}

}  // namespace bowley::cli
