#include <catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bowley/growth.hpp"
#include "bowley/invariants.hpp"
#include "bowley/plot.hpp"
#include "bowley/production_fit.hpp"
#include "bowley/report.hpp"

using namespace bowley;

namespace {

RunReport sample_report() {
    RunReport r;
    r.set("command", "fit-exp");
    r.set("exp.labor.b", 0.025488932459225198);
    r.set("exp.labor.x0", 106.65511341706197);
    r.set("exp.capital.b", 1.0 / 3.0);
    r.set("exp.tiny", 1e-300);
    r.set("exp.huge", 6.02214076e23);
    r.set("input.rows", 24);
    r.set("input.checksum", "df225ed2171ffa7b");
    r.set("ok", true);
    r.set("values", std::vector<double>{0.1, 0.2, 0.30000000000000004});
    r.set("note", "a \"quoted\", comma");
    return r;
}

std::vector<std::string> polylines(const std::string& svg) {
    std::vector<std::string> out;
    const std::regex re("<polyline class=\"series\"[^>]*points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        out.push_back((*it)[1].str());
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

TEST_CASE("fnv1a_hex") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("format_double") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(0.1, 7) == "0.1");
    CHECK(format_double(100.0) == "100");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("JSON report is deterministic and round-trips") {
    const RunReport r = sample_report();
    const std::string a = render_report(r, ReportFormat::Json);
    const std::string b = render_report(r, ReportFormat::Json);
    CHECK(a == b);

    const auto doc = nlohmann::json::parse(a);
    CHECK(doc["command"] == "fit-exp");
    CHECK(doc["exp"]["labor"]["b"].get<double>() == 0.025488932459225198);
    CHECK(doc["exp"]["capital"]["b"].get<double>() == 1.0 / 3.0);
    CHECK(doc["exp"]["tiny"].get<double>() == 1e-300);
    CHECK(doc["exp"]["huge"].get<double>() == 6.02214076e23);
    CHECK(doc["input"]["rows"].get<int>() == 24);
    CHECK(doc["ok"].get<bool>());
    CHECK(doc["values"][2].get<double>() == 0.30000000000000004);
    CHECK(doc["note"] == "a \"quoted\", comma");

    // Keys come out sorted regardless of insertion order.
    CHECK(a.find("\"capital\"") < a.find("\"labor\""));
}

TEST_CASE("JSON maps non-finite numbers to null") {
    RunReport r;
    r.set("x", std::numeric_limits<double>::quiet_NaN());
    r.set("y", std::numeric_limits<double>::infinity());
    const auto doc = nlohmann::json::parse(render_report(r, ReportFormat::Json));
    CHECK(doc["x"].is_null());
    CHECK(doc["y"].is_null());
}

TEST_CASE("conflicting keys are rejected") {
    RunReport r;
    r.set("a", 1.0);
    r.set("a.b", 2.0);
    CHECK_THROWS_AS(render_report(r, ReportFormat::Json), Error);
}

TEST_CASE("set replaces an existing key") {
    RunReport r;
    r.set("a", 1.0);
    r.set("a", 2.0);
    REQUIRE(r.fields().size() == 1);
    CHECK(std::get<double>(*r.find("a")) == 2.0);
    CHECK(r.find("missing") == nullptr);
}

TEST_CASE("CSV report has one row per scalar") {
    const RunReport r = sample_report();
    const std::string csv = render_report(r, ReportFormat::Csv);
    CHECK(csv == render_report(r, ReportFormat::Csv));
    std::size_t rows = 0;
    for (char c : csv) rows += c == '\n';
    CHECK(rows == r.scalar_count());
    CHECK(r.scalar_count() == 13);
    CHECK(csv.find("values.2,0.30000000000000004\n") != std::string::npos);
    CHECK(csv.find("note,\"a \"\"quoted\"\", comma\"\n") != std::string::npos);
    CHECK(csv.find("exp.labor.b,0.025488932459225198\n") != std::string::npos);
}

TEST_CASE("summary uses 7 significant digits") {
    std::ostringstream out;
    emit_summary(sample_report(), out);
    CHECK(out.str().find("exp.labor.b = 0.02548893\n") != std::string::npos);
    CHECK(out.str().find("values = [3 values]\n") != std::string::npos);
}

TEST_CASE("plot of observed and fitted production") {
    std::ifstream file(BOWLEY_DATA_DIR "/cobb_douglas_1899_1922.csv");
    const auto panel = ingest_csv(file);
    const auto fit = fit_tfp(panel, 1.0, 0.16114881212);
    std::vector<double> years(panel.years.begin(), panel.years.end()), trend(panel.size());
    for (std::size_t i = 0; i < panel.size(); ++i) trend[i] = eval_cobb_douglas(fit.cd, panel.labor[i], panel.capital[i]);
    const std::vector<PlotSeries> series{{"observed", years, panel.production}, {"Cobb-Douglas", years, trend}};

    std::ostringstream a, b;
    emit_plot(series, a, {"Production", "year", "index"});
    emit_plot(series, b, {"Production", "year", "index"});
    CHECK(a.str() == b.str());

    const auto lines = polylines(a.str());
    REQUIRE(lines.size() == 2);
    for (const auto& pts : lines) CHECK(split(pts, ' ').size() == 24);
    CHECK(a.str().find("<g class=\"legend\"") != std::string::npos);
    CHECK(a.str().find(">observed</text>") != std::string::npos);
    CHECK(a.str().find(">Cobb-Douglas</text>") != std::string::npos);
}

TEST_CASE("constant series gives a horizontal line and padded axis") {
    const std::vector<PlotSeries> series{{"flat", {0, 1, 2, 3}, {5, 5, 5, 5}}};
    std::ostringstream out;
    emit_plot(series, out);
    const auto lines = polylines(out.str());
    REQUIRE(lines.size() == 1);
    std::set<std::string> ys;
    for (const auto& pt : split(lines[0], ' ')) ys.insert(split(pt, ',').at(1));
    CHECK(ys.size() == 1);
    // The five y tick labels must be distinct numbers.
    const std::regex tick("text-anchor=\"end\">([^<]*)</text>");
    std::set<std::string> labels;
    const std::string svg = out.str();
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tick); it != std::sregex_iterator(); ++it) {
        labels.insert((*it)[1].str());
    }
    CHECK(labels.size() == 5);
}

TEST_CASE("plot errors") {
    const std::vector<PlotSeries> none;
    std::ostringstream out;
    try {
        emit_plot(none, out);
        FAIL("expected EmptySeries");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptySeries);
    }
    const std::vector<PlotSeries> ragged{{"x", {0, 1}, {1}}};
    CHECK_THROWS_AS(emit_plot(ragged, out), Error);
    const std::vector<PlotSeries> nan{{"x", {0, 1}, {1, std::nan("")}}};
    CHECK_THROWS_AS(emit_plot(nan, out), Error);
    const std::vector<PlotSeries> ok{{"x", {0, 1}, {1, 2}}};
    try {
        emit_plot(ok, std::string("/nonexistent-dir/plot.svg"));
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}

TEST_CASE("title and names are escaped") {
    const std::vector<PlotSeries> s{{"a<b & c", {0, 1}, {1, 2}}};
    std::ostringstream out;
    emit_plot(s, out, {"x \"y\"", "t", "v"});
    CHECK(out.str().find("a&lt;b &amp; c") != std::string::npos);
    CHECK(out.str().find("x &quot;y&quot;") != std::string::npos);
}
