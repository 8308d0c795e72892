#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "bowley/series.hpp"

using namespace bowley;
using Catch::Matchers::ContainsSubstring;

namespace {

EconPanel ingest(const std::string& text, std::optional<int> origin = std::nullopt) {
    std::istringstream in(text);
    return ingest_csv(in, origin);
}

ErrorCode code_of(const std::string& text) {
    try {
        ingest(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected ingest_csv to throw");
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("bundled 1899-1922 panel") {
    std::ifstream file(BOWLEY_DATA_DIR "/cobb_douglas_1899_1922.csv");
    REQUIRE(file);
    const EconPanel p = ingest_csv(file);
    REQUIRE(p.size() == 24);
    CHECK(p.years.front() == 1899);
    CHECK(p.years.back() == 1922);
    CHECK(p.labor.front() == 100.0);
    CHECK(p.capital.back() == 431.0);
    CHECK(p.production.back() == 240.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p.time(i) == static_cast<double>(i));
        CHECK(p.years[i] == p.origin_year + static_cast<int>(i));
    }
    CHECK(validate_panel(p).ok);
}

TEST_CASE("origin year shifts the time index") {
    const auto p = ingest("year,labor,capital,production\n2000,1,2,3\n2001,1,2,3\n2002,1,2,3\n", 1999);
    CHECK(p.origin_year == 1999);
    CHECK(p.times() == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("zero value is rejected with row and column") {
    const std::string text = "year,labor,capital,production\n1899,100,100,100\n1900,0,107,101\n1901,110,114,112\n";
    CHECK(code_of(text) == ErrorCode::NonPositiveValue);
    CHECK_THROWS_WITH(ingest(text), ContainsSubstring("line 3") && ContainsSubstring("labor"));
}

TEST_CASE("year gap") {
    CHECK(code_of("year,labor,capital,production\n1899,1,1,1\n1900,1,1,1\n1902,1,1,1\n") ==
          ErrorCode::NonUniformYearStep);
}

TEST_CASE("malformed inputs") {
    CHECK(code_of("") == ErrorCode::MalformedCsv);
    CHECK(code_of("year,labor,capital\n1,1,1\n") == ErrorCode::MalformedCsv);
    CHECK(code_of("year,labor,capital,production\n1899,1,1\n1900,1,1,1\n1901,1,1,1\n") == ErrorCode::MalformedCsv);
    CHECK(code_of("year,labor,capital,production\n1899,1,,1\n1900,1,1,1\n1901,1,1,1\n") == ErrorCode::MalformedCsv);
    CHECK(code_of("year,labor,capital,production\n1899,1,abc,1\n1900,1,1,1\n1901,1,1,1\n") == ErrorCode::MalformedCsv);
    CHECK(code_of("year,labor,capital,production\n1899,1,inf,1\n1900,1,1,1\n1901,1,1,1\n") == ErrorCode::MalformedCsv);
    CHECK(code_of("year,labor,capital,production\n1899.5,1,1,1\n1900,1,1,1\n1901,1,1,1\n") == ErrorCode::MalformedCsv);
    CHECK(code_of("year,labor,capital,production\n1899,1,1,1\n\n1900,1,1,1\n1901,1,1,1\n") == ErrorCode::MalformedCsv);
    CHECK(code_of("year,labor,capital,production\n1899,1,1,1\n1900,1,1,1\n") == ErrorCode::TooFewRows);
    CHECK(code_of("year,labor,capital,production\n1899,1,1,-2\n1900,1,1,1\n1901,1,1,1\n") == ErrorCode::NonPositiveValue);
}

TEST_CASE("accepted formatting variants") {
    const auto p = ingest("\xEF\xBB\xBFyear,labor,capital,production\r\n1899, 1.5e2 ,+2,3E-1\r\n1900,1,1,1\r\n1901,1,1,1\r\n\r\n\n");
    REQUIRE(p.size() == 3);
    CHECK(p.labor[0] == 150.0);
    CHECK(p.capital[0] == 2.0);
    CHECK(p.production[0] == 0.3);
}

TEST_CASE("validate_panel on hand-built panels") {
    EconPanel p{{1, 2, 3}, {1, 1, 1}, {1, -1, 1}, {1, 1, 1}, 1};
    auto report = validate_panel(p);
    CHECK_FALSE(report.ok);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].row == 1);
    CHECK(report.issues[0].column == "capital");

    EconPanel q{{1, 2, 3}, {1, 1}, {1, 1, 1}, {1, 1, 1}, 1};
    report = validate_panel(q);
    CHECK_FALSE(report.ok);
    CHECK_THAT(report.issues.at(0).message, ContainsSubstring("lengths differ"));
}

TEST_CASE("write_csv round trip is bit exact") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> exponent(-30.0, 30.0);
    for (int trial = 0; trial < 20; ++trial) {
        EconPanel p;
        p.origin_year = 1947;
        for (int i = 0; i < 30; ++i) {
            p.years.push_back(1947 + i);
            p.labor.push_back(std::exp(exponent(rng)));
            p.capital.push_back(std::exp(exponent(rng)));
            p.production.push_back(std::exp(exponent(rng)));
        }
        std::stringstream buffer;
        write_csv(p, buffer);
        const EconPanel back = ingest_csv(buffer);
        CHECK(back.years == p.years);
        CHECK(back.labor == p.labor);
        CHECK(back.capital == p.capital);
        CHECK(back.production == p.production);
    }
}
