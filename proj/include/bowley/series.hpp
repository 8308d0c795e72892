#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bowley/error.hpp"
#include "bowley/format.hpp"

namespace bowley {

/// Aligned labor / capital / production observations, one row per calendar
/// year. Row i sits at time t = years[i] - origin_year.
///
/// The struct is a plain aggregate so that callers can assemble panels by
/// hand; ingest_csv() is the checked constructor and validate_panel() re-runs
/// every check on an arbitrary instance.
struct EconPanel {
    std::vector<int> years;
    std::vector<double> labor;
    std::vector<double> capital;
    std::vector<double> production;
    int origin_year = 0;

    [[nodiscard]] std::size_t size() const noexcept { return years.size(); }

    [[nodiscard]] double time(std::size_t i) const { return static_cast<double>(years.at(i) - origin_year); }

    [[nodiscard]] std::vector<double> times() const {
        std::vector<double> t(years.size());
        for (std::size_t i = 0; i < years.size(); ++i) t[i] = time(i);
        return t;
    }
};

struct ValidationIssue {
    std::size_t row;  // 0-based panel row; npos-like value SIZE_MAX for whole-panel issues
    std::string column;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
};

inline constexpr std::string_view kPanelHeader = "year,labor,capital,production";
inline constexpr std::size_t kMinPanelRows = 3;

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            return cells;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

inline std::string cite(std::size_t line, std::string_view column) {
    return "line " + std::to_string(line) + ", column '" + std::string(column) + "'";
}

}  // namespace detail

/// Reads a `year,labor,capital,production` CSV. LF or CRLF line endings;
/// decimals in plain or scientific notation with a '.' separator. Blank
/// trailing lines are ignored; an empty cell is a missing value and fails.
inline EconPanel ingest_csv(std::istream& source, std::optional<int> origin_year = std::nullopt) {
    static constexpr std::string_view kColumns[] = {"year", "labor", "capital", "production"};

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(source, line)) {
        throw Error(ErrorCode::MalformedCsv, "empty input, expected header '" + std::string(kPanelHeader) + "'");
    }
    ++line_no;
    std::string_view header = detail::trim(line);
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    if (header != kPanelHeader) {
        throw Error(ErrorCode::MalformedCsv,
                    "line 1: expected header '" + std::string(kPanelHeader) + "', got '" + std::string(header) + "'");
    }

    EconPanel panel;
    std::size_t pending_blank = 0;
    while (std::getline(source, line)) {
        ++line_no;
        const std::string_view row = detail::trim(line);
        if (row.empty()) {
            ++pending_blank;
            continue;
        }
        if (pending_blank > 0) {
            throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(line_no - 1) + ": blank line inside data");
        }
        const auto cells = detail::split_commas(row);
        if (cells.size() != 4) {
            throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(line_no) + ": expected 4 cells, got " +
                                                     std::to_string(cells.size()));
        }

        int year = 0;
        {
            const auto cell = cells[0];
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), year);
            if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw Error(ErrorCode::MalformedCsv,
                            detail::cite(line_no, kColumns[0]) + ": not an integer year: '" + std::string(cell) + "'");
            }
        }

        double values[3] = {};
        for (std::size_t c = 1; c < 4; ++c) {
            const auto cell = cells[c];
            const char* first = cell.data();
            if (!cell.empty() && *first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), values[c - 1]);
            if (cell.empty()) {
                throw Error(ErrorCode::MalformedCsv, detail::cite(line_no, kColumns[c]) + ": missing value");
            }
            if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(values[c - 1])) {
                throw Error(ErrorCode::MalformedCsv,
                            detail::cite(line_no, kColumns[c]) + ": not a finite decimal: '" + std::string(cell) + "'");
            }
            if (values[c - 1] <= 0.0) {
                throw Error(ErrorCode::NonPositiveValue,
                            detail::cite(line_no, kColumns[c]) + ": value must be > 0, got " + std::string(cell));
            }
        }

        panel.years.push_back(year);
        panel.labor.push_back(values[0]);
        panel.capital.push_back(values[1]);
        panel.production.push_back(values[2]);
    }
    if (source.bad()) throw Error(ErrorCode::IoError, "read failure");

    if (panel.size() < kMinPanelRows) {
        throw Error(ErrorCode::TooFewRows,
                    "need at least " + std::to_string(kMinPanelRows) + " rows, got " + std::to_string(panel.size()));
    }
    for (std::size_t i = 1; i < panel.size(); ++i) {
        if (panel.years[i] != panel.years[i - 1] + 1) {
            throw Error(ErrorCode::NonUniformYearStep, "year " + std::to_string(panel.years[i]) + " follows " +
                                                           std::to_string(panel.years[i - 1]) +
                                                           "; years must increase in steps of 1");
        }
    }
    panel.origin_year = origin_year.value_or(panel.years.front());
    return panel;
}

/// Re-checks every panel invariant and collects all violations.
inline ValidationReport validate_panel(const EconPanel& panel) {
    constexpr std::size_t kWhole = static_cast<std::size_t>(-1);
    ValidationReport report;
    auto add = [&](std::size_t row, std::string column, std::string message) {
        report.issues.push_back({row, std::move(column), std::move(message)});
    };

    const std::size_t n = panel.years.size();
    if (panel.labor.size() != n || panel.capital.size() != n || panel.production.size() != n) {
        add(kWhole, "", "series lengths differ: years=" + std::to_string(n) +
                            " labor=" + std::to_string(panel.labor.size()) +
                            " capital=" + std::to_string(panel.capital.size()) +
                            " production=" + std::to_string(panel.production.size()));
    }
    if (n < kMinPanelRows) {
        add(kWhole, "year", "need at least " + std::to_string(kMinPanelRows) + " rows, got " + std::to_string(n));
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (panel.years[i] != panel.years[i - 1] + 1) {
            add(i, "year", "year " + std::to_string(panel.years[i]) + " does not follow " +
                               std::to_string(panel.years[i - 1]) + " by one");
        }
    }
    auto check_column = [&](const std::vector<double>& values, const char* name) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i])) {
                add(i, name, "value is not finite");
            } else if (values[i] <= 0.0) {
                add(i, name, "value must be > 0, got " + format_double(values[i]));
            }
        }
    };
    check_column(panel.labor, "labor");
    check_column(panel.capital, "capital");
    check_column(panel.production, "production");

    report.ok = report.issues.empty();
    return report;
}

/// Writes the panel in the ingest format, 17 significant digits per value.
inline void write_csv(const EconPanel& panel, std::ostream& sink) {
    sink << kPanelHeader << '\n';
    for (std::size_t i = 0; i < panel.size(); ++i) {
        sink << panel.years[i] << ',' << format_double(panel.labor[i]) << ',' << format_double(panel.capital[i]) << ','
             << format_double(panel.production[i]) << '\n';
    }
    if (!sink) throw Error(ErrorCode::IoError, "write failure");
}

}  // namespace bowley
