#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "bowley/error.hpp"
#include "bowley/format.hpp"

namespace bowley {

using ReportValue = std::variant<double, std::int64_t, bool, std::string, std::vector<double>>;

/// Flat list of dotted-key fields ("exp.labor.b"). Emitted as nested JSON
/// objects with keys sorted, or as key,value CSV rows.
class RunReport {
public:
    void set(std::string key, ReportValue value) {
        for (auto& [k, v] : fields_) {
            if (k == key) {
                v = std::move(value);
                return;
            }
        }
        fields_.emplace_back(std::move(key), std::move(value));
    }
    void set(std::string key, double value) { set(std::move(key), ReportValue(value)); }
    void set(std::string key, bool value) { set(std::move(key), ReportValue(value)); }
    void set(std::string key, int value) { set(std::move(key), ReportValue(static_cast<std::int64_t>(value))); }
    void set(std::string key, std::size_t value) { set(std::move(key), ReportValue(static_cast<std::int64_t>(value))); }
    void set(std::string key, const char* value) { set(std::move(key), ReportValue(std::string(value))); }

    [[nodiscard]] const std::vector<std::pair<std::string, ReportValue>>& fields() const noexcept { return fields_; }

    [[nodiscard]] const ReportValue* find(std::string_view key) const {
        for (const auto& [k, v] : fields_) {
            if (k == key) return &v;
        }
        return nullptr;
    }

    /// Number of scalars after vectors are expanded element-wise.
    [[nodiscard]] std::size_t scalar_count() const {
        std::size_t n = 0;
        for (const auto& [k, v] : fields_) {
            if (const auto* vec = std::get_if<std::vector<double>>(&v)) {
                n += vec->size();
            } else {
                ++n;
            }
        }
        return n;
    }

private:
    std::vector<std::pair<std::string, ReportValue>> fields_;
};

enum class ReportFormat { Json, Csv };

/// FNV-1a 64, rendered as 16 lowercase hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

namespace detail {

inline std::string json_string(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    static constexpr char kHex[] = "0123456789abcdef";
                    out += "\\u00";
                    out += kHex[c >> 4];
                    out += kHex[c & 0xF];
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
    return out;
}

// JSON has no NaN/Inf; they become null.
inline std::string json_number(double v) { return std::isfinite(v) ? format_double(v, 17) : "null"; }

inline std::string json_scalar(const ReportValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return json_number(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return json_string(v);
            } else {
                std::string out = "[";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ',';
                    out += json_number(v[i]);
                }
                return out + "]";
            }
        },
        value);
}

struct JsonNode {
    const ReportValue* leaf = nullptr;
    std::map<std::string, std::unique_ptr<JsonNode>> children;
};

inline void write_json_node(const JsonNode& node, std::ostream& sink, int depth) {
    const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
    sink << "{\n";
    std::size_t i = 0;
    for (const auto& [key, child] : node.children) {
        sink << pad << json_string(key) << ": ";
        if (child->leaf) {
            sink << json_scalar(*child->leaf);
        } else {
            write_json_node(*child, sink, depth + 1);
        }
        sink << (++i < node.children.size() ? ",\n" : "\n");
    }
    sink << std::string(static_cast<std::size_t>(depth) * 2, ' ') << '}';
}

inline std::string csv_cell(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace detail

inline void emit_report(const RunReport& report, ReportFormat format, std::ostream& sink) {
    if (format == ReportFormat::Json) {
        detail::JsonNode root;
        for (const auto& [key, value] : report.fields()) {
            detail::JsonNode* node = &root;
            std::size_t start = 0;
            for (;;) {
                const auto dot = key.find('.', start);
                const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
                auto& slot = node->children[part];
                if (!slot) slot = std::make_unique<detail::JsonNode>();
                node = slot.get();
                if (dot == std::string::npos) break;
                if (node->leaf) throw Error(ErrorCode::IoError, "report key '" + key + "' nests under a scalar");
                start = dot + 1;
            }
            if (!node->children.empty()) throw Error(ErrorCode::IoError, "report key '" + key + "' is also an object");
            node->leaf = &value;
        }
        detail::write_json_node(root, sink, 0);
        sink << '\n';
    } else {
        for (const auto& [key, value] : report.fields()) {
            if (const auto* vec = std::get_if<std::vector<double>>(&value)) {
                for (std::size_t i = 0; i < vec->size(); ++i) {
                    sink << detail::csv_cell(key + "." + std::to_string(i)) << ',' << detail::json_number((*vec)[i])
                         << '\n';
                }
                continue;
            }
            std::string text;
            if (const auto* s = std::get_if<std::string>(&value)) {
                text = *s;
            } else {
                text = detail::json_scalar(value);
            }
            sink << detail::csv_cell(key) << ',' << detail::csv_cell(text) << '\n';
        }
    }
    if (!sink) throw Error(ErrorCode::IoError, "failed to write report");
}

inline std::string render_report(const RunReport& report, ReportFormat format) {
    std::ostringstream out;
    emit_report(report, format, out);
    return out.str();
}

/// Human-readable "key = value" lines at 7 significant digits.
inline void emit_summary(const RunReport& report, std::ostream& sink) {
    for (const auto& [key, value] : report.fields()) {
        sink << key << " = ";
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) {
                    sink << format_double(v, 7);
                } else if constexpr (std::is_same_v<T, std::int64_t>) {
                    sink << v;
                } else if constexpr (std::is_same_v<T, bool>) {
                    sink << (v ? "true" : "false");
                } else if constexpr (std::is_same_v<T, std::string>) {
                    sink << v;
                } else {
                    sink << '[' << v.size() << " values]";
                }
            },
            value);
        sink << '\n';
    }
}

}  // namespace bowley
