#pragma once

#include "asap/series.hpp"

#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

// CSV time series ingestion and emission.
//
// Accepted layouts: `timestamp,value` or a single `value` column (unit-spaced
// timestamps are implied). The first line may be a header. Timestamps are
// integer epoch milliseconds or ISO-8601; the format is detected once from the
// first data row and then enforced for the whole file.

namespace asap::io {

/// Malformed input; `line` is 1-based (0 when not tied to a line).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class TimeFormat { implied, epoch_millis, iso8601 };

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline bool take_digits(std::string_view& s, std::size_t count, int& out) {
    if (s.size() < count) return false;
    int v = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + (s[i] - '0');
    }
    out = v;
    s.remove_prefix(count);
    return true;
}

inline bool take_char(std::string_view& s, char c) {
    if (s.empty() || s.front() != c) return false;
    s.remove_prefix(1);
    return true;
}

} // namespace detail

/// YYYY-MM-DD[(T| )hh:mm[:ss[.fff...]]][Z|(+|-)hh[:]mm] to epoch milliseconds, UTC.
inline std::optional<Timestamp> parse_iso8601(std::string_view s) {
    using namespace std::chrono;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!detail::take_digits(s, 4, y) || !detail::take_char(s, '-') || !detail::take_digits(s, 2, mo) ||
        !detail::take_char(s, '-') || !detail::take_digits(s, 2, d))
        return std::nullopt;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;

    std::int64_t millis = 0;
    if (!s.empty()) {
        if (!detail::take_char(s, 'T') && !detail::take_char(s, ' ')) return std::nullopt;
        if (!detail::take_digits(s, 2, h) || !detail::take_char(s, ':') || !detail::take_digits(s, 2, mi))
            return std::nullopt;
        if (detail::take_char(s, ':')) {
            if (!detail::take_digits(s, 2, sec)) return std::nullopt;
            if (detail::take_char(s, '.')) {
                int digits = 0;
                std::int64_t frac = 0;
                while (!s.empty() && s.front() >= '0' && s.front() <= '9') {
                    if (digits < 3) frac = frac * 10 + (s.front() - '0');
                    ++digits;
                    s.remove_prefix(1);
                }
                if (digits == 0) return std::nullopt;
                for (int i = digits; i < 3; ++i) frac *= 10;
                millis = frac;
            }
        }
        if (h > 23 || mi > 59 || sec > 60) return std::nullopt;
        const bool utc = detail::take_char(s, 'Z');
        if (!utc && !s.empty() && (s.front() == '+' || s.front() == '-')) {
            const int sign = s.front() == '+' ? 1 : -1;
            s.remove_prefix(1);
            int oh = 0, om = 0;
            if (!detail::take_digits(s, 2, oh)) return std::nullopt;
            detail::take_char(s, ':');
            if (!detail::take_digits(s, 2, om)) return std::nullopt;
            millis -= sign * (static_cast<std::int64_t>(oh) * 3600 + om * 60) * 1000;
        }
        if (!s.empty()) return std::nullopt;
    }
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<Timestamp>(days) * 86'400'000 + (static_cast<std::int64_t>(h) * 3600 + mi * 60 + sec) * 1000 +
           millis;
}

/// Incremental row parser, so stdin streams can be consumed line by line with
/// the same rules as whole files.
class RowParser {
public:
    struct Row {
        Timestamp t;
        double v;
    };

    /// nullopt for blank lines and a leading header line.
    std::optional<Row> parse(std::string_view raw) {
        ++line_;
        const auto line = detail::trim(raw);
        if (line.empty()) return std::nullopt;
        const auto fields = detail::split(line);

        if (!columns_) {
            const bool header = !row_is_data(fields);
            if (header) {
                if (seen_header_ || rows_ > 0) throw ParseError(line_, "unparseable row");
                seen_header_ = true;
                return std::nullopt;
            }
            columns_ = fields.size();
            if (*columns_ == 1) {
                format_ = TimeFormat::implied;
            } else {
                format_ = detail::parse_int(fields[0]) ? TimeFormat::epoch_millis : TimeFormat::iso8601;
            }
        }
        if (fields.size() != *columns_)
            throw ParseError(line_, "expected " + std::to_string(*columns_) + " columns, found " +
                                        std::to_string(fields.size()));

        Row row{};
        const auto value = detail::parse_double(fields.back());
        if (!value) throw ParseError(line_, "unparseable value '" + std::string(fields.back()) + "'");
        if (!std::isfinite(*value)) throw ParseError(line_, "non-finite value");
        row.v = *value;
        switch (format_) {
        case TimeFormat::implied:
            row.t = static_cast<Timestamp>(rows_);
            break;
        case TimeFormat::epoch_millis: {
            const auto t = detail::parse_int(fields[0]);
            if (!t) throw ParseError(line_, "unparseable epoch timestamp '" + std::string(fields[0]) + "'");
            row.t = *t;
            break;
        }
        case TimeFormat::iso8601: {
            const auto t = parse_iso8601(fields[0]);
            if (!t) throw ParseError(line_, "unparseable ISO-8601 timestamp '" + std::string(fields[0]) + "'");
            row.t = *t;
            break;
        }
        }
        ++rows_;
        return row;
    }

    [[nodiscard]] TimeFormat format() const noexcept { return format_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    static bool row_is_data(const std::vector<std::string_view>& fields) {
        if (fields.empty() || fields.size() > 2 || !detail::parse_double(fields.back())) return false;
        if (fields.size() == 2) return detail::parse_int(fields[0]) || parse_iso8601(fields[0]);
        return true;
    }

    std::size_t line_ = 0;
    std::size_t rows_ = 0;
    bool seen_header_ = false;
    std::optional<std::size_t> columns_;
    TimeFormat format_ = TimeFormat::implied;
};

struct CsvData {
    Series series;
    TimeFormat format = TimeFormat::implied;
};

inline CsvData read_csv(std::istream& in) {
    RowParser parser;
    std::vector<Timestamp> ts;
    std::vector<double> vs;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto row = parser.parse(line)) {
            if (!ts.empty() && row->t < ts.back()) throw ParseError(parser.line(), "timestamps must not decrease");
            ts.push_back(row->t);
            vs.push_back(row->v);
        }
    }
    return {Series(std::move(ts), std::move(vs)), parser.format()};
}

/// Shortest round-trip decimal form; deterministic across runs.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline void write_csv(std::ostream& out, const Series& series) {
    out << "timestamp,value\n";
    const auto& ts = series.timestamps();
    const auto& vs = series.values();
    for (std::size_t i = 0; i < series.size(); ++i) out << ts[i] << ',' << format_double(vs[i]) << '\n';
}

} // namespace asap::io
