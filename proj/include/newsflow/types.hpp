#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace newsflow {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

/// Raised for any malformed or invalid input record. `line()` is the 1-based
/// physical line of the offending row, or 0 when not tied to a row.
class ParseError : public std::runtime_error {
public:
    enum class Kind {
        Malformed,
        UnknownCategory,
        DuplicateKey,
        NegativeVolume,
        InvalidValue,
    };

    ParseError(Kind kind, std::size_t line, const std::string& what);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

enum class InvestorCategory {
    Companies,
    Financial,
    Governmental,
    NonProfit,
    Households,
    Foreign,
};

inline constexpr std::size_t kCategoryCount = 6;

inline constexpr std::array<InvestorCategory, kCategoryCount> kAllCategories = {
    InvestorCategory::Companies,  InvestorCategory::Financial,  InvestorCategory::Governmental,
    InvestorCategory::NonProfit,  InvestorCategory::Households, InvestorCategory::Foreign,
};

[[nodiscard]] std::string_view to_string(InvestorCategory category) noexcept;
[[nodiscard]] std::optional<InvestorCategory> parse_category(std::string_view token) noexcept;
[[nodiscard]] constexpr std::size_t index_of(InvestorCategory category) noexcept {
    return static_cast<std::size_t>(category);
}

// ISO-8601 calendar dates ("2003-01-02") and RFC 3339 instants.
[[nodiscard]] std::optional<Date> parse_date(std::string_view text) noexcept;
[[nodiscard]] std::string format_date(Date day);

/// Parses an RFC 3339 timestamp. A trailing 'Z' or numeric offset is applied to
/// yield UTC; a timestamp without any zone designator is returned as written
/// (treated as local wall-clock time) and `had_zone` reports false.
[[nodiscard]] std::optional<Timestamp> parse_timestamp(std::string_view text,
                                                       bool* had_zone = nullptr) noexcept;
[[nodiscard]] std::string format_timestamp(Timestamp ts);

[[nodiscard]] inline Date day_of(Timestamp ts) noexcept {
    return std::chrono::floor<std::chrono::days>(ts);
}

/// Minutes elapsed since 00:00 UTC on the timestamp's day, in [0, 1440).
[[nodiscard]] int minute_of_day(Timestamp ts) noexcept;

struct TransactionRecord {
    std::string investor_id;
    InvestorCategory category{};
    Date day{};
    double volume_bought = 0.0;
    double volume_sold = 0.0;

    bool operator==(const TransactionRecord&) const = default;
};

struct PriceRecord {
    Date day{};
    double close = 0.0;
    double high = 0.0;
    double low = 0.0;

    bool operator==(const PriceRecord&) const = default;
};

struct HeadlineRecord {
    Timestamp timestamp{};
    std::string text;

    bool operator==(const HeadlineRecord&) const = default;
};

/// Strictly increasing list of trading days.
class TradingCalendar {
public:
    TradingCalendar() = default;
    /// Throws std::invalid_argument unless `days` is strictly increasing.
    explicit TradingCalendar(std::vector<Date> days);

    [[nodiscard]] const std::vector<Date>& days() const noexcept { return days_; }
    [[nodiscard]] std::size_t size() const noexcept { return days_.size(); }
    [[nodiscard]] bool empty() const noexcept { return days_.empty(); }
    [[nodiscard]] bool contains(Date day) const noexcept;
    [[nodiscard]] std::optional<std::size_t> position(Date day) const noexcept;

private:
    std::vector<Date> days_;
};

}  // namespace newsflow
