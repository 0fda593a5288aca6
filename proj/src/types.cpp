#include "newsflow/types.hpp"

#include <algorithm>
#include <cstdio>

namespace newsflow {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "Companies", "Financial", "Governmental", "NonProfit", "Households", "Foreign",
};

bool read_digits(std::string_view text, std::size_t pos, std::size_t count, int& out) noexcept {
    if (pos + count > text.size()) {
        return false;
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') {
            return false;
        }
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

std::string_view to_string(InvestorCategory category) noexcept {
    return kCategoryNames[index_of(category)];
}

std::optional<InvestorCategory> parse_category(std::string_view token) noexcept {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (kCategoryNames[i] == token) {
            return kAllCategories[i];
        }
    }
    return std::nullopt;
}

std::optional<Date> parse_date(std::string_view text) noexcept {
    int y = 0;
    int m = 0;
    int d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !read_digits(text, 0, 4, y) ||
        !read_digits(text, 5, 2, m) || !read_digits(text, 8, 2, d)) {
        return std::nullopt;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y},
                                          std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return Date{ymd};
}

std::string format_date(Date day) {
    const std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text, bool* had_zone) noexcept {
    if (text.size() < 19) {
        return std::nullopt;
    }
    const auto day = parse_date(text.substr(0, 10));
    if (!day || (text[10] != 'T' && text[10] != 't' && text[10] != ' ') || text[13] != ':' ||
        text[16] != ':') {
        return std::nullopt;
    }
    int hh = 0;
    int mm = 0;
    int ss = 0;
    if (!read_digits(text, 11, 2, hh) || !read_digits(text, 14, 2, mm) ||
        !read_digits(text, 17, 2, ss) || hh > 23 || mm > 59 || ss > 60) {
        return std::nullopt;
    }
    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
        }
        if (pos == start) {
            return std::nullopt;
        }
    }
    // Leap seconds collapse onto :59.
    ss = std::min(ss, 59);
    Timestamp ts = *day + std::chrono::hours{hh} + std::chrono::minutes{mm} +
                   std::chrono::seconds{ss};
    bool zoned = false;
    if (pos < text.size()) {
        const char z = text[pos];
        if ((z == 'Z' || z == 'z') && pos + 1 == text.size()) {
            zoned = true;
        } else if ((z == '+' || z == '-') && pos + 6 == text.size() && text[pos + 3] == ':') {
            int oh = 0;
            int om = 0;
            if (!read_digits(text, pos + 1, 2, oh) || !read_digits(text, pos + 4, 2, om) ||
                oh > 23 || om > 59) {
                return std::nullopt;
            }
            const auto offset = std::chrono::hours{oh} + std::chrono::minutes{om};
            ts = z == '+' ? ts - offset : ts + offset;
            zoned = true;
        } else {
            return std::nullopt;
        }
    }
    if (had_zone != nullptr) {
        *had_zone = zoned;
    }
    return ts;
}

std::string format_timestamp(Timestamp ts) {
    const Date day = day_of(ts);
    const auto secs = (ts - day).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "T%02lld:%02lld:%02lldZ", static_cast<long long>(secs / 3600),
                  static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60));
    return format_date(day) + buf;
}

int minute_of_day(Timestamp ts) noexcept {
    return static_cast<int>((ts - day_of(ts)).count() / 60);
}

TradingCalendar::TradingCalendar(std::vector<Date> days) : days_(std::move(days)) {
    for (std::size_t i = 1; i < days_.size(); ++i) {
        if (!(days_[i - 1] < days_[i])) {
            throw std::invalid_argument("trading calendar must be strictly increasing (at " +
                                        format_date(days_[i]) + ")");
        }
    }
}

bool TradingCalendar::contains(Date day) const noexcept {
    return std::binary_search(days_.begin(), days_.end(), day);
}

std::optional<std::size_t> TradingCalendar::position(Date day) const noexcept {
    const auto it = std::lower_bound(days_.begin(), days_.end(), day);
    if (it == days_.end() || *it != day) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - days_.begin());
}

}  // namespace newsflow
