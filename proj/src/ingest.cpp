#include "newsflow/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "newsflow/delimited.hpp"

namespace newsflow::ingest {

namespace {

using Kind = ParseError::Kind;
using json = nlohmann::json;

Date require_date(std::string_view text, std::size_t line) {
    if (const auto day = parse_date(text)) {
        return *day;
    }
    throw ParseError(Kind::InvalidValue, line, "invalid date '" + std::string(text) + "'");
}

double require_number(std::string_view text, std::size_t line, std::string_view what) {
    if (const auto value = parse_number(text)) {
        return *value;
    }
    throw ParseError(Kind::InvalidValue, line,
                     "invalid " + std::string(what) + " '" + std::string(text) + "'");
}

Timestamp require_utc(std::string_view text, std::size_t line, const LocalTimeRule* local_rule) {
    bool zoned = false;
    const auto ts = parse_timestamp(text, &zoned);
    if (!ts) {
        throw ParseError(Kind::InvalidValue, line, "invalid timestamp '" + std::string(text) + "'");
    }
    if (zoned) {
        return *ts;
    }
    if (local_rule == nullptr) {
        throw ParseError(Kind::InvalidValue, line,
                         "timestamp '" + std::string(text) +
                             "' has no UTC designator and no local time rule was given");
    }
    return local_to_utc(*ts, *local_rule);
}

HeadlineRecord make_headline(Timestamp ts, std::string_view text, std::size_t line) {
    std::string normalized = normalize_space(text);
    if (normalized.empty()) {
        throw ParseError(Kind::InvalidValue, line, "empty headline text");
    }
    return HeadlineRecord{ts, std::move(normalized)};
}

std::vector<HeadlineRecord> parse_headlines_jsonl(std::istream& in, const LocalTimeRule* rule) {
    std::vector<HeadlineRecord> out;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (trim(raw).empty()) {
            continue;
        }
        json obj;
        try {
            obj = json::parse(raw);
        } catch (const json::parse_error& e) {
            throw ParseError(Kind::Malformed, line, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object() || !obj.contains("ts") || !obj.contains("text") ||
            !obj["ts"].is_string() || !obj["text"].is_string()) {
            throw ParseError(Kind::Malformed, line, "expected object with string 'ts' and 'text'");
        }
        const auto ts = require_utc(obj["ts"].get<std::string>(), line, rule);
        out.push_back(make_headline(ts, obj["text"].get<std::string>(), line));
    }
    return out;
}

std::vector<HeadlineRecord> parse_headlines_delimited(std::istream& in, const LocalTimeRule* rule) {
    DelimitedReader reader(in);
    const auto ts_col = reader.require_column("ts");
    const auto text_col = reader.require_column("text");
    std::vector<HeadlineRecord> out;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        const auto ts = require_utc(fields[ts_col], reader.line(), rule);
        out.push_back(make_headline(ts, fields[text_col], reader.line()));
    }
    return out;
}

Date last_sunday(std::chrono::year y, std::chrono::month m) {
    const Date last{y / m / std::chrono::last};
    return last - (std::chrono::weekday{last} - std::chrono::Sunday);
}

Date nth_sunday(std::chrono::year y, std::chrono::month m, unsigned n) {
    return Date{y / m / std::chrono::Sunday[n]};
}

struct DateHash {
    std::size_t operator()(const std::pair<std::string, Date>& key) const noexcept {
        return std::hash<std::string>{}(key.first) ^
               (std::hash<long long>{}(key.second.time_since_epoch().count()) * 0x9e3779b97f4a7c15ULL);
    }
};

}  // namespace

std::vector<TransactionRecord> parse_transactions(std::istream& in, const TransactionSchema& schema) {
    DelimitedReader reader(in, schema.delimiter);
    const auto id_col = reader.require_column(schema.investor_id);
    const auto cat_col = reader.require_column(schema.category);
    const auto day_col = reader.require_column(schema.day);
    const auto buy_col = reader.require_column(schema.volume_bought);
    const auto sell_col = reader.require_column(schema.volume_sold);

    std::vector<TransactionRecord> out;
    std::unordered_set<std::pair<std::string, Date>, DateHash> seen;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const std::size_t line = reader.line();
        if (f[id_col].empty()) {
            throw ParseError(Kind::Malformed, line, "empty investor id");
        }
        const auto category = parse_category(f[cat_col]);
        if (!category) {
            throw ParseError(Kind::UnknownCategory, line, "unknown category '" + f[cat_col] + "'");
        }
        TransactionRecord rec;
        rec.investor_id = f[id_col];
        rec.category = *category;
        rec.day = require_date(f[day_col], line);
        rec.volume_bought = require_number(f[buy_col], line, "buy volume");
        rec.volume_sold = require_number(f[sell_col], line, "sell volume");
        if (rec.volume_bought < 0.0 || rec.volume_sold < 0.0) {
            throw ParseError(Kind::NegativeVolume, line, "negative volume");
        }
        if (!seen.emplace(rec.investor_id, rec.day).second) {
            throw ParseError(Kind::DuplicateKey, line,
                             "duplicate record for investor '" + rec.investor_id + "' on " +
                                 format_date(rec.day));
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<PriceRecord> parse_prices(std::istream& in, const PriceSchema& schema) {
    DelimitedReader reader(in, schema.delimiter);
    const auto day_col = reader.require_column(schema.day);
    const auto close_col = reader.require_column(schema.close);
    const auto high_col = reader.require_column(schema.high);
    const auto low_col = reader.require_column(schema.low);

    std::vector<PriceRecord> out;
    std::vector<std::size_t> lines;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const std::size_t line = reader.line();
        PriceRecord rec{require_date(f[day_col], line), require_number(f[close_col], line, "close"),
                        require_number(f[high_col], line, "high"),
                        require_number(f[low_col], line, "low")};
        if (rec.close <= 0.0 || rec.high <= 0.0 || rec.low <= 0.0) {
            throw ParseError(Kind::InvalidValue, line, "prices must be strictly positive");
        }
        if (rec.low > rec.high) {
            throw ParseError(Kind::InvalidValue, line, "low exceeds high");
        }
        out.push_back(rec);
        lines.push_back(line);
    }
    std::vector<std::size_t> order(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out[a].day < out[b].day; });
    std::vector<PriceRecord> sorted;
    sorted.reserve(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && out[order[i]].day == out[order[i - 1]].day) {
            throw ParseError(Kind::DuplicateKey, lines[order[i]],
                             "duplicate price for " + format_date(out[order[i]].day));
        }
        sorted.push_back(out[order[i]]);
    }
    return sorted;
}

TradingCalendar calendar_from_prices(std::span<const PriceRecord> prices) {
    std::vector<Date> days;
    days.reserve(prices.size());
    for (const auto& p : prices) {
        days.push_back(p.day);
    }
    return TradingCalendar(std::move(days));
}

LocalTimeRule parse_local_time_rule(std::istream& in) {
    LocalTimeRule rule;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view body = raw;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        body = trim(body);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(Kind::Malformed, line, "expected 'key = value'");
        }
        const auto key = trim(body.substr(0, eq));
        const auto value = trim(body.substr(eq + 1));
        if (key == "standard_offset_minutes" || key == "dst_offset_minutes") {
            const double minutes = require_number(value, line, key);
            if (minutes != static_cast<int>(minutes) || std::abs(minutes) > 24 * 60) {
                throw ParseError(Kind::InvalidValue, line, "offset must be whole minutes");
            }
            (key == "standard_offset_minutes" ? rule.standard_offset_minutes
                                              : rule.dst_offset_minutes) = static_cast<int>(minutes);
        } else if (key == "dst_rule") {
            if (value == "EU") {
                rule.regime = DstRegime::EU;
            } else if (value == "US") {
                rule.regime = DstRegime::US;
            } else if (value == "none") {
                rule.regime = DstRegime::None;
            } else {
                throw ParseError(Kind::InvalidValue, line, "dst_rule must be EU, US or none");
            }
        } else {
            throw ParseError(Kind::Malformed, line, "unknown key '" + std::string(key) + "'");
        }
    }
    return rule;
}

bool in_daylight_saving(Timestamp local, const LocalTimeRule& rule) {
    using std::chrono::hours;
    using std::chrono::minutes;
    const std::chrono::year y = std::chrono::year_month_day{day_of(local)}.year();
    switch (rule.regime) {
    case DstRegime::None:
        return false;
    case DstRegime::EU: {
        // Transitions at 01:00 UTC on the last Sundays of March and October.
        const auto std_off = minutes{rule.standard_offset_minutes};
        const Timestamp start = last_sunday(y, std::chrono::March) + hours{1} + std_off;
        const Timestamp end = last_sunday(y, std::chrono::October) + hours{1} + std_off +
                              minutes{rule.dst_offset_minutes};
        return local >= start && local < end;
    }
    case DstRegime::US: {
        // 02:00 local wall clock; the 2007 Energy Policy Act moved both dates.
        const bool modern = y >= std::chrono::year{2007};
        const Date start_day = modern ? nth_sunday(y, std::chrono::March, 2)
                                      : nth_sunday(y, std::chrono::April, 1);
        const Date end_day = modern ? nth_sunday(y, std::chrono::November, 1)
                                    : last_sunday(y, std::chrono::October);
        return local >= start_day + hours{2} && local < end_day + hours{2};
    }
    }
    return false;
}

Timestamp local_to_utc(Timestamp local, const LocalTimeRule& rule) {
    auto offset = std::chrono::minutes{rule.standard_offset_minutes};
    if (in_daylight_saving(local, rule)) {
        offset += std::chrono::minutes{rule.dst_offset_minutes};
    }
    return local - offset;
}

std::vector<HeadlineRecord> parse_headlines(std::istream& in, HeadlineFormat format,
                                            const LocalTimeRule* local_rule) {
    if (format == HeadlineFormat::Auto) {
        while (std::isspace(in.peek()) != 0) {
            in.get();
        }
        format = in.peek() == '{' ? HeadlineFormat::JsonLines : HeadlineFormat::Delimited;
        if (in.peek() == std::char_traits<char>::eof()) {
            return {};
        }
    }
    return format == HeadlineFormat::JsonLines ? parse_headlines_jsonl(in, local_rule)
                                               : parse_headlines_delimited(in, local_rule);
}

std::vector<HeadlineRecord> dedupe_headlines(std::span<const HeadlineRecord> headlines) {
    std::unordered_map<std::string, Timestamp> first_release;
    first_release.reserve(headlines.size());
    for (const auto& h : headlines) {
        auto key = normalize_space(h.text);
        const auto [it, inserted] = first_release.try_emplace(std::move(key), h.timestamp);
        if (!inserted && h.timestamp < it->second) {
            it->second = h.timestamp;
        }
    }
    std::vector<HeadlineRecord> out;
    out.reserve(first_release.size());
    for (auto& [text, ts] : first_release) {
        out.push_back(HeadlineRecord{ts, text});
    }
    std::sort(out.begin(), out.end(), [](const HeadlineRecord& a, const HeadlineRecord& b) {
        return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.text < b.text;
    });
    return out;
}

std::vector<HeadlineRecord> filter_trading_hours(std::span<const HeadlineRecord> headlines,
                                                 int drop_last_minutes) {
    if (drop_last_minutes < 0 || drop_last_minutes >= kSessionCloseMinute - kSessionOpenMinute) {
        throw std::invalid_argument("drop_last_minutes must lie in [0, 510)");
    }
    const int last_minute = kSessionCloseMinute - drop_last_minutes;
    std::vector<HeadlineRecord> out;
    for (const auto& h : headlines) {
        const int minute = minute_of_day(h.timestamp);
        if (minute >= kSessionOpenMinute && minute <= last_minute) {
            out.push_back(h);
        }
    }
    return out;
}

std::size_t HeadlineBuckets::bucketed() const noexcept {
    std::size_t n = 0;
    for (const auto& [day, list] : by_day) {
        n += list.size();
    }
    return n;
}

HeadlineBuckets bucket_headlines_by_day(std::span<const HeadlineRecord> headlines,
                                        const TradingCalendar& calendar) {
    HeadlineBuckets out;
    for (const auto& h : headlines) {
        const Date day = day_of(h.timestamp);
        if (calendar.contains(day)) {
            out.by_day[day].push_back(h);
        } else {
            ++out.discarded;
        }
    }
    return out;
}

void write_transactions(std::ostream& out, std::span<const TransactionRecord> records) {
    out << "investor_id,category,day,volume_bought,volume_sold\n";
    for (const auto& r : records) {
        out << quote_field(r.investor_id) << ',' << to_string(r.category) << ','
            << format_date(r.day) << ',' << format_number(r.volume_bought) << ','
            << format_number(r.volume_sold) << '\n';
    }
}

void write_prices(std::ostream& out, std::span<const PriceRecord> prices) {
    out << "day,close,high,low\n";
    for (const auto& p : prices) {
        out << format_date(p.day) << ',' << format_number(p.close) << ','
            << format_number(p.high) << ',' << format_number(p.low) << '\n';
    }
}

void write_calendar(std::ostream& out, const TradingCalendar& calendar) {
    out << "day\n";
    for (const auto day : calendar.days()) {
        out << format_date(day) << '\n';
    }
}

void write_headlines_jsonl(std::ostream& out, std::span<const HeadlineRecord> headlines) {
    for (const auto& h : headlines) {
        out << json{{"ts", format_timestamp(h.timestamp)}, {"text", h.text}}.dump() << '\n';
    }
}

void write_buckets_jsonl(std::ostream& out, const HeadlineBuckets& buckets) {
    for (const auto& [day, list] : buckets.by_day) {
        const std::string day_text = format_date(day);
        for (const auto& h : list) {
            out << json{{"day", day_text}, {"ts", format_timestamp(h.timestamp)}, {"text", h.text}}
                       .dump()
                << '\n';
        }
    }
}

TradingCalendar read_calendar(std::istream& in) {
    DelimitedReader reader(in);
    const auto col = reader.require_column("day");
    std::vector<Date> days;
    std::vector<std::string> f;
    while (reader.next(f)) {
        days.push_back(require_date(f[col], reader.line()));
    }
    try {
        return TradingCalendar(std::move(days));
    } catch (const std::invalid_argument& e) {
        throw ParseError(Kind::InvalidValue, 0, e.what());
    }
}

std::map<Date, std::vector<HeadlineRecord>> read_buckets_jsonl(std::istream& in) {
    std::map<Date, std::vector<HeadlineRecord>> out;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (trim(raw).empty()) {
            continue;
        }
        json obj;
        try {
            obj = json::parse(raw);
        } catch (const json::parse_error& e) {
            throw ParseError(Kind::Malformed, line, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object() || !obj.contains("day") || !obj.contains("ts") ||
            !obj.contains("text")) {
            throw ParseError(Kind::Malformed, line, "expected object with 'day', 'ts', 'text'");
        }
        const Date day = require_date(obj["day"].get<std::string>(), line);
        const auto ts = require_utc(obj["ts"].get<std::string>(), line, nullptr);
        out[day].push_back(make_headline(ts, obj["text"].get<std::string>(), line));
    }
    return out;
}

}  // namespace newsflow::ingest
