#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "newsflow/types.hpp"

namespace newsflow::ingest {

/// Column names used to locate transaction fields in the header row.
struct TransactionSchema {
    std::string investor_id = "investor_id";
    std::string category = "category";
    std::string day = "day";
    std::string volume_bought = "volume_bought";
    std::string volume_sold = "volume_sold";
    char delimiter = ',';
};

struct PriceSchema {
    std::string day = "day";
    std::string close = "close";
    std::string high = "high";
    std::string low = "low";
    char delimiter = ',';
};

/// Rows with zero volume on both sides are kept; classification marks them inactive.
[[nodiscard]] std::vector<TransactionRecord> parse_transactions(std::istream& in,
                                                                const TransactionSchema& schema = {});

/// Returns prices sorted by day. Duplicate days are a DuplicateKey error.
[[nodiscard]] std::vector<PriceRecord> parse_prices(std::istream& in,
                                                    const PriceSchema& schema = {});

[[nodiscard]] TradingCalendar calendar_from_prices(std::span<const PriceRecord> prices);

enum class DstRegime { None, EU, US };

/// Fixed-rule local clock: a standard UTC offset plus a daylight-saving shift
/// applied over the regime's statutory period.
///
/// Text form (one `key = value` per line, '#' starts a comment):
///   standard_offset_minutes = 0
///   dst_offset_minutes = 60
///   dst_rule = EU            # EU | US | none
struct LocalTimeRule {
    int standard_offset_minutes = 0;
    int dst_offset_minutes = 60;
    DstRegime regime = DstRegime::None;
};

[[nodiscard]] LocalTimeRule parse_local_time_rule(std::istream& in);
[[nodiscard]] bool in_daylight_saving(Timestamp local_wall_clock, const LocalTimeRule& rule);
[[nodiscard]] Timestamp local_to_utc(Timestamp local_wall_clock, const LocalTimeRule& rule);

enum class HeadlineFormat { Auto, JsonLines, Delimited };

/// Reads headlines as JSON lines ({"ts": ..., "text": ...}) or as delimited text
/// with `ts` and `text` columns. Timestamps lacking a zone designator are an
/// error unless `local_rule` is supplied, in which case they are converted
/// from that local clock to UTC.
[[nodiscard]] std::vector<HeadlineRecord> parse_headlines(std::istream& in,
                                                          HeadlineFormat format = HeadlineFormat::Auto,
                                                          const LocalTimeRule* local_rule = nullptr);

/// One record per distinct normalized text, carrying its earliest timestamp.
/// Output is sorted by (timestamp, text).
[[nodiscard]] std::vector<HeadlineRecord> dedupe_headlines(std::span<const HeadlineRecord> headlines);

inline constexpr int kSessionOpenMinute = 8 * 60;
inline constexpr int kSessionCloseMinute = 16 * 60 + 30;

/// Keeps headlines whose UTC minute-of-day lies in
/// [08:00, 16:30 - drop_last_minutes], both ends inclusive.
/// Throws std::invalid_argument unless 0 <= drop_last_minutes < 510.
[[nodiscard]] std::vector<HeadlineRecord> filter_trading_hours(
    std::span<const HeadlineRecord> headlines, int drop_last_minutes);

struct HeadlineBuckets {
    std::map<Date, std::vector<HeadlineRecord>> by_day;
    std::size_t discarded = 0;

    [[nodiscard]] std::size_t bucketed() const noexcept;
};

[[nodiscard]] HeadlineBuckets bucket_headlines_by_day(std::span<const HeadlineRecord> headlines,
                                                      const TradingCalendar& calendar);

// Normalized intermediate files shared by the CLI stages.
void write_transactions(std::ostream& out, std::span<const TransactionRecord> records);
void write_prices(std::ostream& out, std::span<const PriceRecord> prices);
void write_calendar(std::ostream& out, const TradingCalendar& calendar);
void write_headlines_jsonl(std::ostream& out, std::span<const HeadlineRecord> headlines);
/// JSON lines of {"day", "ts", "text"} in calendar order.
void write_buckets_jsonl(std::ostream& out, const HeadlineBuckets& buckets);

[[nodiscard]] TradingCalendar read_calendar(std::istream& in);
[[nodiscard]] std::map<Date, std::vector<HeadlineRecord>> read_buckets_jsonl(std::istream& in);

}  // namespace newsflow::ingest
