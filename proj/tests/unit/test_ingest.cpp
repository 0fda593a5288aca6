#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <sstream>

#include "newsflow/ingest.hpp"
#include "newsflow/rng.hpp"

using namespace newsflow;
using namespace newsflow::ingest;
using std::chrono::minutes;
using std::chrono::seconds;

namespace {

Timestamp at(const char* text) {
    const auto ts = parse_timestamp(text);
    if (!ts) throw std::runtime_error(std::string("bad test timestamp ") + text);
    return *ts;
}

Date on(const char* text) { return *parse_date(text); }

template <typename Fn>
ParseError::Kind parse_error_kind(Fn&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.kind();
    }
    throw std::runtime_error("no ParseError raised");
}

}  // namespace

TEST(ParseTransactions, MapsFields) {
    std::istringstream in("investor_id,category,day,volume_bought,volume_sold\nA1,Households,2003-01-02,100,0\n");
    const auto r = parse_transactions(in);
    ASSERT_EQ(r.size(), 1u);
    const TransactionRecord expected{"A1", InvestorCategory::Households, on("2003-01-02"), 100, 0};
    EXPECT_EQ(r[0], expected);
}

TEST(ParseTransactions, HeaderOrderAndSchema) {
    std::istringstream in("sold;date;who;bought;kind\n5;2003-01-02;X;7;Foreign\n");
    TransactionSchema s;
    s.volume_sold = "sold";
    s.day = "date";
    s.investor_id = "who";
    s.volume_bought = "bought";
    s.category = "kind";
    s.delimiter = ';';
    const auto r = parse_transactions(in, s);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].volume_bought, 7);
    EXPECT_EQ(r[0].volume_sold, 5);
    EXPECT_EQ(r[0].category, InvestorCategory::Foreign);
}

TEST(ParseTransactions, ZeroVolumeRowsAreKept) {
    std::istringstream in("investor_id,category,day,volume_bought,volume_sold\nA1,Companies,2003-01-02,0,0\n");
    EXPECT_EQ(parse_transactions(in).size(), 1u);
}

TEST(ParseTransactions, Errors) {
    const std::string header = "investor_id,category,day,volume_bought,volume_sold\n";
    EXPECT_EQ(parse_error_kind([&] {
                  std::istringstream in(header + "A1,Martian,2003-01-02,1,0\n");
                  (void)parse_transactions(in);
              }),
              ParseError::Kind::UnknownCategory);
    EXPECT_EQ(parse_error_kind([&] {
                  std::istringstream in(header + "A1,Households,2003-01-02,1,0\nA1,Households,2003-01-02,0,4\n");
                  (void)parse_transactions(in);
              }),
              ParseError::Kind::DuplicateKey);
    EXPECT_EQ(parse_error_kind([&] {
                  std::istringstream in(header + "A1,Households,2003-01-02,-1,0\n");
                  (void)parse_transactions(in);
              }),
              ParseError::Kind::NegativeVolume);
    EXPECT_EQ(parse_error_kind([&] {
                  std::istringstream in(header + "A1,Households,2003-01-02,1\n");
                  (void)parse_transactions(in);
              }),
              ParseError::Kind::Malformed);
    EXPECT_EQ(parse_error_kind([&] {
                  std::istringstream in(header + "A1,Households,2003-13-02,1,0\n");
                  (void)parse_transactions(in);
              }),
              ParseError::Kind::InvalidValue);
    EXPECT_EQ(parse_error_kind([&] {
                  std::istringstream in("investor_id,category,day,volume_bought\n");
                  (void)parse_transactions(in);
              }),
              ParseError::Kind::Malformed);
}

TEST(ParseTransactions, ReportsRowNumber) {
    std::istringstream in(
        "investor_id,category,day,volume_bought,volume_sold\nA,Households,2003-01-02,1,0\nB,Nope,2003-01-02,1,0\n");
    try {
        (void)parse_transactions(in);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ParsePrices, SortsAndValidates) {
    std::istringstream in("day,close,high,low\n2003-01-03,10,11,9\n2003-01-02,10,10.5,9.5\n");
    const auto p = parse_prices(in);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_LT(p[0].day, p[1].day);
    const auto cal = calendar_from_prices(p);
    EXPECT_EQ(cal.size(), 2u);

    // Close outside [low, high] is accepted.
    std::istringstream outside("day,close,high,low\n2003-01-02,12,11,9\n");
    EXPECT_EQ(parse_prices(outside).size(), 1u);

    EXPECT_EQ(parse_error_kind([] {
                  std::istringstream bad("day,close,high,low\n2003-01-02,10,9,11\n");
                  (void)parse_prices(bad);
              }),
              ParseError::Kind::InvalidValue);
    EXPECT_EQ(parse_error_kind([] {
                  std::istringstream bad("day,close,high,low\n2003-01-02,0,9,8\n");
                  (void)parse_prices(bad);
              }),
              ParseError::Kind::InvalidValue);
    EXPECT_EQ(parse_error_kind([] {
                  std::istringstream bad("day,close,high,low\n2003-01-02,1,1,1\n2003-01-02,1,1,1\n");
                  (void)parse_prices(bad);
              }),
              ParseError::Kind::DuplicateKey);
}

TEST(ParseHeadlines, JsonLinesAndDelimited) {
    std::istringstream j(R"({"ts":"2003-01-02T09:00:00Z","text":"  Acme   up "})"
                         "\n\n"
                         R"({"ts":"2003-01-02T10:00:00+01:00","text":"b"})"
                         "\n");
    const auto a = parse_headlines(j);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].text, "Acme up");
    EXPECT_EQ(a[1].timestamp, at("2003-01-02T09:00:00Z"));

    std::istringstream d("ts,text\n2003-01-02T09:00:00Z,\"x, y\"\n");
    const auto b = parse_headlines(d);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].text, "x, y");
}

TEST(ParseHeadlines, Errors) {
    EXPECT_EQ(parse_error_kind([] {
                  std::istringstream in(R"({"ts":"2003-01-02T09:00:00Z","text":"   "})");
                  (void)parse_headlines(in);
              }),
              ParseError::Kind::InvalidValue);
    EXPECT_EQ(parse_error_kind([] {
                  std::istringstream in(R"({"ts":"2003-01-02T09:00:00","text":"x"})");
                  (void)parse_headlines(in);
              }),
              ParseError::Kind::InvalidValue);
    EXPECT_EQ(parse_error_kind([] {
                  std::istringstream in("{\"ts\": 3}\n");
                  (void)parse_headlines(in);
              }),
              ParseError::Kind::Malformed);
    EXPECT_EQ(parse_error_kind([] {
                  std::istringstream in("{broken\n");
                  (void)parse_headlines(in);
              }),
              ParseError::Kind::Malformed);
}

TEST(LocalTime, RuleFileParses) {
    std::istringstream in("# New York\nstandard_offset_minutes = -300\ndst_rule = US\n");
    const auto r = parse_local_time_rule(in);
    EXPECT_EQ(r.standard_offset_minutes, -300);
    EXPECT_EQ(r.dst_offset_minutes, 60);
    EXPECT_EQ(r.regime, DstRegime::US);
    std::istringstream bad("dst_rule = Mars\n");
    EXPECT_THROW((void)parse_local_time_rule(bad), ParseError);
}

TEST(LocalTime, UsTransitions) {
    const LocalTimeRule ny{-300, 60, DstRegime::US};
    // 2010: second Sunday of March is the 14th, first Sunday of November the 7th.
    EXPECT_EQ(local_to_utc(at("2010-03-13T12:00:00Z"), ny), at("2010-03-13T17:00:00Z"));
    EXPECT_EQ(local_to_utc(at("2010-03-14T03:00:00Z"), ny), at("2010-03-14T07:00:00Z"));
    EXPECT_EQ(local_to_utc(at("2010-11-06T12:00:00Z"), ny), at("2010-11-06T16:00:00Z"));
    EXPECT_EQ(local_to_utc(at("2010-11-08T12:00:00Z"), ny), at("2010-11-08T17:00:00Z"));
    // 2005 used the first Sunday of April.
    EXPECT_FALSE(in_daylight_saving(at("2005-03-20T12:00:00Z"), ny));
    EXPECT_TRUE(in_daylight_saving(at("2005-04-04T12:00:00Z"), ny));
    EXPECT_FALSE(in_daylight_saving(at("2005-10-31T12:00:00Z"), ny));
}

TEST(LocalTime, EuTransitions) {
    const LocalTimeRule london{0, 60, DstRegime::EU};
    // 2010: last Sundays are 28 March and 31 October.
    EXPECT_EQ(local_to_utc(at("2010-03-27T09:00:00Z"), london), at("2010-03-27T09:00:00Z"));
    EXPECT_EQ(local_to_utc(at("2010-06-01T09:00:00Z"), london), at("2010-06-01T08:00:00Z"));
    EXPECT_EQ(local_to_utc(at("2010-11-01T09:00:00Z"), london), at("2010-11-01T09:00:00Z"));
    const LocalTimeRule helsinki{120, 60, DstRegime::EU};
    EXPECT_EQ(local_to_utc(at("2010-06-01T11:00:00Z"), helsinki), at("2010-06-01T08:00:00Z"));
}

TEST(ParseHeadlines, LocalRuleConvertsZonelessTimes) {
    const LocalTimeRule london{0, 60, DstRegime::EU};
    std::istringstream in(R"({"ts":"2010-06-01T09:00:00","text":"x"})"
                          "\n"
                          R"({"ts":"2010-06-01T09:00:00Z","text":"y"})");
    const auto h = parse_headlines(in, HeadlineFormat::Auto, &london);
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h[0].timestamp, at("2010-06-01T08:00:00Z"));
    EXPECT_EQ(h[1].timestamp, at("2010-06-01T09:00:00Z"));
}

TEST(Dedupe, KeepsEarliestRelease) {
    const std::vector<HeadlineRecord> in{{at("2003-01-02T11:00:00Z"), "X"}, {at("2003-01-02T10:00:00Z"), "X"}};
    const auto out = dedupe_headlines(in);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].timestamp, at("2003-01-02T10:00:00Z"));
}

TEST(Dedupe, DistinctTextsSurvive) {
    const std::vector<HeadlineRecord> in{{at("2003-01-02T10:00:00Z"), "X"}, {at("2003-01-02T10:00:00Z"), "Y"}};
    EXPECT_EQ(dedupe_headlines(in).size(), 2u);
    EXPECT_TRUE(dedupe_headlines({}).empty());
}

TEST(Dedupe, WhitespaceCollapsesButCaseMatters) {
    const std::vector<HeadlineRecord> in{{at("2003-01-02T10:00:00Z"), "Acme  up"},
                                         {at("2003-01-02T09:00:00Z"), " Acme up "},
                                         {at("2003-01-02T08:00:00Z"), "ACME UP"}};
    const auto out = dedupe_headlines(in);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].text, "ACME UP");
    EXPECT_EQ(out[1].timestamp, at("2003-01-02T09:00:00Z"));
}

TEST(Dedupe, IdempotentAndSorted) {
    Rng rng(21);
    std::vector<HeadlineRecord> in;
    const Timestamp base = at("2003-01-02T00:00:00Z");
    for (int i = 0; i < 500; ++i) {
        in.push_back({base + seconds(static_cast<long long>(rng.index(86400 * 3))),
                      "h" + std::to_string(rng.index(120))});
    }
    const auto once = dedupe_headlines(in);
    EXPECT_EQ(dedupe_headlines(once), once);
    for (std::size_t i = 1; i < once.size(); ++i) {
        EXPECT_LE(once[i - 1].timestamp, once[i].timestamp);
    }
    // Each survivor carries the minimum timestamp of its text.
    for (const auto& h : once) {
        for (const auto& r : in) {
            if (r.text == h.text) EXPECT_LE(h.timestamp, r.timestamp);
        }
    }
}

TEST(FilterHours, Boundaries) {
    const std::vector<HeadlineRecord> in{{at("2003-01-02T07:59:00Z"), "a"},
                                         {at("2003-01-02T08:00:00Z"), "b"},
                                         {at("2003-01-02T16:30:00Z"), "c"},
                                         {at("2003-01-02T16:30:59Z"), "d"},
                                         {at("2003-01-02T16:31:00Z"), "e"}};
    const auto out = filter_trading_hours(in, 0);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].text, "b");
    EXPECT_EQ(out[2].text, "d");

    const std::vector<HeadlineRecord> late{{at("2003-01-02T16:25:00Z"), "x"}, {at("2003-01-02T16:20:00Z"), "y"}};
    const auto dropped = filter_trading_hours(late, 10);
    ASSERT_EQ(dropped.size(), 1u);
    EXPECT_EQ(dropped[0].text, "y");
}

TEST(FilterHours, RejectsBadDrop) {
    EXPECT_THROW((void)filter_trading_hours({}, -1), std::invalid_argument);
    EXPECT_THROW((void)filter_trading_hours({}, 510), std::invalid_argument);
    EXPECT_NO_THROW((void)filter_trading_hours({}, 509));
}

// Window membership by string comparison of "HH:MM" labels; the upper label is
// found by walking the clock back one minute at a time from 16:30.
TEST(FilterHours, MatchesBruteForceClockWalk) {
    const auto label = [](int h, int m) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%02d:%02d", h, m);
        return std::string(buf);
    };
    const Timestamp midnight = at("2003-01-02T00:00:00Z");
    for (const int drop : {0, 1, 10, 59, 60, 61, 300, 509}) {
        int h = 16;
        int m = 30;
        for (int k = 0; k < drop; ++k) {
            if (m == 0) {
                m = 59;
                --h;
            } else {
                --m;
            }
        }
        const std::string upper = label(h, m);
        std::vector<HeadlineRecord> all;
        for (int minute = 0; minute < 1440; ++minute) {
            all.push_back({midnight + minutes(minute) + seconds(minute % 60), label(minute / 60, minute % 60)});
        }
        const auto kept = filter_trading_hours(all, drop);
        std::size_t expected = 0;
        std::size_t j = 0;
        for (const auto& rec : all) {
            const bool inside = rec.text >= "08:00" && rec.text <= upper;
            if (inside) {
                ++expected;
                ASSERT_LT(j, kept.size());
                EXPECT_EQ(kept[j++].text, rec.text) << "drop=" << drop;
            }
        }
        EXPECT_EQ(kept.size(), expected) << "drop=" << drop;
    }
}

TEST(FilterHours, DedupeFirstIsOrderSensitive) {
    // First release before the open, repeat inside the window.
    const std::vector<HeadlineRecord> in{{at("2003-01-02T07:50:00Z"), "X"}, {at("2003-01-02T09:00:00Z"), "X"}};
    const auto dedupe_then_filter = filter_trading_hours(dedupe_headlines(in), 0);
    const auto filter_then_dedupe = dedupe_headlines(filter_trading_hours(in, 0));
    EXPECT_TRUE(dedupe_then_filter.empty());
    EXPECT_EQ(filter_then_dedupe.size(), 1u);
}

TEST(FilterHours, OrderIrrelevantWhenFirstReleaseInside) {
    Rng rng(8);
    std::vector<HeadlineRecord> in;
    const Timestamp open = at("2003-01-02T08:00:00Z");
    for (int i = 0; i < 300; ++i) {
        // Every timestamp inside the window on one day.
        in.push_back({open + seconds(static_cast<long long>(rng.index(510 * 60))), "t" + std::to_string(rng.index(80))});
    }
    EXPECT_EQ(filter_trading_hours(dedupe_headlines(in), 0), dedupe_headlines(filter_trading_hours(in, 0)));
}

TEST(Bucket, DropsOffCalendarDays) {
    const TradingCalendar cal({on("2003-01-03"), on("2003-01-06")});
    const std::vector<HeadlineRecord> in{{at("2003-01-03T09:00:00Z"), "a"},
                                         {at("2003-01-03T10:00:00Z"), "b"},
                                         {at("2003-01-04T09:00:00Z"), "sat"}};
    const auto b = bucket_headlines_by_day(in, cal);
    EXPECT_EQ(b.discarded, 1u);
    ASSERT_EQ(b.by_day.count(on("2003-01-03")), 1u);
    EXPECT_EQ(b.by_day.at(on("2003-01-03")).size(), 2u);
    EXPECT_EQ(b.bucketed(), 2u);
    EXPECT_TRUE(bucket_headlines_by_day({}, cal).by_day.empty());
}

TEST(Bucket, ConservesCount) {
    Rng rng(4);
    std::vector<Date> days;
    for (int i = 0; i < 30; ++i) {
        if (rng.bernoulli(0.7)) days.push_back(on("2003-01-01") + std::chrono::days(i));
    }
    const TradingCalendar cal(days);
    std::vector<HeadlineRecord> in;
    for (int i = 0; i < 400; ++i) {
        in.push_back({at("2003-01-01T00:00:00Z") + seconds(static_cast<long long>(rng.index(86400 * 32))), "x"});
    }
    const auto b = bucket_headlines_by_day(in, cal);
    std::size_t total = 0;
    for (const auto& [d, v] : b.by_day) {
        EXPECT_TRUE(cal.contains(d));
        for (const auto& h : v) EXPECT_EQ(day_of(h.timestamp), d);
        total += v.size();
    }
    EXPECT_EQ(total + b.discarded, in.size());
}

TEST(Intermediates, RoundTrip) {
    const TradingCalendar cal({on("2003-01-02"), on("2003-01-03")});
    std::stringstream cs;
    write_calendar(cs, cal);
    EXPECT_EQ(read_calendar(cs).days(), cal.days());

    const std::vector<HeadlineRecord> in{{at("2003-01-02T09:00:00Z"), "quote \" and, comma"},
                                         {at("2003-01-03T09:00:00Z"), "b"}};
    const auto buckets = bucket_headlines_by_day(in, cal);
    std::stringstream bs;
    write_buckets_jsonl(bs, buckets);
    EXPECT_EQ(read_buckets_jsonl(bs), buckets.by_day);

    const std::vector<TransactionRecord> tx{{"A,1", InvestorCategory::Foreign, on("2003-01-02"), 1.5, 0}};
    std::stringstream ts;
    write_transactions(ts, tx);
    EXPECT_EQ(parse_transactions(ts), tx);

    const std::vector<PriceRecord> px{{on("2003-01-02"), 10.125, 11, 9.0000001}};
    std::stringstream ps;
    write_prices(ps, px);
    EXPECT_EQ(parse_prices(ps), px);

    std::stringstream hs;
    write_headlines_jsonl(hs, in);
    EXPECT_EQ(parse_headlines(hs), in);
}
