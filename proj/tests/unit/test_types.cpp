#include <gtest/gtest.h>

#include <chrono>
#include <sstream>

#include "newsflow/delimited.hpp"
#include "newsflow/rng.hpp"
#include "newsflow/types.hpp"

using namespace newsflow;
using namespace std::chrono;

TEST(Category, RoundTripsAllSix) {
    EXPECT_EQ(kAllCategories.size(), 6u);
    for (const auto c : kAllCategories) {
        const auto parsed = parse_category(to_string(c));
        ASSERT_TRUE(parsed.has_value());
        EXPECT_EQ(*parsed, c);
    }
    EXPECT_FALSE(parse_category("Martian").has_value());
    EXPECT_FALSE(parse_category("households").has_value());
}

TEST(Date, ParseAndFormat) {
    const auto d = parse_date("2003-01-02");
    ASSERT_TRUE(d);
    EXPECT_EQ(*d, sys_days{2003y / January / 2});
    EXPECT_EQ(format_date(*d), "2003-01-02");
    EXPECT_FALSE(parse_date("2003-02-30"));
    EXPECT_FALSE(parse_date("2003-1-02"));
    EXPECT_FALSE(parse_date("2003-01-02x"));
    EXPECT_FALSE(parse_date(""));
}

TEST(Timestamp, UtcAndOffsets) {
    bool zoned = false;
    const auto z = parse_timestamp("2003-01-02T08:00:00Z", &zoned);
    ASSERT_TRUE(z);
    EXPECT_TRUE(zoned);
    EXPECT_EQ(minute_of_day(*z), 480);

    const auto off = parse_timestamp("2003-01-02T10:30:00+02:00");
    ASSERT_TRUE(off);
    EXPECT_EQ(*off, *z + minutes(30));

    const auto neg = parse_timestamp("2003-01-01T23:00:00-09:00");
    ASSERT_TRUE(neg);
    EXPECT_EQ(format_timestamp(*neg), "2003-01-02T08:00:00Z");

    const auto frac = parse_timestamp("2003-01-02 08:00:59.999Z");
    ASSERT_TRUE(frac);
    EXPECT_EQ(format_timestamp(*frac), "2003-01-02T08:00:59Z");

    const auto local = parse_timestamp("2003-01-02T08:00:00", &zoned);
    ASSERT_TRUE(local);
    EXPECT_FALSE(zoned);

    EXPECT_FALSE(parse_timestamp("2003-01-02T25:00:00Z"));
    EXPECT_FALSE(parse_timestamp("2003-01-02"));
    EXPECT_FALSE(parse_timestamp("not a time"));
}

TEST(Timestamp, FormatRoundTrip) {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Timestamp ts{seconds(static_cast<long long>(rng.index(2'000'000'000)))};
        const auto back = parse_timestamp(format_timestamp(ts));
        ASSERT_TRUE(back);
        EXPECT_EQ(*back, ts);
    }
}

TEST(TradingCalendar, RequiresStrictlyIncreasing) {
    const Date a = sys_days{2003y / January / 2};
    const Date b = sys_days{2003y / January / 3};
    EXPECT_NO_THROW(TradingCalendar({a, b}));
    EXPECT_THROW(TradingCalendar({b, a}), std::invalid_argument);
    EXPECT_THROW(TradingCalendar({a, a}), std::invalid_argument);
    const TradingCalendar cal({a, b});
    EXPECT_TRUE(cal.contains(b));
    EXPECT_EQ(cal.position(b), 1u);
    EXPECT_FALSE(cal.position(sys_days{2003y / January / 4}));
}

TEST(Delimited, SplitsQuotedFields) {
    const auto f = split_delimited(R"(a,"b,c","d ""q""",)", ',');
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[1], "b,c");
    EXPECT_EQ(f[2], "d \"q\"");
    EXPECT_EQ(f[3], "");
    EXPECT_EQ(split_delimited(quote_field("x,\"y\""), ',').front(), "x,\"y\"");
}

TEST(Delimited, ReaderChecksFieldCount) {
    std::istringstream in("a,b\n1,2\n\n3\n");
    DelimitedReader r(in);
    std::vector<std::string> f;
    ASSERT_TRUE(r.next(f));
    EXPECT_EQ(r.line(), 2u);
    try {
        (void)r.next(f);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.kind(), ParseError::Kind::Malformed);
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(Delimited, NormalizeSpace) {
    EXPECT_EQ(normalize_space("  a \t b\n  c  "), "a b c");
    EXPECT_EQ(normalize_space("   "), "");
}

TEST(Delimited, NumbersRoundTrip) {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.index(20)) - 10.0);
        const auto back = parse_number(format_number(v));
        ASSERT_TRUE(back);
        EXPECT_EQ(*back, v);
    }
    EXPECT_FALSE(parse_number("1.5x"));
    EXPECT_FALSE(parse_number(""));
    EXPECT_FALSE(parse_number("nan"));
}

TEST(Rng, SameSeedSameStream) {
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.normal(), b.normal());
        EXPECT_EQ(a.index(17), b.index(17));
    }
}

TEST(Rng, MomentsAreSane) {
    Rng rng(5);
    const int n = 200000;
    double s = 0.0;
    double s2 = 0.0;
    double u = 0.0;
    double p = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
        u += rng.uniform();
        p += static_cast<double>(rng.poisson(3.5));
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.015);
    EXPECT_NEAR(u / n, 0.5, 0.005);
    EXPECT_NEAR(p / n, 3.5, 0.02);
}

TEST(Rng, PoissonLargeMean) {
    Rng rng(11);
    double s = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const long k = rng.poisson(200.0);
        ASSERT_GE(k, 0);
        s += static_cast<double>(k);
    }
    EXPECT_NEAR(s / 20000.0, 200.0, 0.5);
}

TEST(Rng, ShuffleIsPermutation) {
    Rng rng(1);
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[i] = i;
    rng.shuffle(std::span<int>(v));
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}
