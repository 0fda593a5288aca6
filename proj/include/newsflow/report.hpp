#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newsflow/stats.hpp"
#include "newsflow/types.hpp"

namespace newsflow::report {

enum class Format { Text, Csv, Json };

/// Parses "text", "csv" or "json"; throws std::invalid_argument otherwise.
[[nodiscard]] Format parse_format(std::string_view name);

struct NamedSeries {
    std::string variable;
    /// Empty for market-wide variables.
    std::string category;
    std::vector<double> values;
};

struct SummaryStats {
    std::string variable;
    std::string category;
    std::size_t n = 0;
    double min = 0.0;
    double q05 = 0.0;
    double q95 = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;
    /// Sample standard deviation (T - 1 denominator).
    double stddev = 0.0;
};

/// Quantiles and median by nearest rank. Throws std::invalid_argument on an
/// empty series.
[[nodiscard]] SummaryStats summarize(const NamedSeries& series);
[[nodiscard]] std::vector<SummaryStats> summary_table(std::span<const NamedSeries> series);
[[nodiscard]] std::string render_summary(std::span<const SummaryStats> rows, Format format);

struct IntradayHistogram {
    int bin_minutes = 1;
    std::size_t n_days = 0;
    std::vector<long> counts;
    /// Headlines per minute per day: counts / (n_days * bin_minutes).
    std::vector<double> rate;

    [[nodiscard]] long total() const noexcept;
};

/// Average arrival rate by time of day over the whole 24h clock. `n_days`
/// defaults to the number of distinct UTC dates among the headlines.
/// Throws std::invalid_argument unless bin_minutes divides 1440.
[[nodiscard]] IntradayHistogram intraday_histogram(std::span<const HeadlineRecord> headlines,
                                                   int bin_minutes,
                                                   std::optional<std::size_t> n_days = std::nullopt);
[[nodiscard]] std::string render_histogram(const IntradayHistogram& histogram, Format format);

/// Identifies one fitted regression in reports and tables.
struct RegressionMeta {
    std::string category;
    std::string y_name;
    std::string x1_name;
    std::string x2_name;
    std::size_t bootstrap_replicates = 0;
    std::uint64_t seed = 0;
    /// Days on which y, x1, x2 respectively were undefined or absent.
    std::array<std::size_t, 3> missing{};
};

struct CategoryRegression {
    RegressionMeta meta;
    stats::RegressionReport report;
};

/// Full-precision JSON carrying every report field plus the drop count.
[[nodiscard]] std::string regression_to_json(const CategoryRegression& regression);
[[nodiscard]] CategoryRegression regression_from_json(std::istream& in);

/// One row per category: both coefficients with Gaussian and bootstrap
/// 5%-95% intervals, residual variance in percent, both partial correlations.
[[nodiscard]] std::string regression_table(std::span<const CategoryRegression> rows, Format format);

}  // namespace newsflow::report
