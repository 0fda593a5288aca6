#pragma once

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "newsflow/classify.hpp"
#include "newsflow/marketvars.hpp"
#include "newsflow/sentiment.hpp"
#include "newsflow/stats.hpp"

namespace newsflow::series {

/// A daily variable; nullopt marks an undefined observation.
using DaySeries = std::map<Date, std::optional<double>>;

/// Flow fields: n_buy, n_sell, n_buysell, n_total, imbalance_abs, imbalance_rel.
[[nodiscard]] DaySeries from_flows(const classify::FlowSeries& flows, InvestorCategory category,
                                   std::string_view field);
/// Market fields: ret, vol.
[[nodiscard]] DaySeries from_market(const std::map<Date, marketvars::DailyMarketVars>& market,
                                    std::string_view field);
/// News fields: h, good, bad, s_abs, s_rel.
[[nodiscard]] DaySeries from_news(const std::map<Date, sentiment::DailyNewsVars>& news,
                                  std::string_view field);

/// Reads one column of a CSV with a `day` column. When the file also has a
/// `category` column, `category` selects the rows and is required; otherwise it
/// is ignored.
/// Empty fields are undefined observations.
[[nodiscard]] DaySeries read_csv_column(std::istream& in, std::string_view column,
                                        const std::optional<std::string>& category = std::nullopt);

struct JoinedTriple {
    stats::ListwiseAlignment aligned;
    /// Days on which y, x1, x2 respectively were undefined or absent.
    std::array<std::size_t, 3> missing{};
};

/// Aligns on the union of days, dropping listwise any day where a series is
/// absent or undefined.
[[nodiscard]] JoinedTriple join(const DaySeries& y, const DaySeries& x1, const DaySeries& x2);

}  // namespace newsflow::series
