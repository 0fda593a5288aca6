#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>

#include "newsflow/types.hpp"

namespace newsflow::marketvars {

struct DailyMarketVars {
    Date day{};
    /// Natural-log close-to-close return; undefined on the first calendar day.
    std::optional<double> ret;
    /// 2 (high - low) / (high + low).
    double vol = 0.0;

    bool operator==(const DailyMarketVars&) const = default;
};

/// ln(close_today) - ln(close_prev). Throws std::invalid_argument on a
/// non-positive price.
[[nodiscard]] double compute_return(double close_today, double close_prev);

/// Throws std::invalid_argument unless 0 < low <= high.
[[nodiscard]] double compute_volatility(double high, double low);

/// Requires exactly one price per calendar day; a missing day raises
/// std::out_of_range, and prices for days off the calendar are ignored.
[[nodiscard]] std::map<Date, DailyMarketVars> build_market_series(std::span<const PriceRecord> prices,
                                                                  const TradingCalendar& calendar);

/// Columns: day, ret (empty on the first day), vol.
void write_market_csv(std::ostream& out, const std::map<Date, DailyMarketVars>& series);

}  // namespace newsflow::marketvars
