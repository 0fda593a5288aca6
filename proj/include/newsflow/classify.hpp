#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "newsflow/types.hpp"

namespace newsflow::classify {

enum class TradingState { Buy, Sell, BuySell, Inactive };

inline constexpr double kDefaultTheta = 0.01;

/// Labels one investor-day from its bought and sold volume via
/// q = (Vb - Vs) / (Vb + Vs): Buy if q > theta, Sell if q < -theta, BuySell
/// otherwise, Inactive if nothing traded. Integral volumes are compared in exact
/// rational arithmetic, so q == theta is never misread as Buy.
/// Throws std::invalid_argument on a negative volume or theta outside (0, 1).
[[nodiscard]] TradingState classify_state(double volume_bought, double volume_sold,
                                          double theta = kDefaultTheta);

struct DailyCategoryFlow {
    Date day{};
    InvestorCategory category{};
    long n_buy = 0;
    long n_sell = 0;
    long n_buysell = 0;
    long n_total = 0;
    long imbalance_abs = 0;
    /// Undefined (nullopt) when no investor of the category was active.
    std::optional<double> imbalance_rel;

    bool operator==(const DailyCategoryFlow&) const = default;
};

[[nodiscard]] DailyCategoryFlow make_flow(Date day, InvestorCategory category, long n_buy,
                                          long n_sell, long n_buysell);

/// One row per category present among `records`, in category order. All
/// records must share one day (std::invalid_argument otherwise).
[[nodiscard]] std::vector<DailyCategoryFlow> aggregate_daily(std::span<const TransactionRecord> records,
                                                             double theta = kDefaultTheta);

using FlowKey = std::pair<InvestorCategory, Date>;
using FlowSeries = std::map<FlowKey, DailyCategoryFlow>;

/// Dense over calendar days x all six categories. A record dated off the
/// calendar raises std::out_of_range.
[[nodiscard]] FlowSeries build_flow_series(std::span<const TransactionRecord> records,
                                           const TradingCalendar& calendar,
                                           double theta = kDefaultTheta);

/// Columns: day, category, n_buy, n_sell, n_buysell, n_total, imbalance_abs,
/// imbalance_rel (empty when undefined). Rows ordered by day then category.
void write_flows_csv(std::ostream& out, const FlowSeries& flows);

}  // namespace newsflow::classify
