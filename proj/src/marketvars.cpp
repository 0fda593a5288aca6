#include "newsflow/marketvars.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "newsflow/delimited.hpp"

namespace newsflow::marketvars {

double compute_return(double close_today, double close_prev) {
    if (!(close_today > 0.0) || !(close_prev > 0.0)) {
        throw std::invalid_argument("compute_return: prices must be strictly positive");
    }
    return std::log(close_today) - std::log(close_prev);
}

double compute_volatility(double high, double low) {
    if (!(low > 0.0) || !(high > 0.0)) {
        throw std::invalid_argument("compute_volatility: prices must be strictly positive");
    }
    if (low > high) {
        throw std::invalid_argument("compute_volatility: low exceeds high");
    }
    return 2.0 * (high - low) / (high + low);
}

std::map<Date, DailyMarketVars> build_market_series(std::span<const PriceRecord> prices,
                                                    const TradingCalendar& calendar) {
    std::unordered_map<long long, const PriceRecord*> by_day;
    by_day.reserve(prices.size());
    for (const auto& p : prices) {
        if (!by_day.emplace(p.day.time_since_epoch().count(), &p).second) {
            throw std::invalid_argument("build_market_series: duplicate price for " +
                                        format_date(p.day));
        }
    }
    std::map<Date, DailyMarketVars> out;
    const PriceRecord* prev = nullptr;
    for (const Date day : calendar.days()) {
        const auto it = by_day.find(day.time_since_epoch().count());
        if (it == by_day.end()) {
            throw std::out_of_range("build_market_series: no price for calendar day " +
                                    format_date(day));
        }
        const PriceRecord& p = *it->second;
        DailyMarketVars row{day, std::nullopt, compute_volatility(p.high, p.low)};
        if (prev != nullptr) {
            row.ret = compute_return(p.close, prev->close);
        }
        out.emplace(day, row);
        prev = &p;
    }
    return out;
}

void write_market_csv(std::ostream& out, const std::map<Date, DailyMarketVars>& series) {
    out << "day,ret,vol\n";
    for (const auto& [day, row] : series) {
        out << format_date(day) << ',';
        if (row.ret) {
            out << format_number(*row.ret);
        }
        out << ',' << format_number(row.vol) << '\n';
    }
}

}  // namespace newsflow::marketvars
