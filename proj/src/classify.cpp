#include "newsflow/classify.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "newsflow/delimited.hpp"

namespace newsflow::classify {

namespace {

__extension__ using Int128 = __int128;

// Exact decimal representation theta = num / 10^k, if one exists with k <= 12.
struct DecimalTheta {
    Int128 num = 0;
    Int128 den = 1;
};

std::optional<DecimalTheta> decimal_theta(double theta) {
    Int128 den = 1;
    for (int k = 0; k <= 12; ++k) {
        const double scaled = theta * static_cast<double>(den);
        const double rounded = std::round(scaled);
        if (rounded / static_cast<double>(den) == theta) {
            return DecimalTheta{static_cast<Int128>(rounded), den};
        }
        den *= 10;
    }
    return std::nullopt;
}

bool is_exact_integer(double v) {
    return v == std::floor(v) && v < 9.0e15;
}

}  // namespace

TradingState classify_state(double volume_bought, double volume_sold, double theta) {
    if (!(volume_bought >= 0.0) || !(volume_sold >= 0.0)) {
        throw std::invalid_argument("volumes must be non-negative");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("theta must lie in (0, 1)");
    }
    if (volume_bought == 0.0 && volume_sold == 0.0) {
        return TradingState::Inactive;
    }
    int sign_vs_upper = 0;  // sign of q - theta
    int sign_vs_lower = 0;  // sign of q + theta
    const auto exact = decimal_theta(theta);
    if (exact && is_exact_integer(volume_bought) && is_exact_integer(volume_sold)) {
        // q > theta  <=>  (Vb - Vs) * den > num * (Vb + Vs), with Vb + Vs > 0.
        const auto vb = static_cast<Int128>(volume_bought);
        const auto vs = static_cast<Int128>(volume_sold);
        const Int128 lhs = (vb - vs) * exact->den;
        const Int128 rhs = exact->num * (vb + vs);
        sign_vs_upper = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
        sign_vs_lower = lhs > -rhs ? 1 : (lhs < -rhs ? -1 : 0);
    } else {
        const double q = (volume_bought - volume_sold) / (volume_bought + volume_sold);
        sign_vs_upper = q > theta ? 1 : (q < theta ? -1 : 0);
        sign_vs_lower = q > -theta ? 1 : (q < -theta ? -1 : 0);
    }
    if (sign_vs_upper > 0) {
        return TradingState::Buy;
    }
    if (sign_vs_lower < 0) {
        return TradingState::Sell;
    }
    return TradingState::BuySell;
}

DailyCategoryFlow make_flow(Date day, InvestorCategory category, long n_buy, long n_sell,
                            long n_buysell) {
    DailyCategoryFlow f;
    f.day = day;
    f.category = category;
    f.n_buy = n_buy;
    f.n_sell = n_sell;
    f.n_buysell = n_buysell;
    f.n_total = n_buy + n_sell + n_buysell;
    f.imbalance_abs = n_buy - n_sell;
    if (f.n_total > 0) {
        f.imbalance_rel = static_cast<double>(f.imbalance_abs) / static_cast<double>(f.n_total);
    }
    return f;
}

std::vector<DailyCategoryFlow> aggregate_daily(std::span<const TransactionRecord> records,
                                               double theta) {
    if (records.empty()) {
        return {};
    }
    const Date day = records.front().day;
    std::array<std::array<long, 3>, kCategoryCount> counts{};
    std::array<bool, kCategoryCount> present{};
    for (const auto& r : records) {
        if (r.day != day) {
            throw std::invalid_argument("aggregate_daily: records span more than one day");
        }
        const auto k = index_of(r.category);
        present[k] = true;
        switch (classify_state(r.volume_bought, r.volume_sold, theta)) {
        case TradingState::Buy: ++counts[k][0]; break;
        case TradingState::Sell: ++counts[k][1]; break;
        case TradingState::BuySell: ++counts[k][2]; break;
        case TradingState::Inactive: break;
        }
    }
    std::vector<DailyCategoryFlow> out;
    for (const auto category : kAllCategories) {
        const auto k = index_of(category);
        if (present[k]) {
            out.push_back(make_flow(day, category, counts[k][0], counts[k][1], counts[k][2]));
        }
    }
    return out;
}

FlowSeries build_flow_series(std::span<const TransactionRecord> records,
                             const TradingCalendar& calendar, double theta) {
    std::vector<std::vector<TransactionRecord>> per_day(calendar.size());
    for (const auto& r : records) {
        const auto pos = calendar.position(r.day);
        if (!pos) {
            throw std::out_of_range("transaction for investor '" + r.investor_id + "' dated " +
                                    format_date(r.day) + " lies outside the trading calendar");
        }
        per_day[*pos].push_back(r);
    }
    FlowSeries series;
    for (std::size_t i = 0; i < calendar.size(); ++i) {
        const Date day = calendar.days()[i];
        for (const auto category : kAllCategories) {
            series.emplace(FlowKey{category, day}, make_flow(day, category, 0, 0, 0));
        }
        for (auto& flow : aggregate_daily(per_day[i], theta)) {
            series[FlowKey{flow.category, day}] = flow;
        }
    }
    return series;
}

void write_flows_csv(std::ostream& out, const FlowSeries& flows) {
    std::vector<const DailyCategoryFlow*> rows;
    rows.reserve(flows.size());
    for (const auto& [key, flow] : flows) {
        rows.push_back(&flow);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
        return a->day != b->day ? a->day < b->day : a->category < b->category;
    });
    out << "day,category,n_buy,n_sell,n_buysell,n_total,imbalance_abs,imbalance_rel\n";
    for (const auto* f : rows) {
        out << format_date(f->day) << ',' << to_string(f->category) << ',' << f->n_buy << ','
            << f->n_sell << ',' << f->n_buysell << ',' << f->n_total << ',' << f->imbalance_abs
            << ',';
        if (f->imbalance_rel) {
            out << format_number(*f->imbalance_rel);
        }
        out << '\n';
    }
}

}  // namespace newsflow::classify
