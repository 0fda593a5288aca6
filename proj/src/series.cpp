#include "newsflow/series.hpp"

#include <set>
#include <stdexcept>
#include <vector>

#include "newsflow/delimited.hpp"

namespace newsflow::series {

namespace {

std::invalid_argument unknown_field(std::string_view kind, std::string_view field) {
    return std::invalid_argument("unknown " + std::string(kind) + " field '" + std::string(field) +
                                 "'");
}

}  // namespace

DaySeries from_flows(const classify::FlowSeries& flows, InvestorCategory category,
                     std::string_view field) {
    DaySeries out;
    for (const auto& [key, f] : flows) {
        if (key.first != category) {
            continue;
        }
        std::optional<double> v;
        if (field == "n_buy") v = static_cast<double>(f.n_buy);
        else if (field == "n_sell") v = static_cast<double>(f.n_sell);
        else if (field == "n_buysell") v = static_cast<double>(f.n_buysell);
        else if (field == "n_total") v = static_cast<double>(f.n_total);
        else if (field == "imbalance_abs") v = static_cast<double>(f.imbalance_abs);
        else if (field == "imbalance_rel") v = f.imbalance_rel;
        else throw unknown_field("flow", field);
        out.emplace(key.second, v);
    }
    return out;
}

DaySeries from_market(const std::map<Date, marketvars::DailyMarketVars>& market,
                      std::string_view field) {
    if (field != "ret" && field != "vol") {
        throw unknown_field("market", field);
    }
    DaySeries out;
    for (const auto& [day, m] : market) {
        out.emplace(day, field == "ret" ? m.ret : std::optional<double>(m.vol));
    }
    return out;
}

DaySeries from_news(const std::map<Date, sentiment::DailyNewsVars>& news, std::string_view field) {
    DaySeries out;
    for (const auto& [day, n] : news) {
        double v = 0.0;
        if (field == "h") v = static_cast<double>(n.h);
        else if (field == "good") v = static_cast<double>(n.good);
        else if (field == "bad") v = static_cast<double>(n.bad);
        else if (field == "s_abs") v = static_cast<double>(n.s_abs);
        else if (field == "s_rel") v = n.s_rel;
        else throw unknown_field("news", field);
        out.emplace(day, v);
    }
    return out;
}

DaySeries read_csv_column(std::istream& in, std::string_view column,
                          const std::optional<std::string>& category) {
    DelimitedReader reader(in);
    const auto day_col = reader.require_column("day");
    const auto value_col = reader.require_column(column);
    const auto cat_col = reader.column("category");
    if (cat_col && !category) {
        throw std::invalid_argument("file has a category column; a category must be selected");
    }
    DaySeries out;
    std::vector<std::string> f;
    while (reader.next(f)) {
        if (cat_col && f[*cat_col] != *category) {
            continue;
        }
        const auto day = parse_date(f[day_col]);
        if (!day) {
            throw ParseError(ParseError::Kind::InvalidValue, reader.line(),
                             "invalid date '" + f[day_col] + "'");
        }
        std::optional<double> value;
        if (!f[value_col].empty()) {
            value = parse_number(f[value_col]);
            if (!value) {
                throw ParseError(ParseError::Kind::InvalidValue, reader.line(),
                                 "invalid number '" + f[value_col] + "'");
            }
        }
        if (!out.emplace(*day, value).second) {
            throw ParseError(ParseError::Kind::DuplicateKey, reader.line(),
                             "duplicate day " + f[day_col]);
        }
    }
    return out;
}

JoinedTriple join(const DaySeries& y, const DaySeries& x1, const DaySeries& x2) {
    std::set<Date> days;
    for (const auto* s : {&y, &x1, &x2}) {
        for (const auto& [day, v] : *s) {
            days.insert(day);
        }
    }
    std::vector<std::optional<double>> ys;
    std::vector<std::optional<double>> x1s;
    std::vector<std::optional<double>> x2s;
    JoinedTriple out;
    const auto lookup = [](const DaySeries& s, Date day) {
        const auto it = s.find(day);
        return it == s.end() ? std::nullopt : it->second;
    };
    for (const Date day : days) {
        ys.push_back(lookup(y, day));
        x1s.push_back(lookup(x1, day));
        x2s.push_back(lookup(x2, day));
        out.missing[0] += ys.back() ? 0 : 1;
        out.missing[1] += x1s.back() ? 0 : 1;
        out.missing[2] += x2s.back() ? 0 : 1;
    }
    out.aligned = stats::align_listwise(ys, x1s, x2s);
    return out;
}

}  // namespace newsflow::series
