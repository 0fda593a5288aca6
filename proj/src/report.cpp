#include "newsflow/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "newsflow/delimited.hpp"

namespace newsflow::report {

namespace {

using json = nlohmann::json;

std::string sig6(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::string pad_left(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.insert(0, width - s.size(), ' ');
    }
    return s;
}

json interval_json(const stats::Interval& i) {
    return json::array({i.lo, i.hi});
}

stats::Interval interval_from(const json& j) {
    return stats::Interval{j.at(0).get<double>(), j.at(1).get<double>()};
}

std::string interval_text(const std::optional<stats::Interval>& i) {
    if (!i) {
        return "(n/a)";
    }
    return "(" + sig6(i->lo) + ", " + sig6(i->hi) + ")";
}

std::string optional_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "text") return Format::Text;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (text, csv, json)");
}

SummaryStats summarize(const NamedSeries& series) {
    if (series.values.empty()) {
        throw std::invalid_argument("summary of empty series '" + series.variable + "'");
    }
    std::vector<double> sorted = series.values;
    std::sort(sorted.begin(), sorted.end());
    SummaryStats s;
    s.variable = series.variable;
    s.category = series.category;
    s.n = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.q05 = stats::quantile_nearest_rank(sorted, 0.05);
    s.q95 = stats::quantile_nearest_rank(sorted, 0.95);
    s.median = stats::quantile_nearest_rank(sorted, 0.5);
    s.mean = stats::mean(series.values);
    s.stddev = stats::sample_stddev(series.values);
    return s;
}

std::vector<SummaryStats> summary_table(std::span<const NamedSeries> series) {
    std::vector<SummaryStats> out;
    out.reserve(series.size());
    for (const auto& s : series) {
        out.push_back(summarize(s));
    }
    return out;
}

std::string render_summary(std::span<const SummaryStats> rows, Format format) {
    std::ostringstream out;
    switch (format) {
    case Format::Json: {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"variable", r.variable}, {"category", r.category}, {"n", r.n},
                           {"min", r.min}, {"q05", r.q05}, {"q95", r.q95}, {"max", r.max},
                           {"mean", r.mean}, {"median", r.median}, {"stddev", r.stddev}});
        }
        out << arr.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        out << "variable,category,n,min,q05,q95,max,mean,median,stddev\n";
        for (const auto& r : rows) {
            out << quote_field(r.variable) << ',' << quote_field(r.category) << ',' << r.n << ','
                << format_number(r.min) << ',' << format_number(r.q05) << ','
                << format_number(r.q95) << ',' << format_number(r.max) << ','
                << format_number(r.mean) << ',' << format_number(r.median) << ','
                << format_number(r.stddev) << '\n';
        }
        break;
    case Format::Text:
        out << pad_right("Variable", 16) << pad_right("Category", 14) << pad_left("Min", 12)
            << pad_left("5% quant.", 12) << pad_left("95% quant.", 12) << pad_left("Max", 12)
            << pad_left("Mean", 12) << pad_left("Median", 12) << pad_left("Std Dev", 12) << '\n';
        for (const auto& r : rows) {
            out << pad_right(r.variable, 16) << pad_right(r.category, 14)
                << pad_left(sig6(r.min), 12) << pad_left(sig6(r.q05), 12)
                << pad_left(sig6(r.q95), 12) << pad_left(sig6(r.max), 12)
                << pad_left(sig6(r.mean), 12) << pad_left(sig6(r.median), 12)
                << pad_left(sig6(r.stddev), 12) << '\n';
        }
        break;
    }
    return out.str();
}

long IntradayHistogram::total() const noexcept {
    long n = 0;
    for (const long c : counts) {
        n += c;
    }
    return n;
}

IntradayHistogram intraday_histogram(std::span<const HeadlineRecord> headlines, int bin_minutes,
                                     std::optional<std::size_t> n_days) {
    if (bin_minutes <= 0 || 1440 % bin_minutes != 0) {
        throw std::invalid_argument("bin_minutes must be a positive divisor of 1440");
    }
    IntradayHistogram h;
    h.bin_minutes = bin_minutes;
    h.counts.assign(static_cast<std::size_t>(1440 / bin_minutes), 0);
    std::set<Date> days;
    for (const auto& r : headlines) {
        ++h.counts[static_cast<std::size_t>(minute_of_day(r.timestamp) / bin_minutes)];
        days.insert(day_of(r.timestamp));
    }
    h.n_days = n_days.value_or(days.size());
    h.rate.assign(h.counts.size(), 0.0);
    if (h.n_days > 0) {
        const double scale = static_cast<double>(h.n_days) * bin_minutes;
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            h.rate[i] = static_cast<double>(h.counts[i]) / scale;
        }
    }
    return h;
}

std::string render_histogram(const IntradayHistogram& h, Format format) {
    std::ostringstream out;
    const auto label = [&](std::size_t bin) {
        const int minute = static_cast<int>(bin) * h.bin_minutes;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%02d:%02d", minute / 60, minute % 60);
        return std::string(buf);
    };
    switch (format) {
    case Format::Json: {
        json bins = json::array();
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            bins.push_back({{"start", label(i)}, {"count", h.counts[i]}, {"rate", h.rate[i]}});
        }
        out << json{{"bin_minutes", h.bin_minutes}, {"n_days", h.n_days}, {"bins", bins}}.dump(2)
            << '\n';
        break;
    }
    case Format::Csv:
        out << "bin_start,count,rate_per_minute\n";
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            out << label(i) << ',' << h.counts[i] << ',' << format_number(h.rate[i]) << '\n';
        }
        break;
    case Format::Text:
        out << "# headlines per minute per day, " << h.n_days << " days, " << h.bin_minutes
            << "-minute bins\n";
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            out << label(i) << pad_left(std::to_string(h.counts[i]), 10)
                << pad_left(sig6(h.rate[i]), 14) << '\n';
        }
        break;
    }
    return out.str();
}

std::string regression_to_json(const CategoryRegression& regression) {
    const auto& r = regression.report;
    const auto& m = regression.meta;
    json j = {{"category", m.category},
              {"y", m.y_name},
              {"x1", m.x1_name},
              {"x2", m.x2_name},
              {"bootstrap_replicates", m.bootstrap_replicates},
              {"seed", m.seed},
              {"missing", {{"y", m.missing[0]}, {"x1", m.missing[1]}, {"x2", m.missing[2]}}},
              {"T", r.T},
              {"dropped", r.dropped},
              {"alpha1", r.alpha1},
              {"alpha2", r.alpha2},
              {"beta_sq", r.beta_sq},
              {"residual_variance", r.residual_variance},
              {"rho12", r.rho12},
              {"rho1y", r.rho1y},
              {"rho2y", r.rho2y},
              {"pc1", r.pc1},
              {"pc2", r.pc2},
              {"ci_gauss_1", interval_json(r.ci_gauss_1)},
              {"ci_gauss_2", interval_json(r.ci_gauss_2)},
              {"ci_boot_1", r.ci_boot_1 ? interval_json(*r.ci_boot_1) : json(nullptr)},
              {"ci_boot_2", r.ci_boot_2 ? interval_json(*r.ci_boot_2) : json(nullptr)}};
    return j.dump(2) + "\n";
}

CategoryRegression regression_from_json(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
        CategoryRegression out;
        out.meta.category = j.at("category").get<std::string>();
        out.meta.y_name = j.at("y").get<std::string>();
        out.meta.x1_name = j.at("x1").get<std::string>();
        out.meta.x2_name = j.at("x2").get<std::string>();
        out.meta.bootstrap_replicates = j.at("bootstrap_replicates").get<std::size_t>();
        out.meta.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("missing")) {
            const auto& m = j.at("missing");
            out.meta.missing = {m.at("y").get<std::size_t>(), m.at("x1").get<std::size_t>(),
                                m.at("x2").get<std::size_t>()};
        }
        auto& r = out.report;
        r.T = j.at("T").get<std::size_t>();
        r.dropped = j.at("dropped").get<std::size_t>();
        r.alpha1 = j.at("alpha1").get<double>();
        r.alpha2 = j.at("alpha2").get<double>();
        r.beta_sq = j.at("beta_sq").get<double>();
        r.residual_variance = j.at("residual_variance").get<double>();
        r.rho12 = j.at("rho12").get<double>();
        r.rho1y = j.at("rho1y").get<double>();
        r.rho2y = j.at("rho2y").get<double>();
        r.pc1 = j.at("pc1").get<double>();
        r.pc2 = j.at("pc2").get<double>();
        r.ci_gauss_1 = interval_from(j.at("ci_gauss_1"));
        r.ci_gauss_2 = interval_from(j.at("ci_gauss_2"));
        if (!j.at("ci_boot_1").is_null()) {
            r.ci_boot_1 = interval_from(j.at("ci_boot_1"));
        }
        if (!j.at("ci_boot_2").is_null()) {
            r.ci_boot_2 = interval_from(j.at("ci_boot_2"));
        }
        return out;
    } catch (const json::exception& e) {
        throw ParseError(ParseError::Kind::Malformed, 0, std::string("regression report: ") + e.what());
    }
}

std::string regression_table(std::span<const CategoryRegression> rows, Format format) {
    const std::string y = rows.empty() ? "y" : rows.front().meta.y_name;
    const std::string x1 = rows.empty() ? "x1" : rows.front().meta.x1_name;
    const std::string x2 = rows.empty() ? "x2" : rows.front().meta.x2_name;
    std::ostringstream out;
    switch (format) {
    case Format::Json: {
        json arr = json::array();
        for (const auto& row : rows) {
            const auto& r = row.report;
            arr.push_back({{"category", row.meta.category},
                           {"alpha1", r.alpha1},
                           {"alpha2", r.alpha2},
                           {"ci_gauss_1", interval_json(r.ci_gauss_1)},
                           {"ci_gauss_2", interval_json(r.ci_gauss_2)},
                           {"ci_boot_1", r.ci_boot_1 ? interval_json(*r.ci_boot_1) : json(nullptr)},
                           {"ci_boot_2", r.ci_boot_2 ? interval_json(*r.ci_boot_2) : json(nullptr)},
                           {"residual_variance_pct", 100.0 * r.beta_sq},
                           {"pc1", r.pc1},
                           {"pc2", r.pc2},
                           {"T", r.T}});
        }
        out << json{{"y", y}, {"x1", x1}, {"x2", x2}, {"rows", arr}}.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        out << "category,alpha1,alpha1_gauss_lo,alpha1_gauss_hi,alpha1_boot_lo,alpha1_boot_hi,"
               "alpha2,alpha2_gauss_lo,alpha2_gauss_hi,alpha2_boot_lo,alpha2_boot_hi,"
               "residual_variance_pct,pc1,pc2,T\n";
        for (const auto& row : rows) {
            const auto& r = row.report;
            const auto lo = [](const std::optional<stats::Interval>& i) {
                return i ? std::optional<double>(i->lo) : std::nullopt;
            };
            const auto hi = [](const std::optional<stats::Interval>& i) {
                return i ? std::optional<double>(i->hi) : std::nullopt;
            };
            out << quote_field(row.meta.category) << ',' << format_number(r.alpha1) << ','
                << format_number(r.ci_gauss_1.lo) << ',' << format_number(r.ci_gauss_1.hi) << ','
                << optional_number(lo(r.ci_boot_1)) << ',' << optional_number(hi(r.ci_boot_1))
                << ',' << format_number(r.alpha2) << ',' << format_number(r.ci_gauss_2.lo) << ','
                << format_number(r.ci_gauss_2.hi) << ',' << optional_number(lo(r.ci_boot_2))
                << ',' << optional_number(hi(r.ci_boot_2)) << ','
                << format_number(100.0 * r.beta_sq) << ',' << format_number(r.pc1) << ','
                << format_number(r.pc2) << ',' << r.T << '\n';
        }
        break;
    case Format::Text: {
        constexpr std::size_t kCat = 16;
        constexpr std::size_t kCol = 34;
        out << pad_right("Category", kCat) << pad_right("alpha_" + x1, kCol)
            << pad_right("alpha_" + x2, kCol) << pad_right("% var resid", 14)
            << pad_right("rho(" + y + "," + x1 + "|" + x2 + ")", 22)
            << "rho(" + y + "," + x2 + "|" + x1 + ")" << '\n';
        for (const auto& row : rows) {
            const auto& r = row.report;
            out << pad_right(row.meta.category, kCat)
                << pad_right(sig6(r.alpha1) + " " + interval_text(r.ci_gauss_1), kCol)
                << pad_right(sig6(r.alpha2) + " " + interval_text(r.ci_gauss_2), kCol)
                << pad_right(sig6(100.0 * r.beta_sq) + " %", 14) << pad_right(sig6(r.pc1), 22)
                << sig6(r.pc2) << '\n';
            out << pad_right("  bootstrap", kCat) << pad_right(interval_text(r.ci_boot_1), kCol)
                << interval_text(r.ci_boot_2) << '\n';
        }
        break;
    }
    }
    return out.str();
}

}  // namespace newsflow::report
