#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "newsflow/classify.hpp"
#include "newsflow/delimited.hpp"
#include "newsflow/ingest.hpp"
#include "newsflow/marketvars.hpp"
#include "newsflow/report.hpp"
#include "newsflow/sentiment.hpp"
#include "newsflow/series.hpp"
#include "newsflow/stats.hpp"
#include "newsflow/synth.hpp"

namespace fs = std::filesystem;

namespace newsflow::cli {

namespace {

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return in;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
    if (!out.flush()) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

template <typename Fn>
void write_with(const fs::path& path, Fn&& fn) {
    std::ostringstream os;
    fn(os);
    write_file(path, os.str());
}

// Wraps parse errors with the file they came from.
template <typename Fn>
auto parse_file(const fs::path& path, Fn&& fn) {
    auto in = open_input(path);
    try {
        return fn(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

TradingCalendar load_calendar(const fs::path& path) {
    return parse_file(path, [](std::istream& in) { return ingest::read_calendar(in); });
}

ingest::HeadlineFormat headline_format(const std::string& name) {
    if (name == "auto") return ingest::HeadlineFormat::Auto;
    if (name == "jsonl") return ingest::HeadlineFormat::JsonLines;
    if (name == "csv") return ingest::HeadlineFormat::Delimited;
    throw std::invalid_argument("unknown headline format '" + name + "'");
}

struct ColumnRef {
    fs::path file;
    std::string column;
};

ColumnRef parse_column_ref(const std::string& ref) {
    const auto colon = ref.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == ref.size()) {
        throw std::invalid_argument("expected FILE:COLUMN, got '" + ref + "'");
    }
    return {ref.substr(0, colon), ref.substr(colon + 1)};
}

series::DaySeries load_series(const std::string& ref, const std::optional<std::string>& category) {
    const auto cref = parse_column_ref(ref);
    auto in = open_input(cref.file);
    try {
        return series::read_csv_column(in, cref.column, category);
    } catch (const ParseError& e) {
        throw std::runtime_error(cref.file.string() + ": " + e.what());
    }
}

std::vector<report::NamedSeries> load_summary_series(const fs::path& path) {
    auto in = open_input(path);
    DelimitedReader reader(in);
    const auto& header = reader.header();
    const auto cat_col = reader.column("category");
    std::vector<std::size_t> value_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != "day" && header[i] != "category") {
            value_cols.push_back(i);
        }
    }
    // Keyed by (category, column) to keep output order stable.
    std::map<std::pair<std::string, std::size_t>, std::vector<double>> values;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const std::string cat = cat_col ? f[*cat_col] : std::string{};
        for (const auto c : value_cols) {
            if (f[c].empty()) {
                continue;
            }
            const auto v = parse_number(f[c]);
            if (!v) {
                throw std::runtime_error(path.string() + ":" + std::to_string(reader.line()) +
                                         ": invalid number '" + f[c] + "'");
            }
            values[{cat, c}].push_back(*v);
        }
    }
    std::vector<report::NamedSeries> out;
    if (cat_col) {
        for (const auto category : kAllCategories) {
            for (const auto c : value_cols) {
                const auto it = values.find({std::string(to_string(category)), c});
                if (it != values.end()) {
                    out.push_back({header[c], std::string(to_string(category)), it->second});
                }
            }
        }
    } else {
        for (const auto c : value_cols) {
            const auto it = values.find({std::string{}, c});
            if (it != values.end()) {
                out.push_back({header[c], "", it->second});
            }
        }
    }
    return out;
}

void emit(const std::optional<std::string>& out, const std::string& content) {
    if (out) {
        write_file(*out, content);
    } else {
        std::cout << content;
    }
}

}  // namespace

void run_ingest(const IngestArgs& args) {
    ingest::TransactionSchema tschema;
    tschema.delimiter = args.delimiter;
    ingest::PriceSchema pschema;
    pschema.delimiter = args.delimiter;

    const auto transactions = parse_file(args.transactions, [&](std::istream& in) {
        return ingest::parse_transactions(in, tschema);
    });
    const auto prices = parse_file(args.prices, [&](std::istream& in) {
        return ingest::parse_prices(in, pschema);
    });
    std::optional<ingest::LocalTimeRule> rule;
    if (args.local_tz_rules) {
        rule = parse_file(*args.local_tz_rules,
                          [](std::istream& in) { return ingest::parse_local_time_rule(in); });
    }
    const auto format = headline_format(args.headline_format);
    const auto headlines = parse_file(args.headlines, [&](std::istream& in) {
        return ingest::parse_headlines(in, format, rule ? &*rule : nullptr);
    });

    const auto calendar = ingest::calendar_from_prices(prices);
    const auto deduped = ingest::dedupe_headlines(headlines);
    const auto filtered = ingest::filter_trading_hours(deduped, args.drop_last_minutes);
    const auto buckets = ingest::bucket_headlines_by_day(filtered, calendar);

    const fs::path dir = args.out_dir;
    fs::create_directories(dir);
    write_with(dir / "transactions.csv", [&](std::ostream& os) { ingest::write_transactions(os, transactions); });
    write_with(dir / "prices.csv", [&](std::ostream& os) { ingest::write_prices(os, prices); });
    write_with(dir / "calendar.csv", [&](std::ostream& os) { ingest::write_calendar(os, calendar); });
    write_with(dir / "headlines_dedup.jsonl",
               [&](std::ostream& os) { ingest::write_headlines_jsonl(os, deduped); });
    write_with(dir / "buckets.jsonl", [&](std::ostream& os) { ingest::write_buckets_jsonl(os, buckets); });

    nlohmann::ordered_json summary;
    summary["transactions"] = transactions.size();
    summary["trading_days"] = calendar.size();
    summary["headlines_read"] = headlines.size();
    summary["headlines_deduplicated"] = deduped.size();
    summary["headlines_in_window"] = filtered.size();
    summary["headlines_bucketed"] = buckets.bucketed();
    summary["headlines_off_calendar"] = buckets.discarded;
    summary["drop_last_minutes"] = args.drop_last_minutes;
    write_file(dir / "ingest_summary.json", summary.dump(2) + "\n");
}

void run_classify(const ClassifyArgs& args) {
    const fs::path dir = args.in_dir;
    const auto calendar = load_calendar(dir / "calendar.csv");
    const auto records = parse_file(dir / "transactions.csv",
                                    [](std::istream& in) { return ingest::parse_transactions(in); });
    const auto flows = classify::build_flow_series(records, calendar, args.theta);
    write_with(args.out, [&](std::ostream& os) { classify::write_flows_csv(os, flows); });
}

void run_marketvars(const MarketvarsArgs& args) {
    const auto prices = parse_file(args.prices, [](std::istream& in) { return ingest::parse_prices(in); });
    const auto calendar = args.calendar ? load_calendar(*args.calendar) : ingest::calendar_from_prices(prices);
    const auto market = marketvars::build_market_series(prices, calendar);
    write_with(args.out, [&](std::ostream& os) { marketvars::write_market_csv(os, market); });
}

void run_sentiment(const SentimentArgs& args) {
    const fs::path dir = args.buckets_dir;
    const auto calendar = load_calendar(dir / "calendar.csv");
    const auto buckets = parse_file(dir / "buckets.jsonl",
                                    [](std::istream& in) { return ingest::read_buckets_jsonl(in); });
    const auto lexicon = parse_file(args.lexicon, [](std::istream& in) { return sentiment::load_lexicon(in); });
    const auto news = sentiment::build_news_series(buckets, lexicon, calendar);
    write_with(args.out, [&](std::ostream& os) { sentiment::write_news_csv(os, news); });
}

void run_regress(const RegressArgs& args) {
    if (args.category && !parse_category(*args.category)) {
        throw std::invalid_argument("unknown category '" + *args.category + "'");
    }
    const auto y = load_series(args.y, args.category);
    const auto x1 = load_series(args.x1, args.category);
    const auto x2 = load_series(args.x2, args.category);
    const auto joined = series::join(y, x1, x2);

    stats::RegressOptions options;
    options.bootstrap_replicates = args.boot;
    options.seed = args.seed;
    options.level = args.level;

    report::CategoryRegression result;
    result.meta.category = args.category.value_or("");
    result.meta.y_name = parse_column_ref(args.y).column;
    result.meta.x1_name = parse_column_ref(args.x1).column;
    result.meta.x2_name = parse_column_ref(args.x2).column;
    result.meta.bootstrap_replicates = args.boot;
    result.meta.seed = args.seed;
    result.meta.missing = joined.missing;
    result.report = stats::regress(joined.aligned.triple, options);
    result.report.dropped = joined.aligned.dropped;
    write_file(args.out, report::regression_to_json(result));
}

void run_report(const ReportArgs& args) {
    const auto format = report::parse_format(args.format);
    if (args.kind == "summary") {
        std::vector<report::NamedSeries> all;
        for (const auto& path : args.inputs) {
            auto s = load_summary_series(path);
            all.insert(all.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
        }
        const auto rows = report::summary_table(all);
        emit(args.out, report::render_summary(rows, format));
    } else if (args.kind == "histogram") {
        if (args.inputs.size() != 1) {
            throw std::invalid_argument("histogram takes exactly one headline file");
        }
        const auto headlines = parse_file(args.inputs.front(), [](std::istream& in) {
            return ingest::parse_headlines(in, ingest::HeadlineFormat::Auto);
        });
        std::optional<std::size_t> n_days = args.days;
        if (!n_days && args.calendar) {
            n_days = load_calendar(*args.calendar).size();
        }
        const auto histogram = report::intraday_histogram(headlines, args.bin_minutes, n_days);
        emit(args.out, report::render_histogram(histogram, format));
    } else if (args.kind == "regressions") {
        std::vector<report::CategoryRegression> rows;
        for (const auto& path : args.inputs) {
            rows.push_back(parse_file(path, [](std::istream& in) { return report::regression_from_json(in); }));
        }
        emit(args.out, report::regression_table(rows, format));
    } else {
        throw std::invalid_argument("unknown report kind '" + args.kind + "'");
    }
}

void run_synth(const SynthArgs& args) {
    synth::SynthConfig config;
    if (args.config) {
        config = parse_file(*args.config, [](std::istream& in) { return synth::parse_synth_config(in); });
    }
    if (args.seed) {
        config.seed = *args.seed;
    }
    config.validate();
    const auto files = synth::generate_market_files(config);
    synth::write_market_files(files, config, args.out_dir);
}

}  // namespace newsflow::cli
