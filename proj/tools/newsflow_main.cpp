#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace newsflow::cli;

int main(int argc, char** argv) {
    CLI::App app{"newsflow: investor flows, news and market variables"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Parse raw inputs into normalized intermediate files");
    ingest_cmd->add_option("--transactions", ingest.transactions, "Transaction records")->required();
    ingest_cmd->add_option("--prices", ingest.prices, "Daily prices (day, close, high, low)")->required();
    ingest_cmd->add_option("--headlines", ingest.headlines, "Headlines (JSON lines or delimited)")->required();
    ingest_cmd->add_option("--drop-last-minutes", ingest.drop_last_minutes,
                           "Minutes removed from the end of the session window")
        ->default_val(0);
    ingest_cmd->add_option("--out", ingest.out_dir, "Output directory")->required();
    ingest_cmd->add_option("--assume-local-tz", ingest.local_tz_rules,
                           "Offset rules file for headline timestamps without a zone");
    ingest_cmd->add_option("--headline-format", ingest.headline_format, "auto, jsonl or csv")
        ->check(CLI::IsMember({"auto", "jsonl", "csv"}));
    ingest_cmd->add_option("--delimiter", ingest.delimiter, "Field delimiter of transactions and prices");

    ClassifyArgs classify;
    auto* classify_cmd = app.add_subcommand("classify", "Label investor-days and aggregate category flows");
    classify_cmd->add_option("--in", classify.in_dir, "Directory written by ingest")->required();
    classify_cmd->add_option("--theta", classify.theta, "Buy/sell threshold in (0, 1)")->default_val(0.01);
    classify_cmd->add_option("--out", classify.out, "Flows CSV")->required();

    MarketvarsArgs market;
    auto* market_cmd = app.add_subcommand("marketvars", "Daily log return and range volatility");
    market_cmd->add_option("--prices", market.prices, "Price file")->required();
    market_cmd->add_option("--calendar", market.calendar, "Calendar CSV (defaults to the price days)");
    market_cmd->add_option("--out", market.out, "Market CSV")->required();

    SentimentArgs sentiment;
    auto* sentiment_cmd = app.add_subcommand("sentiment", "Daily headline counts and lexicon sentiment");
    sentiment_cmd->add_option("--buckets", sentiment.buckets_dir, "Directory written by ingest")->required();
    sentiment_cmd->add_option("--lexicon", sentiment.lexicon, "Polarity lexicon")->required();
    sentiment_cmd->add_option("--out", sentiment.out, "News CSV")->required();

    RegressArgs regress;
    auto* regress_cmd = app.add_subcommand("regress", "Standardized two-regressor fit with intervals");
    regress_cmd->add_option("--y", regress.y, "FILE:COLUMN")->required();
    regress_cmd->add_option("--x1", regress.x1, "FILE:COLUMN")->required();
    regress_cmd->add_option("--x2", regress.x2, "FILE:COLUMN")->required();
    regress_cmd->add_option("--category", regress.category, "Investor category for files with one");
    regress_cmd->add_option("--boot", regress.boot, "Bootstrap replicates (0 skips, else >= 1000)")
        ->default_val(10000);
    regress_cmd->add_option("--seed", regress.seed, "Bootstrap seed")->default_val(42);
    regress_cmd->add_option("--level", regress.level, "Interval coverage")->default_val(0.90);
    regress_cmd->add_option("--out", regress.out, "Report JSON")->required();

    ReportArgs report;
    auto* report_cmd = app.add_subcommand("report", "Summary, histogram and regression tables");
    report_cmd->add_option("kind", report.kind, "summary, histogram or regressions")
        ->required()
        ->check(CLI::IsMember({"summary", "histogram", "regressions"}));
    report_cmd->add_option("--in", report.inputs, "Input files")->required()->expected(1, -1);
    report_cmd->add_option("--format", report.format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    report_cmd->add_option("--out", report.out, "Output file (stdout if omitted)");
    report_cmd->add_option("--bin-minutes", report.bin_minutes, "Histogram bin width")->default_val(30);
    report_cmd->add_option("--days", report.days, "Days in the histogram sample");
    report_cmd->add_option("--calendar", report.calendar, "Calendar CSV giving the histogram day count");

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic market with known coefficients");
    synth_cmd->add_option("--config", synth.config, "JSON config (defaults if omitted)");
    synth_cmd->add_option("--seed", synth.seed, "Override the config seed");
    synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest_cmd) run_ingest(ingest);
        else if (*classify_cmd) run_classify(classify);
        else if (*market_cmd) run_marketvars(market);
        else if (*sentiment_cmd) run_sentiment(sentiment);
        else if (*regress_cmd) run_regress(regress);
        else if (*report_cmd) run_report(report);
        else if (*synth_cmd) run_synth(synth);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
