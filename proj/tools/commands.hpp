#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace newsflow::cli {

struct IngestArgs {
    std::string transactions;
    std::string prices;
    std::string headlines;
    int drop_last_minutes = 0;
    std::string out_dir;
    std::optional<std::string> local_tz_rules;
    std::string headline_format = "auto";
    char delimiter = ',';
};

struct ClassifyArgs {
    std::string in_dir;
    double theta = 0.01;
    std::string out;
};

struct MarketvarsArgs {
    std::string prices;
    std::optional<std::string> calendar;
    std::string out;
};

struct SentimentArgs {
    std::string buckets_dir;
    std::string lexicon;
    std::string out;
};

struct RegressArgs {
    std::string y;
    std::string x1;
    std::string x2;
    std::optional<std::string> category;
    std::size_t boot = 10000;
    std::uint64_t seed = 42;
    double level = 0.90;
    std::string out;
};

struct ReportArgs {
    std::string kind;
    std::vector<std::string> inputs;
    std::string format = "text";
    std::optional<std::string> out;
    int bin_minutes = 30;
    std::optional<std::size_t> days;
    std::optional<std::string> calendar;
};

struct SynthArgs {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

void run_ingest(const IngestArgs& args);
void run_classify(const ClassifyArgs& args);
void run_marketvars(const MarketvarsArgs& args);
void run_sentiment(const SentimentArgs& args);
void run_regress(const RegressArgs& args);
void run_report(const ReportArgs& args);
void run_synth(const SynthArgs& args);

}  // namespace newsflow::cli
