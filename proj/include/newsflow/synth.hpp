#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>

#include "newsflow/stats.hpp"
#include "newsflow/types.hpp"

namespace newsflow::synth {

/// Standardized two-factor model y = alpha1 x1 + alpha2 x2 + beta e, with
/// corr(x1, x2) = rho12 and beta chosen so that y has unit variance.
struct FactorModel {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double rho12 = 0.0;

    /// 1 - a1^2 - a2^2 - 2 a1 a2 rho12. Throws std::invalid_argument when the
    /// model is infeasible (|rho12| >= 1 or beta^2 < -1e-12); tiny negative
    /// round-off is returned as 0.
    [[nodiscard]] double beta_sq() const;
};

/// Draws T rows of (x1, x2) jointly Gaussian and y from the model.
[[nodiscard]] stats::AlignedTriple generate_factor_triple(const FactorModel& model, std::size_t T,
                                                          std::uint64_t seed);

/// How one investor category responds to the latent daily factors.
struct CategoryBehaviour {
    long investors = 0;
    /// Logit of the daily activity probability when the activity factor is 0.
    double base_activity_logit = -2.0;
    /// Activity logit per unit of the latent activity factor.
    double activity_gain = 0.6;
    /// Buy-vs-sell log-odds per unit of the latent imbalance factor.
    double direction_gain = 1.2;
    /// Probability that an active investor round-trips (BS state).
    double buysell_prob = 0.08;
    /// Median lot size in shares.
    double lot_size = 500.0;
};

struct SynthConfig {
    std::string start_date = "2003-01-02";
    std::size_t n_days = 1510;
    std::uint64_t seed = 1;
    double theta = 0.01;

    /// x1 = news intensity, x2 = volatility.
    FactorModel activity{0.226, 0.627, 0.501};
    /// x1 = sentiment, x2 = return. A negative alpha2 is the contrarian pattern.
    FactorModel imbalance{0.06, -0.655, 0.155};

    std::array<CategoryBehaviour, kCategoryCount> categories{};

    double initial_price = 20.0;
    double return_sd = 0.0234;
    double vol_level = 0.0207;
    double vol_dispersion = 0.45;

    /// Mean in-session headlines per trading day.
    double headline_rate = 3.742;
    double news_dispersion = 0.6;
    double positive_words_per_headline = 0.6;
    double negative_words_per_headline = 0.5;
    double sentiment_dispersion = 0.8;
    double filler_words_per_headline = 6.0;
    /// Extra headlines per day released outside the 08:00-16:30 window.
    double off_hours_rate = 1.5;
    /// Probability that a headline is re-released later the same day.
    double repeat_release_prob = 0.3;
    /// Headlines per weekend day (dropped by bucketing).
    double weekend_rate = 0.3;
    /// Probability of emitting a zero-volume record for an inactive investor-day.
    double zero_record_prob = 0.002;

    SynthConfig();

    [[nodiscard]] long total_investors() const noexcept;
    /// Throws std::invalid_argument on an infeasible or out-of-range setting.
    void validate() const;
};

/// Reads a JSON object; absent keys keep their defaults. Unknown keys are an error.
[[nodiscard]] SynthConfig parse_synth_config(std::istream& in);
[[nodiscard]] std::string synth_config_to_json(const SynthConfig& config);

/// Generated inputs in the exact ingest formats, plus the lexicon used to
/// write the headlines.
struct MarketFiles {
    std::string transactions_csv;
    std::string prices_csv;
    std::string headlines_jsonl;
    std::string lexicon_txt;
};

[[nodiscard]] MarketFiles generate_market_files(const SynthConfig& config);

/// Writes transactions.csv, prices.csv, headlines.jsonl, lexicon.txt and
/// config.json into `dir`, creating it if needed.
void write_market_files(const MarketFiles& files, const SynthConfig& config,
                        const std::filesystem::path& dir);

}  // namespace newsflow::synth
