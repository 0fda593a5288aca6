#include "newsflow/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "newsflow/delimited.hpp"
#include "newsflow/ingest.hpp"
#include "newsflow/rng.hpp"
#include "newsflow/sentiment.hpp"

namespace newsflow::synth {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kPositiveWords = {
    "gain", "gains", "rise", "rises", "profit", "beat", "beats", "growth", "strong", "improve",
    "win", "wins", "boost", "upgrade", "success", "surge", "advance", "record", "rally", "robust",
};

const std::vector<std::string> kNegativeWords = {
    "loss", "losses", "fall", "falls", "cut", "cuts", "weak", "drop", "decline", "miss",
    "warn", "warning", "lawsuit", "downgrade", "slump", "fail", "risk", "delay", "recall", "crisis",
};

const std::vector<std::string> kFillerWords = {
    "acme", "phone", "market", "says", "shares", "report", "network", "handset", "quarter",
    "europe", "sales", "unit", "chief", "deal", "mobile", "update", "analyst", "outlook",
    "helsinki", "new", "plan", "launch", "devices", "operator", "talks", "stake", "ref",
};

// Independent stream per generator component.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double logistic(double x) {
    return 1.0 / (1.0 + std::exp(-x));
}

std::string investor_prefix(InvestorCategory category) {
    switch (category) {
    case InvestorCategory::Companies: return "CO";
    case InvestorCategory::Financial: return "FI";
    case InvestorCategory::Governmental: return "GO";
    case InvestorCategory::NonProfit: return "NP";
    case InvestorCategory::Households: return "HH";
    case InvestorCategory::Foreign: return "FO";
    }
    return "XX";
}

std::string padded(long value, int width) {
    std::string s = std::to_string(value);
    if (static_cast<int>(s.size()) < width) {
        s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
    }
    return s;
}

bool is_weekend(Date day) {
    const std::chrono::weekday wd{day};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

struct Headline {
    Timestamp ts;
    std::string text;
};

std::string compose_headline(Rng& rng, long pos, long neg, long filler, long serial) {
    std::vector<std::string> words;
    for (long i = 0; i < pos; ++i) {
        words.push_back(kPositiveWords[rng.index(kPositiveWords.size())]);
    }
    for (long i = 0; i < neg; ++i) {
        words.push_back(kNegativeWords[rng.index(kNegativeWords.size())]);
    }
    for (long i = 0; i < filler; ++i) {
        // "ref" is reserved for the serial suffix.
        words.push_back(kFillerWords[rng.index(kFillerWords.size() - 1)]);
    }
    rng.shuffle(std::span<std::string>(words));
    std::string text;
    for (const auto& w : words) {
        if (!text.empty()) {
            text.push_back(' ');
        }
        text += w;
    }
    if (!text.empty()) {
        text[0] = static_cast<char>(text[0] - 'a' + 'A');
    }
    // Serial keeps texts distinct; digits are dropped by the tokenizer.
    text += " - ref " + padded(serial, 6);
    return text;
}

Timestamp at_minute(Date day, int minute, int second) {
    return day + std::chrono::minutes{minute} + std::chrono::seconds{second};
}

void read_model(const json& j, FactorModel& m) {
    for (const auto& [key, value] : j.items()) {
        if (key == "alpha1") {
            m.alpha1 = value.get<double>();
        } else if (key == "alpha2") {
            m.alpha2 = value.get<double>();
        } else if (key == "rho12") {
            m.rho12 = value.get<double>();
        } else {
            throw std::invalid_argument("synth config: unknown factor-model key '" + key + "'");
        }
    }
}

void read_behaviour(const json& j, CategoryBehaviour& b) {
    for (const auto& [key, value] : j.items()) {
        if (key == "investors") {
            b.investors = value.get<long>();
        } else if (key == "base_activity_logit") {
            b.base_activity_logit = value.get<double>();
        } else if (key == "activity_gain") {
            b.activity_gain = value.get<double>();
        } else if (key == "direction_gain") {
            b.direction_gain = value.get<double>();
        } else if (key == "buysell_prob") {
            b.buysell_prob = value.get<double>();
        } else if (key == "lot_size") {
            b.lot_size = value.get<double>();
        } else {
            throw std::invalid_argument("synth config: unknown category key '" + key + "'");
        }
    }
}

}  // namespace

double FactorModel::beta_sq() const {
    if (!(std::abs(rho12) < 1.0)) {
        throw std::invalid_argument("factor model: |rho12| must be below 1");
    }
    const double b2 = 1.0 - alpha1 * alpha1 - alpha2 * alpha2 - 2.0 * alpha1 * alpha2 * rho12;
    if (b2 < -1e-12) {
        throw std::invalid_argument("factor model infeasible: beta^2 = " + std::to_string(b2) + " < 0");
    }
    return std::max(b2, 0.0);
}

stats::AlignedTriple generate_factor_triple(const FactorModel& model, std::size_t T,
                                            std::uint64_t seed) {
    const double beta = std::sqrt(model.beta_sq());
    const double ortho = std::sqrt(1.0 - model.rho12 * model.rho12);
    Rng rng(seed);
    stats::AlignedTriple out;
    out.y.reserve(T);
    out.x1.reserve(T);
    out.x2.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const double e = rng.normal();
        const double x1 = z1;
        const double x2 = model.rho12 * z1 + ortho * z2;
        out.x1.push_back(x1);
        out.x2.push_back(x2);
        out.y.push_back(model.alpha1 * x1 + model.alpha2 * x2 + beta * e);
    }
    return out;
}

SynthConfig::SynthConfig() {
    auto& c = categories;
    c[index_of(InvestorCategory::Companies)] = {150, -1.9, 0.6, 1.2, 0.08, 800.0};
    c[index_of(InvestorCategory::Financial)] = {40, 0.0, 0.5, 1.0, 0.20, 20000.0};
    c[index_of(InvestorCategory::Governmental)] = {30, -2.3, 0.5, 1.0, 0.05, 5000.0};
    c[index_of(InvestorCategory::NonProfit)] = {60, -2.5, 0.5, 1.0, 0.05, 600.0};
    c[index_of(InvestorCategory::Households)] = {600, -2.3, 0.7, 1.3, 0.06, 200.0};
    c[index_of(InvestorCategory::Foreign)] = {120, -2.4, 0.5, 1.0, 0.08, 3000.0};
}

long SynthConfig::total_investors() const noexcept {
    long n = 0;
    for (const auto& c : categories) {
        n += c.investors;
    }
    return n;
}

void SynthConfig::validate() const {
    if (!parse_date(start_date)) {
        throw std::invalid_argument("synth config: invalid start_date '" + start_date + "'");
    }
    if (n_days < 2) {
        throw std::invalid_argument("synth config: n_days must be at least 2");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("synth config: theta must lie in (0, 1)");
    }
    (void)activity.beta_sq();
    (void)imbalance.beta_sq();
    for (const auto& c : categories) {
        if (c.investors < 0 || !(c.buysell_prob >= 0.0 && c.buysell_prob <= 1.0) ||
            !(c.lot_size >= 1.0)) {
            throw std::invalid_argument("synth config: invalid category behaviour");
        }
    }
    const double rates[] = {initial_price, return_sd, vol_level, headline_rate,
                            positive_words_per_headline, negative_words_per_headline,
                            filler_words_per_headline, off_hours_rate, weekend_rate,
                            vol_dispersion, news_dispersion, sentiment_dispersion};
    for (const double r : rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("synth config: rates and scales must be non-negative");
        }
    }
    if (!(initial_price > 0.0) || !(vol_level > 0.0)) {
        throw std::invalid_argument("synth config: initial_price and vol_level must be positive");
    }
    if (!(repeat_release_prob >= 0.0 && repeat_release_prob <= 1.0) ||
        !(zero_record_prob >= 0.0 && zero_record_prob <= 1.0)) {
        throw std::invalid_argument("synth config: probabilities must lie in [0, 1]");
    }
}

SynthConfig parse_synth_config(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(ParseError::Kind::Malformed, 0, std::string("synth config: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError(ParseError::Kind::Malformed, 0, "synth config must be a JSON object");
    }
    SynthConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "start_date") c.start_date = value.get<std::string>();
            else if (key == "n_days") c.n_days = value.get<std::size_t>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "theta") c.theta = value.get<double>();
            else if (key == "activity") read_model(value, c.activity);
            else if (key == "imbalance") read_model(value, c.imbalance);
            else if (key == "categories") {
                for (const auto& [name, behaviour] : value.items()) {
                    const auto category = parse_category(name);
                    if (!category) {
                        throw std::invalid_argument("synth config: unknown category '" + name + "'");
                    }
                    read_behaviour(behaviour, c.categories[index_of(*category)]);
                }
            }
            else if (key == "initial_price") c.initial_price = value.get<double>();
            else if (key == "return_sd") c.return_sd = value.get<double>();
            else if (key == "vol_level") c.vol_level = value.get<double>();
            else if (key == "vol_dispersion") c.vol_dispersion = value.get<double>();
            else if (key == "headline_rate") c.headline_rate = value.get<double>();
            else if (key == "news_dispersion") c.news_dispersion = value.get<double>();
            else if (key == "positive_words_per_headline") c.positive_words_per_headline = value.get<double>();
            else if (key == "negative_words_per_headline") c.negative_words_per_headline = value.get<double>();
            else if (key == "sentiment_dispersion") c.sentiment_dispersion = value.get<double>();
            else if (key == "filler_words_per_headline") c.filler_words_per_headline = value.get<double>();
            else if (key == "off_hours_rate") c.off_hours_rate = value.get<double>();
            else if (key == "repeat_release_prob") c.repeat_release_prob = value.get<double>();
            else if (key == "weekend_rate") c.weekend_rate = value.get<double>();
            else if (key == "zero_record_prob") c.zero_record_prob = value.get<double>();
            else throw std::invalid_argument("synth config: unknown key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ParseError(ParseError::Kind::InvalidValue, 0, std::string("synth config: ") + e.what());
    }
    c.validate();
    return c;
}

std::string synth_config_to_json(const SynthConfig& c) {
    const auto model = [](const FactorModel& m) {
        return json{{"alpha1", m.alpha1}, {"alpha2", m.alpha2}, {"rho12", m.rho12}};
    };
    json categories = json::object();
    for (const auto category : kAllCategories) {
        const auto& b = c.categories[index_of(category)];
        categories[std::string(to_string(category))] = {
            {"investors", b.investors},         {"base_activity_logit", b.base_activity_logit},
            {"activity_gain", b.activity_gain}, {"direction_gain", b.direction_gain},
            {"buysell_prob", b.buysell_prob},   {"lot_size", b.lot_size}};
    }
    const json j = {{"start_date", c.start_date},
                    {"n_days", c.n_days},
                    {"seed", c.seed},
                    {"theta", c.theta},
                    {"activity", model(c.activity)},
                    {"imbalance", model(c.imbalance)},
                    {"categories", categories},
                    {"initial_price", c.initial_price},
                    {"return_sd", c.return_sd},
                    {"vol_level", c.vol_level},
                    {"vol_dispersion", c.vol_dispersion},
                    {"headline_rate", c.headline_rate},
                    {"news_dispersion", c.news_dispersion},
                    {"positive_words_per_headline", c.positive_words_per_headline},
                    {"negative_words_per_headline", c.negative_words_per_headline},
                    {"sentiment_dispersion", c.sentiment_dispersion},
                    {"filler_words_per_headline", c.filler_words_per_headline},
                    {"off_hours_rate", c.off_hours_rate},
                    {"repeat_release_prob", c.repeat_release_prob},
                    {"weekend_rate", c.weekend_rate},
                    {"zero_record_prob", c.zero_record_prob}};
    return j.dump(2) + "\n";
}

MarketFiles generate_market_files(const SynthConfig& config) {
    config.validate();
    const Date start = *parse_date(config.start_date);

    // Trading calendar: weekdays from start_date; weekend days are kept aside
    // so off-calendar headlines can be placed on them.
    std::vector<Date> trading_days;
    std::vector<Date> weekend_days;
    for (Date d = start; trading_days.size() < config.n_days; d += std::chrono::days{1}) {
        (is_weekend(d) ? weekend_days : trading_days).push_back(d);
    }
    const std::size_t T = trading_days.size();

    // Latent daily factors.
    Rng factor_rng(stream_seed(config.seed, 0));
    const double act_beta = std::sqrt(config.activity.beta_sq());
    const double imb_beta = std::sqrt(config.imbalance.beta_sq());
    const double act_ortho = std::sqrt(1.0 - config.activity.rho12 * config.activity.rho12);
    const double imb_ortho = std::sqrt(1.0 - config.imbalance.rho12 * config.imbalance.rho12);
    std::vector<double> news(T), vol(T), sent(T), ret(T);
    std::vector<std::array<double, kCategoryCount>> act_latent(T), imb_latent(T);
    for (std::size_t t = 0; t < T; ++t) {
        const double z1 = factor_rng.normal();
        const double z2 = factor_rng.normal();
        const double z3 = factor_rng.normal();
        const double z4 = factor_rng.normal();
        news[t] = z1;
        vol[t] = config.activity.rho12 * z1 + act_ortho * z2;
        sent[t] = z3;
        ret[t] = config.imbalance.rho12 * z3 + imb_ortho * z4;
        for (std::size_t k = 0; k < kCategoryCount; ++k) {
            act_latent[t][k] = config.activity.alpha1 * news[t] + config.activity.alpha2 * vol[t] +
                               act_beta * factor_rng.normal();
            imb_latent[t][k] = config.imbalance.alpha1 * sent[t] +
                               config.imbalance.alpha2 * ret[t] + imb_beta * factor_rng.normal();
        }
    }

    MarketFiles files;

    // Prices: close follows the return factor; the high/low range follows the
    // volatility factor, with Vol(t) = vol_level * exp(dispersion * v).
    {
        Rng rng(stream_seed(config.seed, 1));
        std::vector<PriceRecord> prices;
        prices.reserve(T);
        double close = config.initial_price;
        for (std::size_t t = 0; t < T; ++t) {
            if (t > 0) {
                close *= std::exp(config.return_sd * ret[t]);
            }
            const double v = config.vol_level * std::exp(config.vol_dispersion * vol[t]);
            const double half_range = std::min(v / 2.0, 0.9);
            const double centre = close * (1.0 + 0.5 * half_range * (2.0 * rng.uniform() - 1.0));
            prices.push_back(PriceRecord{trading_days[t], close, centre * (1.0 + half_range),
                                         centre * (1.0 - half_range)});
        }
        std::ostringstream out;
        ingest::write_prices(out, prices);
        files.prices_csv = out.str();
    }

    // Headlines.
    {
        Rng rng(stream_seed(config.seed, 2));
        std::vector<Headline> releases;
        long serial = 0;
        const auto emit = [&](Date day, bool in_session, double sentiment) {
            const double sd = config.sentiment_dispersion;
            const long pos = rng.poisson(config.positive_words_per_headline *
                                         std::exp(sd * sentiment - sd * sd / 2.0));
            const long neg = rng.poisson(config.negative_words_per_headline *
                                         std::exp(-sd * sentiment - sd * sd / 2.0));
            const long filler = 1 + rng.poisson(config.filler_words_per_headline);
            std::string text = compose_headline(rng, pos, neg, filler, ++serial);
            int minute = 0;
            if (in_session) {
                minute = ingest::kSessionOpenMinute +
                         static_cast<int>(rng.index(ingest::kSessionCloseMinute -
                                                    ingest::kSessionOpenMinute + 1));
            } else {
                constexpr int kOffMinutes =
                    1440 - (ingest::kSessionCloseMinute - ingest::kSessionOpenMinute + 1);
                minute = static_cast<int>(rng.index(kOffMinutes));
                if (minute >= ingest::kSessionOpenMinute) {
                    minute += ingest::kSessionCloseMinute - ingest::kSessionOpenMinute + 1;
                }
            }
            const int second = static_cast<int>(rng.index(60));
            const Timestamp ts = at_minute(day, minute, second);
            if (rng.bernoulli(config.repeat_release_prob)) {
                const int later = std::min(1439, minute + 1 + static_cast<int>(rng.index(180)));
                std::string repeat = text;
                if (rng.bernoulli(0.5)) {
                    const auto space = repeat.find(' ');
                    if (space != std::string::npos) {
                        repeat.insert(space, "  ");
                    }
                }
                releases.push_back(Headline{at_minute(day, later, second), std::move(repeat)});
            }
            releases.push_back(Headline{ts, std::move(text)});
        };
        const double nd = config.news_dispersion;
        for (std::size_t t = 0; t < T; ++t) {
            const long h = rng.poisson(config.headline_rate * std::exp(nd * news[t] - nd * nd / 2.0));
            for (long i = 0; i < h; ++i) {
                emit(trading_days[t], true, sent[t]);
            }
            const long off = rng.poisson(config.off_hours_rate);
            for (long i = 0; i < off; ++i) {
                emit(trading_days[t], false, sent[t]);
            }
        }
        for (const Date day : weekend_days) {
            const long n = rng.poisson(config.weekend_rate);
            for (long i = 0; i < n; ++i) {
                emit(day, true, 0.0);
            }
        }
        std::stable_sort(releases.begin(), releases.end(),
                         [](const Headline& a, const Headline& b) { return a.ts < b.ts; });
        std::ostringstream out;
        for (const auto& r : releases) {
            out << json{{"ts", format_timestamp(r.ts)}, {"text", r.text}}.dump() << '\n';
        }
        files.headlines_jsonl = out.str();
    }

    // Transactions: activity is logistic in the category's activity factor,
    // direction is Bernoulli with log-odds linear in its imbalance factor.
    {
        Rng rng(stream_seed(config.seed, 3));
        std::ostringstream out;
        out << "investor_id,category,day,volume_bought,volume_sold\n";
        for (std::size_t t = 0; t < T; ++t) {
            const std::string day_text = format_date(trading_days[t]);
            for (const auto category : kAllCategories) {
                const auto k = index_of(category);
                const auto& b = config.categories[k];
                const double p_active =
                    logistic(b.base_activity_logit + b.activity_gain * act_latent[t][k]);
                const double p_buy = logistic(b.direction_gain * imb_latent[t][k]);
                const std::string prefix = investor_prefix(category);
                for (long i = 0; i < b.investors; ++i) {
                    const bool active = rng.bernoulli(p_active);
                    double bought = 0.0;
                    double sold = 0.0;
                    if (active) {
                        const double lot =
                            std::max(1.0, std::round(b.lot_size * std::exp(0.8 * rng.normal())));
                        if (rng.bernoulli(b.buysell_prob)) {
                            bought = lot;
                            sold = lot + (lot >= 100.0 && rng.bernoulli(0.5) ? 1.0 : 0.0);
                        } else {
                            const double partial =
                                rng.bernoulli(0.2) ? std::floor(lot * 0.3 * rng.uniform()) : 0.0;
                            if (rng.bernoulli(p_buy)) {
                                bought = lot;
                                sold = partial;
                            } else {
                                bought = partial;
                                sold = lot;
                            }
                        }
                    } else if (!rng.bernoulli(config.zero_record_prob)) {
                        continue;
                    }
                    out << prefix << padded(i + 1, 6) << ',' << to_string(category) << ','
                        << day_text << ',' << format_number(bought) << ','
                        << format_number(sold) << '\n';
                }
            }
        }
        files.transactions_csv = out.str();
    }

    {
        const sentiment::PolarityLexicon lexicon(kPositiveWords, kNegativeWords);
        std::ostringstream out;
        out << "# synthetic polarity lexicon\n";
        sentiment::write_lexicon(out, lexicon);
        files.lexicon_txt = out.str();
    }
    return files;
}

void write_market_files(const MarketFiles& files, const SynthConfig& config,
                        const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + (dir / name).string());
        }
        out << content;
    };
    write("transactions.csv", files.transactions_csv);
    write("prices.csv", files.prices_csv);
    write("headlines.jsonl", files.headlines_jsonl);
    write("lexicon.txt", files.lexicon_txt);
    write("config.json", synth_config_to_json(config));
}

}  // namespace newsflow::synth
