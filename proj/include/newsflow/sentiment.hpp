#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "newsflow/types.hpp"

namespace newsflow::sentiment {

/// Disjoint sets of uppercase positive and negative word forms.
class PolarityLexicon {
public:
    PolarityLexicon() = default;
    /// Words are uppercased; a word present in both sets throws std::invalid_argument.
    PolarityLexicon(const std::vector<std::string>& positive, const std::vector<std::string>& negative);

    [[nodiscard]] bool is_positive(std::string_view upper_word) const;
    [[nodiscard]] bool is_negative(std::string_view upper_word) const;
    [[nodiscard]] const std::unordered_set<std::string>& positive() const noexcept { return positive_; }
    [[nodiscard]] const std::unordered_set<std::string>& negative() const noexcept { return negative_; }

    /// Same words with polarities exchanged.
    [[nodiscard]] PolarityLexicon swapped() const;

private:
    std::unordered_set<std::string> positive_;
    std::unordered_set<std::string> negative_;
};

/// Two columns per line, WORD and POS|NEG, separated by a comma, tab or
/// spaces. Blank lines and lines starting with '#' are skipped.
[[nodiscard]] PolarityLexicon load_lexicon(std::istream& in);
void write_lexicon(std::ostream& out, const PolarityLexicon& lexicon);

/// Splits on maximal runs of non-letters and uppercases. No stemming.
[[nodiscard]] std::vector<std::string> tokenize(std::string_view text);

inline constexpr long kMinPolarWords = 5;

struct DailyNewsVars {
    Date day{};
    long h = 0;
    long good = 0;
    long bad = 0;
    long s_abs = 0;
    /// (good - bad) / (good + bad) when good + bad >= 5, otherwise 0.
    double s_rel = 0.0;

    bool operator==(const DailyNewsVars&) const = default;
};

[[nodiscard]] DailyNewsVars make_news_vars(Date day, long h, long good, long bad);

/// Counts lexicon hits across all of a day's headlines, with multiplicity.
[[nodiscard]] DailyNewsVars score_day(std::span<const HeadlineRecord> headlines,
                                      const PolarityLexicon& lexicon, Date day = Date{});

/// Dense over the calendar; buckets for days off the calendar are ignored.
[[nodiscard]] std::map<Date, DailyNewsVars> build_news_series(
    const std::map<Date, std::vector<HeadlineRecord>>& buckets, const PolarityLexicon& lexicon,
    const TradingCalendar& calendar);

/// Columns: day, h, good, bad, s_abs, s_rel.
void write_news_csv(std::ostream& out, const std::map<Date, DailyNewsVars>& series);

}  // namespace newsflow::sentiment
