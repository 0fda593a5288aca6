#include "newsflow/sentiment.hpp"

#include <algorithm>
#include <stdexcept>

#include "newsflow/delimited.hpp"

namespace newsflow::sentiment {

namespace {

bool is_letter(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

std::string to_upper(std::string_view word) {
    std::string out(word);
    for (char& c : out) {
        if (c >= 'a' && c <= 'z') {
            c = static_cast<char>(c - 'a' + 'A');
        }
    }
    return out;
}

}  // namespace

PolarityLexicon::PolarityLexicon(const std::vector<std::string>& positive,
                                 const std::vector<std::string>& negative) {
    for (const auto& w : positive) {
        positive_.insert(to_upper(w));
    }
    for (const auto& w : negative) {
        auto upper = to_upper(w);
        if (positive_.count(upper) != 0) {
            throw std::invalid_argument("lexicon word '" + upper + "' is both positive and negative");
        }
        negative_.insert(std::move(upper));
    }
}

bool PolarityLexicon::is_positive(std::string_view upper_word) const {
    return positive_.count(std::string(upper_word)) != 0;
}

bool PolarityLexicon::is_negative(std::string_view upper_word) const {
    return negative_.count(std::string(upper_word)) != 0;
}

PolarityLexicon PolarityLexicon::swapped() const {
    PolarityLexicon out;
    out.positive_ = negative_;
    out.negative_ = positive_;
    return out;
}

PolarityLexicon load_lexicon(std::istream& in) {
    std::vector<std::string> positive;
    std::vector<std::string> negative;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto body = trim(raw);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const auto sep = body.find_first_of(",\t ");
        if (sep == std::string_view::npos) {
            throw ParseError(ParseError::Kind::Malformed, line, "expected WORD and POS|NEG");
        }
        const auto word = trim(body.substr(0, sep));
        auto rest = body.substr(sep);
        rest.remove_prefix(std::min(rest.find_first_not_of(",\t "), rest.size()));
        const auto polarity = to_upper(trim(rest));
        if (word.empty() || !std::all_of(word.begin(), word.end(), is_letter)) {
            throw ParseError(ParseError::Kind::InvalidValue, line,
                             "lexicon word must be alphabetic: '" + std::string(word) + "'");
        }
        if (polarity == "POS") {
            positive.emplace_back(word);
        } else if (polarity == "NEG") {
            negative.emplace_back(word);
        } else {
            throw ParseError(ParseError::Kind::InvalidValue, line,
                             "polarity must be POS or NEG, got '" + polarity + "'");
        }
    }
    try {
        return PolarityLexicon(positive, negative);
    } catch (const std::invalid_argument& e) {
        throw ParseError(ParseError::Kind::InvalidValue, 0, e.what());
    }
}

void write_lexicon(std::ostream& out, const PolarityLexicon& lexicon) {
    std::vector<std::string> pos(lexicon.positive().begin(), lexicon.positive().end());
    std::vector<std::string> neg(lexicon.negative().begin(), lexicon.negative().end());
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    for (const auto& w : pos) {
        out << w << ",POS\n";
    }
    for (const auto& w : neg) {
        out << w << ",NEG\n";
    }
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_letter(text[i])) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && is_letter(text[i])) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(to_upper(text.substr(start, i - start)));
        }
    }
    return tokens;
}

DailyNewsVars make_news_vars(Date day, long h, long good, long bad) {
    DailyNewsVars v{day, h, good, bad, good - bad, 0.0};
    if (good + bad >= kMinPolarWords) {
        v.s_rel = static_cast<double>(good - bad) / static_cast<double>(good + bad);
    }
    return v;
}

DailyNewsVars score_day(std::span<const HeadlineRecord> headlines, const PolarityLexicon& lexicon,
                        Date day) {
    long good = 0;
    long bad = 0;
    for (const auto& h : headlines) {
        for (const auto& token : tokenize(h.text)) {
            if (lexicon.is_positive(token)) {
                ++good;
            } else if (lexicon.is_negative(token)) {
                ++bad;
            }
        }
    }
    return make_news_vars(day, static_cast<long>(headlines.size()), good, bad);
}

std::map<Date, DailyNewsVars> build_news_series(
    const std::map<Date, std::vector<HeadlineRecord>>& buckets, const PolarityLexicon& lexicon,
    const TradingCalendar& calendar) {
    std::map<Date, DailyNewsVars> out;
    for (const Date day : calendar.days()) {
        const auto it = buckets.find(day);
        out.emplace(day, it == buckets.end() ? make_news_vars(day, 0, 0, 0)
                                             : score_day(it->second, lexicon, day));
    }
    return out;
}

void write_news_csv(std::ostream& out, const std::map<Date, DailyNewsVars>& series) {
    out << "day,h,good,bad,s_abs,s_rel\n";
    for (const auto& [day, v] : series) {
        out << format_date(day) << ',' << v.h << ',' << v.good << ',' << v.bad << ',' << v.s_abs
            << ',' << format_number(v.s_rel) << '\n';
    }
}

}  // namespace newsflow::sentiment
