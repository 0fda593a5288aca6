#include "newsflow/delimited.hpp"

#include <charconv>
#include <cmath>

#include "newsflow/types.hpp"

namespace newsflow {

namespace {

bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

}  // namespace

std::string_view trim(std::string_view text) noexcept {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && is_space(text[begin])) {
        ++begin;
    }
    while (end > begin && is_space(text[end - 1])) {
        --end;
    }
    return text.substr(begin, end - begin);
}

std::string normalize_space(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (const char c : trim(text)) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> split_delimited(std::string_view line, char delimiter,
                                         std::size_t line_number) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && std::string_view(trim(current)).empty() && !was_quoted) {
            current.clear();
            quoted = true;
            was_quoted = true;
        } else if (c == delimiter) {
            fields.emplace_back(was_quoted ? current : std::string(trim(current)));
            current.clear();
            was_quoted = false;
        } else if (was_quoted) {
            if (!is_space(c)) {
                throw ParseError(ParseError::Kind::Malformed, line_number,
                                 "unexpected character after closing quote");
            }
        } else {
            current.push_back(c);
        }
    }
    if (quoted) {
        throw ParseError(ParseError::Kind::Malformed, line_number, "unterminated quoted field");
    }
    fields.emplace_back(was_quoted ? current : std::string(trim(current)));
    return fields;
}

std::string quote_field(std::string_view field, char delimiter) {
    if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

DelimitedReader::DelimitedReader(std::istream& in, char delimiter)
    : in_(in), delimiter_(delimiter) {
    std::string raw;
    while (std::getline(in_, raw)) {
        ++line_;
        if (!trim(raw).empty()) {
            header_ = split_delimited(raw, delimiter_, line_);
            return;
        }
    }
    throw ParseError(ParseError::Kind::Malformed, 0, "missing header row");
}

std::optional<std::size_t> DelimitedReader::column(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t DelimitedReader::require_column(std::string_view name) const {
    if (const auto idx = column(name)) {
        return *idx;
    }
    throw ParseError(ParseError::Kind::Malformed, 1,
                     "missing required column '" + std::string(name) + "'");
}

bool DelimitedReader::next(std::vector<std::string>& fields) {
    std::string raw;
    while (std::getline(in_, raw)) {
        ++line_;
        if (trim(raw).empty()) {
            continue;
        }
        fields = split_delimited(raw, delimiter_, line_);
        if (fields.size() != header_.size()) {
            throw ParseError(ParseError::Kind::Malformed, line_,
                             "expected " + std::to_string(header_.size()) + " fields, found " +
                                 std::to_string(fields.size()));
        }
        return true;
    }
    return false;
}

std::optional<double> parse_number(std::string_view text) noexcept {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
        !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace newsflow
