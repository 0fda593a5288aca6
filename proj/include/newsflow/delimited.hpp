#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newsflow {

/// Header-mapped reader for delimiter-separated text. Fields may be wrapped in
/// double quotes (with "" as an escaped quote); blank lines are skipped.
class DelimitedReader {
public:
    explicit DelimitedReader(std::istream& in, char delimiter = ',');

    [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
    [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const noexcept;
    /// Throws ParseError(Malformed) naming the missing column.
    [[nodiscard]] std::size_t require_column(std::string_view name) const;

    /// Reads the next record into `fields`; false at end of input. Records whose
    /// field count differs from the header raise ParseError(Malformed).
    bool next(std::vector<std::string>& fields);
    /// Physical line number of the record last returned by next().
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::istream& in_;
    char delimiter_;
    std::vector<std::string> header_;
    std::size_t line_ = 0;
};

[[nodiscard]] std::vector<std::string> split_delimited(std::string_view line, char delimiter,
                                                       std::size_t line_number = 0);
/// Quotes the field if it contains the delimiter, a quote, or a line break.
[[nodiscard]] std::string quote_field(std::string_view field, char delimiter = ',');

[[nodiscard]] std::string_view trim(std::string_view text) noexcept;
/// Trims and collapses each internal whitespace run to one space.
[[nodiscard]] std::string normalize_space(std::string_view text);

[[nodiscard]] std::optional<double> parse_number(std::string_view text) noexcept;
/// Shortest decimal form that round-trips to the same double.
[[nodiscard]] std::string format_number(double value);

}  // namespace newsflow
