#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cm {

enum class TableFormat { Csv, Tsv };

/// Writes delimited rows. Fields holding the delimiter, a quote, CR or LF
/// are quoted with embedded quotes doubled.
class TableWriter {
public:
    TableWriter(std::ostream& out, TableFormat format) : out_(out), delimiter_(format == TableFormat::Csv ? ',' : '\t') {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
    char delimiter_;
};

std::string quote_field(std::string_view field, char delimiter);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace cm
