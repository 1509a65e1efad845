#include "collatz_mersenne/csv.hpp"

#include <array>
#include <charconv>

namespace cm {

std::string quote_field(std::string_view field, char delimiter) {
    if (field.find_first_of(std::string{delimiter} + "\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void TableWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) out_ << delimiter_;
        out_ << quote_field(fields[i], delimiter_);
    }
    out_ << '\n';
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), ptr};
}

}  // namespace cm
