#include "collatz_mersenne/checkpoint.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "collatz_mersenne/errors.hpp"

namespace cm {

namespace {

constexpr std::string_view kMagic = "CKMP";
constexpr std::string_view kEnd = "END";

std::string hex32(std::uint32_t v) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", v);
    return buf;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        auto nl = text.find('\n');
        if (nl == std::string_view::npos) throw MalformedField("checkpoint: last line is not newline-terminated");
        lines.push_back(text.substr(0, nl));
        text.remove_prefix(nl + 1);
    }
    return lines;
}

std::string_view field(std::string_view line, std::string_view key) {
    if (line.size() <= key.size() || line.substr(0, key.size()) != key || line[key.size()] != '=') {
        throw MalformedField("checkpoint: expected field '" + std::string(key) + "'");
    }
    return line.substr(key.size() + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key, int base = 10) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw MalformedField("checkpoint: bad value for '" + std::string(key) + "'");
    }
    return value;
}

std::string payload(const Checkpoint& c) {
    std::ostringstream out;
    out << kMagic << ' ' << c.format_version << '\n'
        << "origin=" << render(c.origin) << '\n'
        << "steps=" << c.steps << '\n'
        << "odd_steps=" << c.odd_steps << '\n'
        << "even_steps=" << c.even_steps << '\n'
        << "peak_bit_length=" << c.peak_bit_length << '\n'
        << "current_value_hex=" << c.current_value_hex << '\n';
    return out.str();
}

}  // namespace

std::uint32_t crc32(std::string_view bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
    return static_cast<std::uint32_t>(crc);
}

Checkpoint make_checkpoint(const IterationState& state) {
    if (!state.origin) throw DomainError("checkpoint: state has no origin expression");
    Checkpoint c;
    c.origin = *state.origin;
    c.origin.source_text = render(c.origin);
    c.steps = state.steps;
    c.odd_steps = state.odd_steps;
    c.even_steps = state.even_steps;
    c.peak_bit_length = state.peak_bit_length;
    c.current_value_hex = state.current.to_hex();
    c.payload_crc32 = crc32(payload(c));
    return c;
}

IterationState restore(const Checkpoint& c) {
    Natural current = Natural::from_hex(c.current_value_hex);
    if (current.is_zero()) throw MalformedField("checkpoint: current value is zero");
    if (c.steps != c.odd_steps + c.even_steps) throw MalformedField("checkpoint: steps != odd_steps + even_steps");
    if (c.peak_bit_length < current.bit_length()) throw MalformedField("checkpoint: peak_bit_length below current");
    IterationState s = IterationState::start(std::move(current), c.origin);
    s.steps = c.steps;
    s.odd_steps = c.odd_steps;
    s.even_steps = c.even_steps;
    s.peak_bit_length = c.peak_bit_length;
    return s;
}

std::string serialize(const Checkpoint& c) {
    return payload(c) + "payload_crc32=" + hex32(c.payload_crc32) + "\n" + std::string(kEnd) + "\n";
}

Checkpoint parse_checkpoint(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw MalformedField("checkpoint: empty file");

    const auto& header = lines[0];
    if (header.substr(0, kMagic.size() + 1) != std::string(kMagic) + " ") {
        throw MalformedField("checkpoint: missing CKMP header");
    }
    Checkpoint c;
    c.format_version = parse_number<int>(header.substr(kMagic.size() + 1), "version");
    if (c.format_version != kCheckpointVersion) {
        throw VersionUnsupported("checkpoint: format version " + std::to_string(c.format_version) + " is not supported");
    }
    if (lines.size() != 9 || lines[8] != kEnd) throw MalformedField("checkpoint: expected 9 lines ending in END");

    const std::uint32_t stored = parse_number<std::uint32_t>(field(lines[7], "payload_crc32"), "payload_crc32", 16);
    const std::size_t payload_size = static_cast<std::size_t>(lines[7].data() - text.data());
    if (crc32(text.substr(0, payload_size)) != stored) throw ChecksumMismatch("checkpoint: CRC-32 does not match payload");
    c.payload_crc32 = stored;

    try {
        c.origin = parse_expression(field(lines[1], "origin"));
    } catch (const ParseError& e) {
        throw MalformedField(std::string("checkpoint: bad origin: ") + e.what());
    }
    c.steps = parse_number<std::uint64_t>(field(lines[2], "steps"), "steps");
    c.odd_steps = parse_number<std::uint64_t>(field(lines[3], "odd_steps"), "odd_steps");
    c.even_steps = parse_number<std::uint64_t>(field(lines[4], "even_steps"), "even_steps");
    c.peak_bit_length = parse_number<std::uint64_t>(field(lines[5], "peak_bit_length"), "peak_bit_length");
    c.current_value_hex = std::string(field(lines[6], "current_value_hex"));
    for (char ch : c.current_value_hex) {
        if (!((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f'))) throw MalformedField("checkpoint: current is not lowercase hex");
    }
    return c;
}

void checkpoint_write(const std::filesystem::path& path, const IterationState& state) {
    const std::string bytes = serialize(make_checkpoint(state));
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("checkpoint: cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw Error("checkpoint: write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint checkpoint_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("checkpoint: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_checkpoint(buf.str());
}

}  // namespace cm
