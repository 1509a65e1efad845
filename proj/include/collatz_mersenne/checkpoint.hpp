#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "collatz_mersenne/collatz.hpp"
#include "collatz_mersenne/expression.hpp"

namespace cm {

inline constexpr int kCheckpointVersion = 1;

/// On-disk snapshot of a run. Text format, one "key=value" per line:
///
///     CKMP 1
///     origin=M2203
///     steps=... odd_steps=... even_steps=... peak_bit_length=...
///     current_value_hex=<lowercase hex>
///     payload_crc32=<8 lowercase hex digits>
///     END
///
/// payload_crc32 is the standard CRC-32 of every byte before its own line.
struct Checkpoint {
    int format_version = kCheckpointVersion;
    NumberExpression origin;
    std::uint64_t steps = 0;
    std::uint64_t odd_steps = 0;
    std::uint64_t even_steps = 0;
    std::uint64_t peak_bit_length = 0;
    std::string current_value_hex;
    std::uint32_t payload_crc32 = 0;
};

std::uint32_t crc32(std::string_view bytes);

/// Throws DomainError if the state has no origin.
Checkpoint make_checkpoint(const IterationState& state);

/// Throws MalformedField if the fields are inconsistent.
IterationState restore(const Checkpoint& checkpoint);

std::string serialize(const Checkpoint& checkpoint);

/// Throws VersionUnsupported, ChecksumMismatch or MalformedField.
Checkpoint parse_checkpoint(std::string_view text);

/// Writes a sibling temporary file and renames it over `path`.
void checkpoint_write(const std::filesystem::path& path, const IterationState& state);

Checkpoint checkpoint_read(const std::filesystem::path& path);

}  // namespace cm
