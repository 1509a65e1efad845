#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "collatz_mersenne/collatz.hpp"
#include "collatz_mersenne/expression.hpp"

namespace cm {

inline constexpr std::uint64_t kDefaultCheckpointInterval = 10'000'000;

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitUsage = 2, kExitRuntime = 3 };

struct PathlenOptions {
    std::optional<std::filesystem::path> checkpoint;
    std::uint64_t checkpoint_interval = kDefaultCheckpointInterval;
    std::uint64_t cycle_guard = kDefaultCycleGuard;
    /// Stop (leaving the checkpoint behind) once this run has consumed this
    /// many steps. Simulates an interrupted long run.
    std::optional<std::uint64_t> step_budget;
};

struct PathlenOutcome {
    bool completed;
    bool resumed;  // started from an existing checkpoint
    IterationState state;
};

/// Computes D for `expr`, checkpointing every `checkpoint_interval` steps when
/// a checkpoint path is given and resuming from it if it already exists.
/// Throws ChecksumMismatch/OriginMismatch on an unusable checkpoint and
/// CycleGuardExceeded once the total step count passes the guard.
PathlenOutcome run_pathlen(const NumberExpression& expr, const PathlenOptions& options);

/// The command-line front end. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cm
