#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "collatz_mersenne/expression.hpp"
#include "collatz_mersenne/natural.hpp"

namespace cm {

inline constexpr std::uint64_t kDefaultCycleGuard = 1'000'000'000'000ULL;

/// Resumable snapshot of a Collatz run; the unit of checkpointing.
struct IterationState {
    Natural current{1};
    std::uint64_t steps = 0;
    std::uint64_t odd_steps = 0;
    std::uint64_t even_steps = 0;
    std::uint64_t peak_bit_length = 1;
    std::optional<NumberExpression> origin;

    /// Fresh state at `start` (bit length recorded as the initial peak).
    /// Throws DomainError for zero.
    static IterationState start(Natural start, std::optional<NumberExpression> origin = std::nullopt);

    bool halted() const noexcept { return current.is_one(); }

    friend bool operator==(const IterationState&, const IterationState&) = default;
};

struct PathResult {
    std::uint64_t d = 0;
    std::uint64_t odd_steps = 0;
    std::uint64_t even_steps = 0;
    std::uint64_t peak_bit_length = 0;

    friend bool operator==(const PathResult&, const PathResult&) = default;
};

/// One rule application: 3x+1 for odd x, x/2 for even x. 1 maps to 4.
Natural collatz_next(const Natural& x);

struct AcceleratedStep {
    Natural next;
    std::uint64_t consumed;
};

/// (3x+1) / 2^t with t = v2(3x+1), accounted as 1+t rule applications.
AcceleratedStep odd_step_accelerated(const Natural& x);

/// Steps to the first arrival at 1. Throws CycleGuardExceeded if the path is
/// longer than `cycle_guard`.
PathResult path_length(const Natural& x, std::uint64_t cycle_guard = kDefaultCycleGuard);

/// Consumes up to `max_steps` more steps, stopping early on arrival at 1.
IterationState advance(IterationState state, std::uint64_t max_steps);

/// Exactly `exact_steps` rule applications; 1 -> 4 -> 2 -> 1 is not special.
IterationState raw_advance(IterationState state, std::uint64_t exact_steps);

/// Visited values from x through the first 1, capped at max_entries.
std::vector<Natural> trace(const Natural& x, std::size_t max_entries);

PathResult to_result(const IterationState& state);

}  // namespace cm
