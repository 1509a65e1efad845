#include "collatz_mersenne/collatz.hpp"

#include <algorithm>
#include <string>

#include "collatz_mersenne/errors.hpp"

namespace cm {

namespace {

void require_positive(const Natural& x, const char* op) {
    if (x.is_zero()) throw DomainError(std::string(op) + ": Collatz rules are defined on positive integers only");
}

// Shared stepping loop. With `halt_at_one` the loop stops on the first 1;
// otherwise it keeps cycling through 4, 2, 1.
void run(IterationState& s, std::uint64_t budget, bool halt_at_one) {
    while (budget != 0) {
        if (halt_at_one && s.current.is_one()) return;
        if (s.current.is_odd()) {
            auto step = s.current.odd_step(budget - 1);
            s.odd_steps += 1;
            s.even_steps += step.halvings;
            s.steps += 1 + step.halvings;
            budget -= 1 + step.halvings;
            s.peak_bit_length = std::max(s.peak_bit_length, step.peak_bits);
        } else {
            std::uint64_t h = s.current.strip_trailing_zeros(budget);
            s.even_steps += h;
            s.steps += h;
            budget -= h;
        }
    }
}

}  // namespace

IterationState IterationState::start(Natural start, std::optional<NumberExpression> origin) {
    require_positive(start, "IterationState::start");
    IterationState s;
    s.peak_bit_length = start.bit_length();
    s.current = std::move(start);
    s.origin = std::move(origin);
    // The 3n-1 transit peak of a Mersenne start is ~1.585 times its size.
    s.current.reserve_bits(s.peak_bit_length + s.peak_bit_length * 3 / 5 + 128);
    return s;
}

Natural collatz_next(const Natural& x) {
    require_positive(x, "collatz_next");
    Natural next = x;
    if (next.is_odd()) {
        next.mul_small(3).add_small(1);
    } else {
        next >>= 1;
    }
    return next;
}

AcceleratedStep odd_step_accelerated(const Natural& x) {
    require_positive(x, "odd_step_accelerated");
    if (x.is_even()) throw DomainError("odd_step_accelerated: argument must be odd");
    AcceleratedStep out{x, 0};
    auto step = out.next.odd_step(UINT64_MAX);
    out.consumed = 1 + step.halvings;
    return out;
}

PathResult path_length(const Natural& x, std::uint64_t cycle_guard) {
    require_positive(x, "path_length");
    IterationState s = IterationState::start(x);
    run(s, cycle_guard, true);
    if (!s.halted()) {
        throw CycleGuardExceeded("path from " + (x.bit_length() <= 256 ? x.to_decimal() : "a " + std::to_string(x.bit_length()) + "-bit value") +
                                     " did not reach 1 within " + std::to_string(cycle_guard) + " steps",
                                 cycle_guard);
    }
    return to_result(s);
}

IterationState advance(IterationState state, std::uint64_t max_steps) {
    require_positive(state.current, "advance");
    run(state, max_steps, true);
    return state;
}

IterationState raw_advance(IterationState state, std::uint64_t exact_steps) {
    require_positive(state.current, "raw_advance");
    run(state, exact_steps, false);
    return state;
}

std::vector<Natural> trace(const Natural& x, std::size_t max_entries) {
    require_positive(x, "trace");
    std::vector<Natural> out;
    if (max_entries == 0) return out;
    out.push_back(x);
    while (out.size() < max_entries && !out.back().is_one()) out.push_back(collatz_next(out.back()));
    return out;
}

PathResult to_result(const IterationState& state) {
    return {state.steps, state.odd_steps, state.even_steps, state.peak_bit_length};
}

}  // namespace cm
