#pragma once

#include <cstdint>
#include <span>

#include "fracpass/rng.hpp"
#include "fracpass/types.hpp"

namespace fracpass {

/// Grid hitting time of a threshold, or censoring at the horizon.
struct PassageOutcome {
    enum class Kind { hit, censored };

    Kind kind = Kind::censored;
    std::size_t hit_index = 0;  // valid when hit
    double hit_time = 0.0;      // hit_index * step, valid when hit
    double horizon = 0.0;

    [[nodiscard]] bool is_hit() const noexcept { return kind == Kind::hit; }

    [[nodiscard]] static PassageOutcome hit(std::size_t index, const TimeGrid& grid) noexcept {
        return {Kind::hit, index, grid.time(index), grid.horizon()};
    }
    [[nodiscard]] static PassageOutcome censored(const TimeGrid& grid) noexcept {
        return {Kind::censored, 0, 0.0, grid.horizon()};
    }
};

/// First n with values[n] >= threshold.
[[nodiscard]] PassageOutcome first_passage(std::span<const double> values, double threshold,
                                           const TimeGrid& grid);

/// Heuristic fractional bridge probability of crossing `threshold` inside
/// one step when both endpoints are below it:
/// exp(-2 (threshold - x_prev)(threshold - x_next) / step^2H).
/// Exact for H = 1/2.
[[nodiscard]] double bridge_crossing_prob(double x_prev, double x_next, double threshold, double step,
                                          Hurst h);

/// Grid detection plus, on every step whose endpoints are both below the
/// threshold, a bridge draw U < p_H that fires a hit at the step's right end.
/// The uniform for step n is `uniforms.uniform_at(n)`.
[[nodiscard]] PassageOutcome first_passage_bridge(std::span<const double> values, double threshold,
                                                  const TimeGrid& grid, Hurst h, const CounterRng& uniforms);

}  // namespace fracpass
