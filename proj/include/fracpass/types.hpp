#pragma once

#include <cstddef>

namespace fracpass {

/// Hurst index of a fractional Brownian motion, restricted to (0, 1).
///
/// Every sampler in this library is valid on the whole open interval; the
/// experiments only use values in [0.5, 1).
class Hurst {
public:
    explicit Hurst(double value);

    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] double twice() const noexcept { return 2.0 * value_; }
    [[nodiscard]] bool is_brownian() const noexcept { return value_ == 0.5; }

    friend bool operator==(Hurst a, Hurst b) noexcept { return a.value_ == b.value_; }

private:
    double value_;
};

/// Uniform time discretisation of [0, horizon] with `steps` intervals.
class TimeGrid {
public:
    TimeGrid(double horizon, std::size_t steps);

    [[nodiscard]] double horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
    [[nodiscard]] double step() const noexcept { return step_; }
    [[nodiscard]] double time(std::size_t index) const noexcept {
        return static_cast<double>(index) * step_;
    }

    /// Grid with every `factor`-th point of this one. Requires steps % factor == 0.
    [[nodiscard]] TimeGrid coarsened(std::size_t factor) const;

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) noexcept {
        return a.horizon_ == b.horizon_ && a.steps_ == b.steps_;
    }

private:
    double horizon_;
    std::size_t steps_;
    double step_;
};

[[nodiscard]] constexpr bool is_power_of_two(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

}  // namespace fracpass
