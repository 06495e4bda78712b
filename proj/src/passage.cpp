#include "fracpass/passage.hpp"

#include <cmath>
#include <string>

#include "fracpass/error.hpp"

namespace fracpass {

namespace {

void check_values(std::span<const double> values, const TimeGrid& grid) {
    if (values.size() != grid.steps() + 1) {
        throw ContractError("path has " + std::to_string(values.size()) + " values, grid expects " +
                            std::to_string(grid.steps() + 1));
    }
}

[[noreturn]] void non_finite(std::size_t n) {
    throw DataError("non-finite path value at index " + std::to_string(n));
}

// uniform_at() never returns less than 2^-54 ~ exp(-37.4); below this
// exponent no draw can fire, so the uniform need not be generated.
constexpr double kNegligibleExponent = -40.0;

}  // namespace

PassageOutcome first_passage(std::span<const double> values, double threshold, const TimeGrid& grid) {
    check_values(values, grid);
    for (std::size_t n = 0; n < values.size(); ++n) {
        if (!std::isfinite(values[n])) non_finite(n);
        if (values[n] >= threshold) return PassageOutcome::hit(n, grid);
    }
    return PassageOutcome::censored(grid);
}

double bridge_crossing_prob(double x_prev, double x_next, double threshold, double step, Hurst h) {
    if (!(x_prev < threshold && x_next < threshold)) {
        throw ContractError("bridge_crossing_prob needs both endpoints strictly below the threshold");
    }
    if (!(step > 0.0)) throw DomainError("bridge_crossing_prob: step must be positive");
    return std::exp(-2.0 * (threshold - x_prev) * (threshold - x_next) / std::pow(step, h.twice()));
}

PassageOutcome first_passage_bridge(std::span<const double> values, double threshold, const TimeGrid& grid,
                                    Hurst h, const CounterRng& uniforms) {
    check_values(values, grid);
    if (!std::isfinite(values[0])) non_finite(0);
    if (values[0] >= threshold) return PassageOutcome::hit(0, grid);

    const double inv_scale = 2.0 / std::pow(grid.step(), h.twice());
    for (std::size_t n = 1; n < values.size(); ++n) {
        if (!std::isfinite(values[n])) non_finite(n);
        if (values[n] >= threshold) return PassageOutcome::hit(n, grid);
        const double exponent = -(threshold - values[n - 1]) * (threshold - values[n]) * inv_scale;
        if (exponent < kNegligibleExponent) continue;
        if (uniforms.uniform_at(n) < std::exp(exponent)) return PassageOutcome::hit(n, grid);
    }
    return PassageOutcome::censored(grid);
}

}  // namespace fracpass
