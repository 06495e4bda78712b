#include "fracpass/types.hpp"

#include <cmath>
#include <string>

#include "fracpass/error.hpp"

namespace fracpass {

Hurst::Hurst(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
        throw DomainError("Hurst index must lie in (0, 1), got " + std::to_string(value));
    }
}

TimeGrid::TimeGrid(double horizon, std::size_t steps)
    : horizon_(horizon), steps_(steps), step_(horizon / static_cast<double>(steps)) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw DomainError("time horizon must be positive and finite");
    }
    if (steps < 2) {
        throw DomainError("time grid needs at least 2 steps, got " + std::to_string(steps));
    }
}

TimeGrid TimeGrid::coarsened(std::size_t factor) const {
    if (factor == 0 || steps_ % factor != 0) {
        throw ContractError("coarsening factor " + std::to_string(factor) +
                            " does not divide " + std::to_string(steps_) + " steps");
    }
    return TimeGrid(horizon_, steps_ / factor);
}

}  // namespace fracpass
