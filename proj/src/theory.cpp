#include "fracpass/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracpass/error.hpp"

namespace fracpass::theory {

namespace {

void require_at_least_half(Hurst h, const char* where) {
    if (h.value() < 0.5) throw DomainError(std::string(where) + ": requires H >= 1/2");
}

}  // namespace

double laplace_bm(double lambda, double x0, double threshold) {
    if (lambda < 0.0) throw DomainError("laplace_bm: lambda must be nonnegative");
    if (x0 > threshold) throw DomainError("laplace_bm: start lies above the threshold");
    return std::exp(-(threshold - x0) * std::sqrt(2.0 * lambda));
}

double s_function(double x, Hurst h) {
    if (x < 0.0) throw DomainError("s_function: x must be nonnegative");
    return std::min(x, std::pow(x, 1.0 / h.twice()));
}

double t_of_lambda(double lambda, Hurst h) {
    if (!(lambda > 0.0)) throw DomainError("t_of_lambda: lambda must be positive");
    if (lambda <= 1.0) return std::pow(2.0 * lambda, 1.0 - 1.0 / (4.0 * h.value()));
    return std::sqrt(2.0 * lambda);
}

void GapEnvelopeParams::validate() const {
    if (!(c > 0.0) || !(alpha > 0.0) || mu < 0.0) {
        throw DomainError("gap envelope: need c > 0, alpha > 0, mu >= 0");
    }
    if (lambda0 < 1.0) throw DomainError("gap envelope: lambda0 must be >= 1");
    if (!(x0 < 1.0)) throw DomainError("gap envelope: x0 must be below 1");
    if (!(eta > 0.0 && eta <= 0.5 * (1.0 - x0))) throw DomainError("gap envelope: need 0 < eta <= (1 - x0)/2");
    if (!(epsilon > 0.0 && epsilon < 0.25)) throw DomainError("gap envelope: epsilon must lie in (0, 1/4)");
}

double gap_envelope(const GapEnvelopeParams& params, Hurst h, double lambda) {
    params.validate();
    require_at_least_half(h, "gap_envelope");
    if (lambda < params.lambda0) {
        throw DomainError("gap_envelope: lambda below lambda0, the bound does not apply");
    }
    const double distance = s_function(1.0 - params.x0 - 2.0 * params.eta, h);
    const double decay = std::sqrt(2.0 * lambda + params.mu * params.mu) - params.mu;
    return params.c * std::pow(h.value() - 0.5, 0.5 - params.epsilon) *
           std::exp(-params.alpha * distance * decay);
}

double i1_envelope(double c, double x0, Hurst h, double lambda) {
    require_at_least_half(h, "i1_envelope");
    if (!(x0 < 1.0)) throw DomainError("i1_envelope: x0 must be below 1");
    return c * (h.value() - 0.5) * std::exp(-0.25 * s_function(1.0 - x0, h) * t_of_lambda(lambda, h));
}

double density_envelope(double t, double x, double x0, Hurst h, double c, double sigma_sup) {
    if (!(t > 0.0)) throw DomainError("density_envelope: t must be positive");
    if (!(sigma_sup > 0.0)) throw DomainError("density_envelope: sigma_sup must be positive");
    const double variance = std::pow(t, h.twice());
    const double dx = x - x0;
    return std::exp(c * t) / std::sqrt(2.0 * std::numbers::pi * variance) *
           std::exp(-dx * dx / (2.0 * sigma_sup * sigma_sup * variance));
}

double theorem1_envelope(double c_t, Hurst h) {
    require_at_least_half(h, "theorem1_envelope");
    return c_t * (h.value() - 0.5);
}

double bm_passage_density(double t, double distance) {
    if (!(t > 0.0)) return 0.0;
    return distance / std::sqrt(2.0 * std::numbers::pi * t * t * t) * std::exp(-distance * distance / (2.0 * t));
}

double bm_passage_cdf(double t, double distance) {
    if (!(t > 0.0)) return 0.0;
    return std::erfc(distance / std::sqrt(2.0 * t));
}

}  // namespace fracpass::theory
