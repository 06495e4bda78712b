#pragma once

#include "fracpass/types.hpp"

namespace fracpass::theory {

/// Laplace transform of the Brownian first passage time from x0 to threshold:
/// exp(-(threshold - x0) sqrt(2 lambda)).
[[nodiscard]] double laplace_bm(double lambda, double x0 = 0.0, double threshold = 1.0);

/// S(x) = min(x, x^(1/2H)).
[[nodiscard]] double s_function(double x, Hurst h);

/// (2 lambda)^(1 - 1/4H) for lambda <= 1, sqrt(2 lambda) above. Discontinuous at 1 unless H = 1/2.
[[nodiscard]] double t_of_lambda(double lambda, Hurst h);

/// Constants of the Laplace-gap bound. Unknown in closed form; defaults are
/// the pure-fBm clause (mu = 0, lambda0 = 1) with unit multipliers.
struct GapEnvelopeParams {
    double c = 1.0;
    double alpha = 1.0;
    double mu = 0.0;
    double lambda0 = 1.0;
    double eta = 0.1;
    double epsilon = 0.1;
    double x0 = 0.0;

    void validate() const;
};

/// c (H - 1/2)^(1/2 - eps) exp(-alpha S(1 - x0 - 2 eta)(sqrt(2 lambda + mu^2) - mu)).
[[nodiscard]] double gap_envelope(const GapEnvelopeParams& params, Hurst h, double lambda);

/// c (H - 1/2) exp(-S(1 - x0) T(lambda) / 4).
[[nodiscard]] double i1_envelope(double c, double x0, Hurst h, double lambda);

/// exp(c t) / sqrt(2 pi t^2H) * exp(-(x - x0)^2 / (2 sigma_sup^2 t^2H)).
[[nodiscard]] double density_envelope(double t, double x, double x0, Hurst h, double c = 0.0,
                                      double sigma_sup = 1.0);

/// c_T (H - 1/2).
[[nodiscard]] double theorem1_envelope(double c_t, Hurst h);

/// Brownian first passage density to level `distance`: d / sqrt(2 pi t^3) exp(-d^2 / 2t).
[[nodiscard]] double bm_passage_density(double t, double distance = 1.0);

/// P(tau <= t) = erfc(d / sqrt(2t)).
[[nodiscard]] double bm_passage_cdf(double t, double distance = 1.0);

}  // namespace fracpass::theory
