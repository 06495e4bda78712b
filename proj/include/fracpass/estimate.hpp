#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracpass/analysis.hpp"
#include "fracpass/fgn.hpp"
#include "fracpass/passage.hpp"
#include "fracpass/types.hpp"

namespace fracpass {

enum class EstimatorKind { simple, bridge };

[[nodiscard]] const char* to_string(EstimatorKind kind) noexcept;

/// Monte Carlo estimate of E[exp(-lambda tau)].
struct LaplaceEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double lambda = 0.0;
    Hurst hurst{0.5};
    std::size_t samples = 0;
    std::size_t censored = 0;
    EstimatorKind estimator = EstimatorKind::simple;
};

/// Mean of exp(-lambda * hit_time) with censored outcomes contributing 0.
[[nodiscard]] LaplaceEstimate laplace_estimator(std::span<const PassageOutcome> outcomes, double lambda,
                                                Hurst hurst = Hurst{0.5},
                                                EstimatorKind kind = EstimatorKind::simple);

struct GapEstimate {
    double gap = 0.0;
    double gap_se = 0.0;
};

/// reference.value - estimate.value with independent error propagation.
[[nodiscard]] GapEstimate gap_estimate(const LaplaceEstimate& estimate, const LaplaceEstimate& reference);

/// Gap against an exact reference value (no reference error).
[[nodiscard]] GapEstimate gap_estimate(const LaplaceEstimate& estimate, double reference);

/// Gap from per-path differences of two outcome lists that share their
/// driving noise (common random numbers); the SE reflects the pairing.
[[nodiscard]] GapEstimate paired_gap(std::span<const PassageOutcome> estimate,
                                     std::span<const PassageOutcome> reference, double lambda);

struct BinSpec {
    double lower = 0.0;
    double upper = 10.0;
    std::size_t count = 200;
};

/// Histogram of hit times normalised so that the integral of the density
/// equals the fraction of samples hitting inside [lower, upper). Hits past
/// the last edge are counted in `overflow`.
struct DensityHistogram {
    std::vector<double> bin_edges;
    std::vector<double> mass;  // density per unit time
    std::size_t samples = 0;
    std::size_t hits = 0;
    std::size_t censored = 0;
    std::size_t overflow = 0;

    [[nodiscard]] double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
};

[[nodiscard]] DensityHistogram density_histogram(std::span<const PassageOutcome> outcomes, const BinSpec& bins);

/// Running supremum on [0, r] and the first grid time attaining it.
struct SupremumStats {
    double r = 0.0;
    double sup_value = 0.0;
    double argmax_time = 0.0;
};

[[nodiscard]] SupremumStats supremum_stats(const FbmPath& path, double r);

struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo estimate of E[1{S_r <= 1 + eta} * argmax_r^(H p)] for fBm from 0.
[[nodiscard]] MomentEstimate conjecture_moment(Hurst h, double eta, double p, double r, const TimeGrid& grid,
                                               std::size_t samples, std::uint64_t seed, unsigned workers = 1);

/// Log-log slope of the empirical survival P(tau >= t) over `t_grid`.
/// Points with survival 0 or 1 are skipped.
[[nodiscard]] RegressionFit tail_exponent(std::span<const PassageOutcome> outcomes, std::span<const double> t_grid);

}  // namespace fracpass
