#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracpass/fgn.hpp"

namespace fracpass {

/// Sample autocovariance of circulant fGn at lags 0..max_lag against a
/// reference. Each block contributes one average of x_n x_{n+k}; the SE is
/// taken across blocks, which are independent.
struct AutocovarianceCheck {
    std::vector<double> sample;
    std::vector<double> expected;
    std::vector<double> std_error;
    std::vector<double> z_score;

    [[nodiscard]] double max_abs_z() const;
    [[nodiscard]] bool passed(double z_limit = 5.0) const { return max_abs_z() < z_limit; }
};

using AutocovarianceFunction = std::function<double(Hurst, std::size_t lag, double step)>;

[[nodiscard]] AutocovarianceCheck check_fgn_autocovariance(Hurst h, const TimeGrid& grid, std::size_t blocks,
                                                           std::uint64_t seed, std::size_t max_lag,
                                                           const AutocovarianceFunction& reference = {},
                                                           unsigned workers = 1);

/// B^H_T for `count` circulant paths.
[[nodiscard]] std::vector<double> circulant_terminal_values(Hurst h, const TimeGrid& grid, std::size_t count,
                                                            std::uint64_t seed);

/// B^H_T for `count` Cholesky-oracle paths.
[[nodiscard]] std::vector<double> cholesky_terminal_values(Hurst h, const TimeGrid& grid, std::size_t count,
                                                           std::uint64_t seed);

/// Pooled lag-1 sample correlation of circulant increments over `blocks` blocks.
[[nodiscard]] double pooled_lag1_correlation(Hurst h, const TimeGrid& grid, std::size_t blocks, std::uint64_t seed);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured statistic and threshold
};

struct SelftestOptions {
    std::uint64_t seed = 7;
    unsigned workers = 1;
    /// Replaces the exact fGn autocovariance in the covariance check.
    AutocovarianceFunction reference_autocovariance;
};

/// Oracle equivalence, distribution checks, bridge dominance and
/// closed-form identities at small sizes (a few seconds).
[[nodiscard]] std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

}  // namespace fracpass
