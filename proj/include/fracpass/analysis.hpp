#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracpass/types.hpp"

namespace fracpass {

struct LaplaceEstimate;

/// Ordinary (or weighted) least-squares line y = intercept + slope * x.
struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;
    std::size_t n = 0;
    double slope_se = 0.0;  // naive OLS standard error; 0 when n == 2
    double intercept_se = 0.0;
};

/// OLS with intercept. Throws RankError when xs are all equal or n < 2.
[[nodiscard]] RegressionFit linear_fit(std::span<const double> xs, std::span<const double> ys);

/// Weighted least squares, e.g. weights = 1 / SE^2. Not used by default.
[[nodiscard]] RegressionFit weighted_linear_fit(std::span<const double> xs, std::span<const double> ys,
                                                std::span<const double> weights);

struct ExcludedPoint {
    std::size_t index;
    std::string reason;
};

struct RateFit {
    RegressionFit fit;  // log(gap) against log(H - 1/2); slope is the rate exponent
    std::vector<ExcludedPoint> excluded;
};

/// Empirical rate exponent: OLS of log(gap) on log(H - 1/2).
/// Nonpositive gaps, and with `gap_se` given gaps within 2 SE of zero, are
/// dropped and listed in `excluded`. Fewer than 2 survivors raise RankError.
[[nodiscard]] RateFit rate_exponent(std::span<const double> hurst_values, std::span<const double> gaps,
                                    std::span<const double> gap_se = {});

struct GapCell {
    double value = 0.0;   // estimated Laplace transform at (H, lambda)
    double gap = 0.0;     // reference - value
    double gap_se = 0.0;
};

struct GapTableRow {
    double hurst = 0.0;
    std::vector<GapCell> cells;  // one per lambda
};

/// Table of Laplace values and gaps Delta_H, rows by H, two columns per lambda.
struct GapTable {
    std::vector<double> lambdas;
    std::vector<GapTableRow> rows;

    [[nodiscard]] std::vector<std::string> header() const;
    [[nodiscard]] std::size_t column_count() const noexcept { return 1 + 2 * lambdas.size(); }
};

/// estimates[i][j] is the estimate for row i at lambda column j; reference[j]
/// the Brownian row. Missing cells raise UsageError naming each gap.
[[nodiscard]] GapTable assemble_gap_table(const std::vector<std::vector<std::optional<LaplaceEstimate>>>& estimates,
                                          const std::vector<LaplaceEstimate>& reference);

}  // namespace fracpass
