#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fracpass/analysis.hpp"
#include "fracpass/estimate.hpp"
#include "fracpass/experiment.hpp"

namespace fracpass {

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct StudyRow {
    double hurst = 0.5;
    double lambda = 1.0;
    LaplaceEstimate estimate;
    double delta = 0.0;  // Brownian reference minus estimate; NaN without a reference
    double delta_se = 0.0;
};

/// Laplace estimates for every (H, lambda, estimator) of a configuration.
/// All H share the same seed, hence the same Gaussian draws, so the gaps
/// Delta_H are estimated from paired differences against the H = 1/2 row.
/// Without an H = 1/2 row the closed-form Brownian value is the reference.
struct LaplaceStudy {
    std::vector<StudyRow> rows;

    [[nodiscard]] const StudyRow& at(double hurst, double lambda, EstimatorKind kind) const;
};

[[nodiscard]] LaplaceStudy run_laplace_study(const RunConfig& config);

/// Writes laplace.csv; returns the file path.
std::filesystem::path write_laplace_csv(const LaplaceStudy& study, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// bridge-compare
// ---------------------------------------------------------------------------

/// One line of the estimator comparison. For H = 1/2 (pure fBm) the
/// reference is the closed form, `simple` uses N steps and `bridge` N/2.
/// Otherwise the reference is the simple estimator at N steps and both
/// `simple` and `bridge` use N/2 steps of the same paths.
struct BridgeCompareRow {
    double hurst = 0.5;
    double lambda = 1.0;
    double reference = 0.0;
    LaplaceEstimate simple;
    double simple_err_pct = 0.0;
    LaplaceEstimate bridge;
    double bridge_err_pct = 0.0;
};

[[nodiscard]] std::vector<BridgeCompareRow> run_bridge_compare(const RunConfig& config);
std::filesystem::path write_bridge_compare_csv(const std::vector<BridgeCompareRow>& rows,
                                               const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// rate
// ---------------------------------------------------------------------------

struct RateRow {
    double lambda = 1.0;
    RegressionFit linear;           // Delta_H against H - 1/2
    std::optional<RateFit> loglog;  // log Delta_H against log(H - 1/2)
    std::vector<double> h_minus_half;
    std::vector<double> gaps;
};

/// Requires H = 1/2 and at least three larger H values in the list.
void check_rate_config(const RunConfig& config);

/// Uses the simple estimator unless the configuration asks only for the bridge.
[[nodiscard]] std::vector<RateRow> run_rate(const RunConfig& config, const LaplaceStudy& study);
std::vector<std::filesystem::path> write_rate_csv(const std::vector<RateRow>& rows, std::size_t line_samples,
                                                  const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

struct DensityResult {
    double hurst = 0.5;
    DensityHistogram histogram;
};

/// Hit-time histograms, simple detector when estimator=simple and the bridge otherwise.
[[nodiscard]] std::vector<DensityResult> run_density(const RunConfig& config);
std::vector<std::filesystem::path> write_density_csv(const std::vector<DensityResult>& results,
                                                     const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// conjecture
// ---------------------------------------------------------------------------

struct ConjecturePoint {
    double hurst = 0.5;
    double r = 0.0;
    MomentEstimate moment;
};

struct ConjectureTrend {
    double hurst = 0.5;
    double slope = 0.0;
    double slope_se = 0.0;
};

struct ConjectureReport {
    std::vector<ConjecturePoint> points;
    std::vector<ConjectureTrend> trends;
};

/// Each r gets its own derived seed so the trend slope SE can be propagated
/// from independent estimates.
[[nodiscard]] ConjectureReport run_conjecture(const RunConfig& config);

/// OLS slope of ys on xs with SE propagated from independent per-point SEs.
[[nodiscard]] ConjectureTrend trend_slope(std::span<const double> xs, std::span<const MomentEstimate> ys);

std::vector<std::filesystem::path> write_conjecture_csv(const ConjectureReport& report,
                                                        const std::filesystem::path& dir);

// ---------------------------------------------------------------------------

/// run_manifest.json with the resolved configuration.
std::filesystem::path write_manifest(const RunConfig& config, const std::string& command,
                                     const std::filesystem::path& dir);

/// Formats with 17 significant digits.
[[nodiscard]] std::string format_number(double value);

/// "0.5" -> "density_H0.5.csv".
[[nodiscard]] std::string density_file_name(double hurst);

}  // namespace fracpass
