#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracpass/estimate.hpp"
#include "fracpass/fgn.hpp"
#include "fracpass/passage.hpp"
#include "fracpass/sde.hpp"

namespace fracpass {

enum class EstimatorChoice { simple, bridge, both };

[[nodiscard]] const char* to_string(EstimatorChoice choice) noexcept;
[[nodiscard]] EstimatorChoice parse_estimator_choice(const std::string& text);

/// Flat parameter set shared by every subcommand.
struct RunConfig {
    std::uint64_t seed = 20240517;
    double horizon = 20.0;
    std::size_t steps = std::size_t{1} << 14;
    std::size_t samples = 10000;
    std::vector<double> hurst_list{0.5, 0.51, 0.52, 0.54, 0.6};
    std::vector<double> lambda_list{1.0, 2.0, 3.0, 4.0};
    double x0 = 0.0;
    double threshold = 1.0;
    EstimatorChoice estimator = EstimatorChoice::both;
    std::string drift = "zero";
    std::string diffusion = "one";
    std::filesystem::path output_dir = ".";
    unsigned workers = 1;
    bool paper_scale = false;

    // rate
    std::size_t line_samples = 100;
    // density
    std::size_t density_bins = 200;
    double density_upper = 10.0;
    // conjecture
    double eta = 0.1;
    double p = 2.5;
    std::vector<double> r_list{5.0, 10.0, 20.0};

    [[nodiscard]] TimeGrid grid() const { return TimeGrid(horizon, steps); }
    [[nodiscard]] std::vector<EstimatorKind> estimators() const;
};

inline constexpr std::size_t kPaperSteps = std::size_t{1} << 16;
inline constexpr std::size_t kPaperSamples = 100000;

/// Switches steps and samples to the published scale.
void apply_paper_scale(RunConfig& config);

/// Throws ConfigError on the first violated invariant.
void validate(const RunConfig& config);

/// Turns a sampled fBm path into the reduced (unit-diffusion) process whose
/// passage over `reduced_threshold` is equivalent to X reaching `threshold`.
class PathModel {
public:
    PathModel(const Coefficients& coefficients, double x0, double threshold);

    [[nodiscard]] static PathModel from_config(const RunConfig& config);

    [[nodiscard]] std::vector<double> reduced_values(const FbmPath& path) const;
    [[nodiscard]] double reduced_threshold() const noexcept { return reduced_threshold_; }
    [[nodiscard]] const LampertiMap& lamperti() const noexcept { return map_; }
    /// Closed-form Brownian Laplace transform when the model is X = x0 + s B.
    [[nodiscard]] std::optional<double> brownian_reference(double lambda) const;

private:
    Coefficients coefficients_;
    LampertiMap map_;
    double reduced_x0_;
    double reduced_threshold_;
};

/// One passage detector applied to every simulated path.
struct Detector {
    EstimatorKind kind = EstimatorKind::simple;
    std::size_t coarsening = 1;  // evaluate on every `coarsening`-th grid point
};

/// Simulates `samples` paths of fBm on `grid` (block b yields paths 2b and
/// 2b+1) and applies each detector. result[d][m] is detector d on path m.
/// Identical for any worker count.
[[nodiscard]] std::vector<std::vector<PassageOutcome>> simulate_passages(const PathModel& model, Hurst h,
                                                                        const TimeGrid& grid, std::size_t samples,
                                                                        std::uint64_t seed,
                                                                        std::span<const Detector> detectors,
                                                                        unsigned workers = 1);

}  // namespace fracpass
