#include "fracpass/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracpass/error.hpp"
#include "fracpass/parallel.hpp"
#include "fracpass/theory.hpp"

namespace fracpass {

const char* to_string(EstimatorChoice choice) noexcept {
    switch (choice) {
        case EstimatorChoice::simple: return "simple";
        case EstimatorChoice::bridge: return "bridge";
        case EstimatorChoice::both: return "both";
    }
    return "both";
}

EstimatorChoice parse_estimator_choice(const std::string& text) {
    if (text == "simple") return EstimatorChoice::simple;
    if (text == "bridge") return EstimatorChoice::bridge;
    if (text == "both") return EstimatorChoice::both;
    throw ConfigError("estimator must be simple, bridge or both, got '" + text + "'");
}

std::vector<EstimatorKind> RunConfig::estimators() const {
    switch (estimator) {
        case EstimatorChoice::simple: return {EstimatorKind::simple};
        case EstimatorChoice::bridge: return {EstimatorKind::bridge};
        case EstimatorChoice::both: return {EstimatorKind::simple, EstimatorKind::bridge};
    }
    return {};
}

void apply_paper_scale(RunConfig& config) {
    config.steps = kPaperSteps;
    config.samples = kPaperSamples;
    config.paper_scale = true;
}

void validate(const RunConfig& config) {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) fail("horizon must be positive");
    if (config.steps < 2 || !is_power_of_two(config.steps)) {
        fail("steps must be a power of two >= 2, got " + std::to_string(config.steps));
    }
    if (config.samples < 100) fail("samples must be at least 100, got " + std::to_string(config.samples));
    if (!(config.x0 < config.threshold)) fail("x0 must lie strictly below the threshold");
    if (config.hurst_list.empty()) fail("hurst list is empty");
    for (double h : config.hurst_list) {
        if (!(h >= 0.5 && h < 1.0)) fail("every H must lie in [0.5, 1), got " + std::to_string(h));
    }
    if (config.lambda_list.empty()) fail("lambda list is empty");
    for (double l : config.lambda_list) {
        if (!(l > 0.0)) fail("every lambda must be positive, got " + std::to_string(l));
    }
    if (config.workers == 0) fail("workers must be at least 1");
    if (config.density_bins == 0) fail("density bins must be positive");
    if (!(config.density_upper > 0.0)) fail("density upper edge must be positive");
    if (config.line_samples < 2) fail("line samples must be at least 2");
    (void)parse_coefficients(config.drift, config.diffusion);
}

namespace {

Interval lamperti_range(double x0, double threshold) {
    const double span = threshold - x0;
    return {x0 - 50.0 * std::max(span, 1.0), threshold + 5.0 * std::max(span, 1.0)};
}

}  // namespace

PathModel::PathModel(const Coefficients& coefficients, double x0, double threshold)
    : coefficients_(coefficients),
      map_(build_lamperti(coefficients, x0, lamperti_range(x0, threshold))),
      reduced_x0_(0.0),
      reduced_threshold_(threshold_transform(map_, threshold)) {
    if (!(x0 < threshold)) throw ConfigError("x0 must lie strictly below the threshold");
}

PathModel PathModel::from_config(const RunConfig& config) {
    return PathModel(parse_coefficients(config.drift, config.diffusion), config.x0, config.threshold);
}

std::vector<double> PathModel::reduced_values(const FbmPath& path) const {
    auto drift = [this](double y) { return map_.reduced_drift(y); };
    return euler_solve(drift, reduced_x0_, path).values;
}

std::optional<double> PathModel::brownian_reference(double lambda) const {
    if (!coefficients_.zero_drift || !coefficients_.constant_diffusion) return std::nullopt;
    return theory::laplace_bm(lambda, 0.0, reduced_threshold_);
}

std::vector<std::vector<PassageOutcome>> simulate_passages(const PathModel& model, Hurst h, const TimeGrid& grid,
                                                           std::size_t samples, std::uint64_t seed,
                                                           std::span<const Detector> detectors, unsigned workers) {
    if (samples == 0) throw UsageError("simulate_passages: no samples requested");
    for (const auto& d : detectors) {
        if (d.coarsening == 0 || grid.steps() % d.coarsening != 0 || grid.steps() / d.coarsening < 2) {
            throw ConfigError("detector coarsening " + std::to_string(d.coarsening) + " incompatible with " +
                              std::to_string(grid.steps()) + " steps");
        }
    }
    const auto spectrum = circulant_spectrum(h, grid);
    const double threshold = model.reduced_threshold();

    std::vector<std::vector<PassageOutcome>> outcomes(detectors.size(), std::vector<PassageOutcome>(samples));
    const std::size_t blocks = (samples + 1) / 2;
    constexpr std::size_t kBlocksPerChunk = 16;
    const std::size_t chunks = (blocks + kBlocksPerChunk - 1) / kBlocksPerChunk;

    parallel_for_chunks(chunks, workers, [&](std::size_t chunk) {
        const std::size_t stop = std::min(blocks, (chunk + 1) * kBlocksPerChunk);
        for (std::size_t b = chunk * kBlocksPerChunk; b < stop; ++b) {
            auto pair = sample_fgn_block(spectrum, seed, b);
            for (std::size_t k = 0; k < 2; ++k) {
                const std::size_t m = 2 * b + k;
                if (m >= samples) break;
                const FbmPath path = fbm_path(k == 0 ? pair.first : pair.second);
                const CounterRng uniforms(seed, StreamTag::bridge_uniform, m);
                for (std::size_t d = 0; d < detectors.size(); ++d) {
                    const Detector& det = detectors[d];
                    const FbmPath view = det.coarsening == 1 ? path : coarsen(path, det.coarsening);
                    const auto values = model.reduced_values(view);
                    outcomes[d][m] = det.kind == EstimatorKind::simple
                                         ? first_passage(values, threshold, view.grid)
                                         : first_passage_bridge(values, threshold, view.grid, h, uniforms);
                }
            }
        }
    });
    return outcomes;
}

}  // namespace fracpass
