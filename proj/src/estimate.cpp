#include "fracpass/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracpass/error.hpp"
#include "fracpass/parallel.hpp"
#include "fracpass/stats.hpp"

namespace fracpass {

const char* to_string(EstimatorKind kind) noexcept {
    return kind == EstimatorKind::simple ? "simple" : "bridge";
}

namespace {

double discounted(const PassageOutcome& outcome, double lambda) {
    return outcome.is_hit() ? std::exp(-lambda * outcome.hit_time) : 0.0;
}

}  // namespace

LaplaceEstimate laplace_estimator(std::span<const PassageOutcome> outcomes, double lambda, Hurst hurst,
                                  EstimatorKind kind) {
    if (outcomes.empty()) throw UsageError("laplace_estimator: no outcomes");
    if (!(lambda > 0.0)) throw DomainError("laplace_estimator: lambda must be positive");

    std::vector<double> contributions(outcomes.size());
    std::size_t censored = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        contributions[i] = discounted(outcomes[i], lambda);
        censored += outcomes[i].is_hit() ? 0 : 1;
    }
    const auto summary = stats::mean_and_error(contributions);

    LaplaceEstimate est;
    est.value = std::clamp(summary.mean, 0.0, 1.0);
    est.std_error = summary.std_error;
    est.lambda = lambda;
    est.hurst = hurst;
    est.samples = outcomes.size();
    est.censored = censored;
    est.estimator = kind;
    return est;
}

GapEstimate gap_estimate(const LaplaceEstimate& estimate, const LaplaceEstimate& reference) {
    if (estimate.lambda != reference.lambda) {
        throw UsageError("gap_estimate: lambda mismatch (" + std::to_string(estimate.lambda) + " vs " +
                         std::to_string(reference.lambda) + ")");
    }
    return {reference.value - estimate.value,
            std::hypot(estimate.std_error, reference.std_error)};
}

GapEstimate gap_estimate(const LaplaceEstimate& estimate, double reference) {
    return {reference - estimate.value, estimate.std_error};
}

GapEstimate paired_gap(std::span<const PassageOutcome> estimate, std::span<const PassageOutcome> reference,
                       double lambda) {
    if (estimate.size() != reference.size() || estimate.empty()) {
        throw UsageError("paired_gap: outcome lists must be nonempty and of equal length");
    }
    std::vector<double> differences(estimate.size());
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        differences[i] = discounted(reference[i], lambda) - discounted(estimate[i], lambda);
    }
    const auto summary = stats::mean_and_error(differences);
    return {summary.mean, summary.std_error};
}

DensityHistogram density_histogram(std::span<const PassageOutcome> outcomes, const BinSpec& bins) {
    if (bins.count == 0 || !(bins.upper > bins.lower)) {
        throw UsageError("density_histogram: need at least one bin on a nonempty interval");
    }
    DensityHistogram hist;
    hist.samples = outcomes.size();
    hist.bin_edges.resize(bins.count + 1);
    const double width = (bins.upper - bins.lower) / static_cast<double>(bins.count);
    for (std::size_t i = 0; i <= bins.count; ++i) {
        hist.bin_edges[i] = bins.lower + width * static_cast<double>(i);
    }
    hist.bin_edges.back() = bins.upper;

    std::vector<std::size_t> counts(bins.count, 0);
    for (const auto& outcome : outcomes) {
        if (!outcome.is_hit()) {
            ++hist.censored;
            continue;
        }
        ++hist.hits;
        const double t = outcome.hit_time;
        if (t < bins.lower || t >= bins.upper) {
            ++hist.overflow;
            continue;
        }
        auto bin = static_cast<std::size_t>((t - bins.lower) / width);
        bin = std::min(bin, bins.count - 1);
        // Guard against the division landing one bin off at an edge.
        while (bin > 0 && t < hist.bin_edges[bin]) --bin;
        while (bin + 1 < bins.count && t >= hist.bin_edges[bin + 1]) ++bin;
        ++counts[bin];
    }
    if (hist.hits == 0) throw DataError("density_histogram: no hit outcomes");

    const double total = static_cast<double>(hist.samples);
    hist.mass.resize(bins.count);
    for (std::size_t i = 0; i < bins.count; ++i) {
        hist.mass[i] = static_cast<double>(counts[i]) / (total * hist.bin_width(i));
    }
    return hist;
}

SupremumStats supremum_stats(const FbmPath& path, double r) {
    const TimeGrid& grid = path.grid;
    if (!(r >= 0.0) || r > grid.horizon() * (1.0 + 1e-12)) {
        throw DomainError("supremum_stats: r must lie in [0, horizon]");
    }
    const auto last = std::min(grid.steps(), static_cast<std::size_t>(std::floor(r / grid.step() + 1e-9)));
    std::size_t best = 0;
    for (std::size_t n = 1; n <= last; ++n) {
        if (path.values[n] > path.values[best]) best = n;
    }
    return {r, path.values[best], grid.time(best)};
}

MomentEstimate conjecture_moment(Hurst h, double eta, double p, double r, const TimeGrid& grid,
                                 std::size_t samples, std::uint64_t seed, unsigned workers) {
    if (!(p > 2.0 && p < 3.0)) throw DomainError("conjecture_moment: p must lie in (2, 3)");
    if (!(eta > 0.0)) throw DomainError("conjecture_moment: eta must be positive");
    if (!(r >= 0.0) || r > grid.horizon()) throw DomainError("conjecture_moment: r must lie in [0, horizon]");
    if (samples < 2) throw UsageError("conjecture_moment: need at least 2 samples");

    const auto spectrum = circulant_spectrum(h, grid);
    const double level = 1.0 + eta;
    const double exponent = h.value() * p;
    const std::size_t blocks = (samples + 1) / 2;
    constexpr std::size_t kBlocksPerChunk = 16;
    const std::size_t chunks = (blocks + kBlocksPerChunk - 1) / kBlocksPerChunk;

    std::vector<double> contributions(samples);
    parallel_for_chunks(chunks, workers, [&](std::size_t chunk) {
        const std::size_t stop = std::min(blocks, (chunk + 1) * kBlocksPerChunk);
        for (std::size_t b = chunk * kBlocksPerChunk; b < stop; ++b) {
            auto [first, second] = sample_fgn_block(spectrum, seed, b);
            for (std::size_t k = 0; k < 2; ++k) {
                const std::size_t index = 2 * b + k;
                if (index >= samples) break;
                const auto stats = supremum_stats(fbm_path(k == 0 ? first : second), r);
                contributions[index] = stats.sup_value <= level ? std::pow(stats.argmax_time, exponent) : 0.0;
            }
        }
    });
    const auto summary = stats::mean_and_error(contributions);
    return {summary.mean, summary.std_error};
}

RegressionFit tail_exponent(std::span<const PassageOutcome> outcomes, std::span<const double> t_grid) {
    if (outcomes.empty()) throw DataError("tail_exponent: no outcomes");
    std::vector<double> hit_times;
    hit_times.reserve(outcomes.size());
    const double horizon = outcomes.front().horizon;
    for (const auto& o : outcomes) {
        if (o.is_hit()) hit_times.push_back(o.hit_time);
    }
    std::sort(hit_times.begin(), hit_times.end());
    const double total = static_cast<double>(outcomes.size());

    std::vector<double> log_t, log_survival;
    for (double t : t_grid) {
        if (!(t > 0.0) || t > horizon) throw DomainError("tail_exponent: t_grid must lie in (0, horizon]");
        // Paths that hit strictly before t are the only ones not surviving.
        const auto before = std::lower_bound(hit_times.begin(), hit_times.end(), t) - hit_times.begin();
        const double survival = (total - static_cast<double>(before)) / total;
        if (survival <= 0.0 || survival >= 1.0) continue;
        log_t.push_back(std::log(t));
        log_survival.push_back(std::log(survival));
    }
    if (log_t.size() < 2) throw DataError("tail_exponent: fewer than 2 usable survival estimates");
    return linear_fit(log_t, log_survival);
}

}  // namespace fracpass
