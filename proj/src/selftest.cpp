#include "fracpass/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracpass/error.hpp"
#include "fracpass/experiment.hpp"
#include "fracpass/parallel.hpp"
#include "fracpass/passage.hpp"
#include "fracpass/stats.hpp"
#include "fracpass/theory.hpp"

namespace fracpass {

double AutocovarianceCheck::max_abs_z() const {
    double worst = 0.0;
    for (double z : z_score) worst = std::max(worst, std::abs(z));
    return worst;
}

AutocovarianceCheck check_fgn_autocovariance(Hurst h, const TimeGrid& grid, std::size_t blocks,
                                             std::uint64_t seed, std::size_t max_lag,
                                             const AutocovarianceFunction& reference, unsigned workers) {
    if (blocks < 2) throw UsageError("check_fgn_autocovariance: need at least 2 blocks");
    if (max_lag >= grid.steps()) throw UsageError("check_fgn_autocovariance: lag exceeds block length");
    const auto spectrum = circulant_spectrum(h, grid);
    const std::size_t n = grid.steps();
    const std::size_t lags = max_lag + 1;

    // per_block[lag][block]
    std::vector<std::vector<double>> per_block(lags, std::vector<double>(blocks));
    const std::size_t ffts = (blocks + 1) / 2;
    constexpr std::size_t kPerChunk = 32;
    parallel_for_chunks((ffts + kPerChunk - 1) / kPerChunk, workers, [&](std::size_t chunk) {
        const std::size_t stop = std::min(ffts, (chunk + 1) * kPerChunk);
        for (std::size_t f = chunk * kPerChunk; f < stop; ++f) {
            const auto pair = sample_fgn_block(spectrum, seed, f);
            for (std::size_t k = 0; k < 2 && 2 * f + k < blocks; ++k) {
                const auto& x = (k == 0 ? pair.first : pair.second).increments;
                for (std::size_t lag = 0; lag < lags; ++lag) {
                    double sum = 0.0;
                    for (std::size_t i = 0; i + lag < n; ++i) sum += x[i] * x[i + lag];
                    per_block[lag][2 * f + k] = sum / static_cast<double>(n - lag);
                }
            }
        }
    });

    AutocovarianceCheck check;
    for (std::size_t lag = 0; lag < lags; ++lag) {
        const auto summary = stats::mean_and_error(per_block[lag]);
        const double expected = reference ? reference(h, lag, grid.step()) : fgn_autocovariance(h, lag, grid.step());
        check.sample.push_back(summary.mean);
        check.expected.push_back(expected);
        check.std_error.push_back(summary.std_error);
        check.z_score.push_back((summary.mean - expected) / summary.std_error);
    }
    return check;
}

std::vector<double> circulant_terminal_values(Hurst h, const TimeGrid& grid, std::size_t count, std::uint64_t seed) {
    const auto spectrum = circulant_spectrum(h, grid);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t b = 0; out.size() < count; ++b) {
        const auto pair = sample_fgn_block(spectrum, seed, b);
        out.push_back(fbm_path(pair.first).values.back());
        if (out.size() < count) out.push_back(fbm_path(pair.second).values.back());
    }
    return out;
}

std::vector<double> cholesky_terminal_values(Hurst h, const TimeGrid& grid, std::size_t count, std::uint64_t seed) {
    const CholeskyOracle oracle(h, grid);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        CounterRng rng(seed, StreamTag::cholesky_path, i);
        out[i] = oracle.sample(rng).values.back();
    }
    return out;
}

double pooled_lag1_correlation(Hurst h, const TimeGrid& grid, std::size_t blocks, std::uint64_t seed) {
    const auto spectrum = circulant_spectrum(h, grid);
    double cross = 0.0, square = 0.0;
    for (std::size_t f = 0; 2 * f < blocks; ++f) {
        const auto pair = sample_fgn_block(spectrum, seed, f);
        for (std::size_t k = 0; k < 2 && 2 * f + k < blocks; ++k) {
            const auto& x = (k == 0 ? pair.first : pair.second).increments;
            for (std::size_t i = 0; i < x.size(); ++i) {
                square += x[i] * x[i];
                if (i + 1 < x.size()) cross += x[i] * x[i + 1];
            }
        }
    }
    return cross / square;
}

namespace {

std::string describe(double value, const char* relation, double limit) {
    std::ostringstream out;
    out.precision(6);
    out << value << ' ' << relation << ' ' << limit;
    return out.str();
}

CheckResult covariance_check(const SelftestOptions& options, double hurst) {
    const TimeGrid grid(1.0, 256);
    const auto check =
        check_fgn_autocovariance(Hurst(hurst), grid, 4000, options.seed, 5, options.reference_autocovariance,
                                 options.workers);
    std::ostringstream name;
    name << "fgn autocovariance lags 0-5, H=" << hurst;
    return {name.str(), check.passed(), "max |z| " + describe(check.max_abs_z(), "<", 5.0)};
}

CheckResult ks_check(const SelftestOptions& options, double hurst) {
    const TimeGrid grid(1.0, 128);
    const Hurst h(hurst);
    const auto ks = stats::ks_two_sample(circulant_terminal_values(h, grid, 3000, options.seed),
                                         cholesky_terminal_values(h, grid, 3000, options.seed));
    std::ostringstream name;
    name << "circulant vs Cholesky KS on B_T, H=" << hurst;
    return {name.str(), ks.p_value > 0.01, "p " + describe(ks.p_value, ">", 0.01)};
}

CheckResult brownian_reduction_check(const SelftestOptions& options) {
    const TimeGrid grid(1.0, 256);
    const std::size_t blocks = 2000;
    const double rho = pooled_lag1_correlation(Hurst(0.5), grid, blocks, options.seed);
    const double limit = 5.0 / std::sqrt(static_cast<double>(blocks * grid.steps()));
    return {"H=0.5 increments uncorrelated at lag 1", std::abs(rho) < limit, "|rho| " + describe(std::abs(rho), "<", limit)};
}

CheckResult marginal_check(const SelftestOptions& options) {
    const TimeGrid grid(2.0, 128);
    const Hurst h(0.75);
    const double sd = std::pow(grid.horizon(), h.value());
    const auto values = circulant_terminal_values(h, grid, 4000, options.seed);
    const auto ks = stats::ks_one_sample(values, [sd](double x) { return stats::normal_cdf(x / sd); });
    return {"B_T ~ N(0, T^2H), H=0.75", ks.p_value > 0.01, "p " + describe(ks.p_value, ">", 0.01)};
}

CheckResult dominance_check(const SelftestOptions& options) {
    RunConfig config;
    const PathModel model = PathModel::from_config(config);
    const TimeGrid grid(20.0, 1024);
    const std::vector<Detector> detectors{{EstimatorKind::simple, 1}, {EstimatorKind::bridge, 1}};
    std::size_t violations = 0;
    for (double hv : {0.5, 0.6}) {
        const auto outcomes = simulate_passages(model, Hurst(hv), grid, 400, options.seed, detectors, options.workers);
        for (std::size_t m = 0; m < outcomes[0].size(); ++m) {
            const auto& simple = outcomes[0][m];
            const auto& bridge = outcomes[1][m];
            if (simple.is_hit() && (!bridge.is_hit() || bridge.hit_index > simple.hit_index)) ++violations;
        }
    }
    return {"bridge never hits later than grid detection", violations == 0,
            std::to_string(violations) + " violations of 800 paths"};
}

CheckResult determinism_check(const SelftestOptions& options) {
    const auto spectrum = circulant_spectrum(Hurst(0.7), TimeGrid(1.0, 64));
    const auto a = sample_fgn_block(spectrum, options.seed, 3);
    const auto b = sample_fgn_block(spectrum, options.seed, 3);
    const bool same = a.first.increments == b.first.increments && a.second.increments == b.second.increments;
    return {"same seed and block give identical increments", same, same ? "bit-identical" : "differs"};
}

CheckResult theory_check() {
    std::vector<std::string> failures;
    const double table[] = {0.2431, 0.1353, 0.0863, 0.0591};
    for (int l = 1; l <= 4; ++l) {
        if (std::abs(theory::laplace_bm(l) - table[l - 1]) > 5e-5) failures.push_back("laplace_bm");
    }
    if (theory::s_function(1.0, Hurst(0.8)) != 1.0) failures.push_back("S(1)");
    if (std::abs(theory::t_of_lambda(2.0, Hurst(0.7)) - 2.0) > 1e-15) failures.push_back("T(2)");
    for (double x : {-1.0, 0.0, 0.3, 2.0}) {
        const double env = theory::density_envelope(1.0, x, 0.0, Hurst(0.5));
        if (std::abs(env - stats::normal_pdf(x)) > 1e-14) failures.push_back("density envelope");
    }
    std::string detail = failures.empty() ? "all identities hold" : "failed:";
    for (const auto& f : failures) detail += " " + f;
    return {"closed-form identities", failures.empty(), detail};
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
    std::vector<CheckResult> results;
    for (double h : {0.5, 0.6, 0.75, 0.9}) results.push_back(covariance_check(options, h));
    for (double h : {0.6, 0.8}) results.push_back(ks_check(options, h));
    results.push_back(brownian_reduction_check(options));
    results.push_back(marginal_check(options));
    results.push_back(dominance_check(options));
    results.push_back(determinism_check(options));
    results.push_back(theory_check());
    return results;
}

}  // namespace fracpass
