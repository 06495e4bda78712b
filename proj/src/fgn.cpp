#include "fracpass/fgn.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "fft.hpp"
#include "fracpass/error.hpp"

namespace fracpass {

double covariance_rh(Hurst h, double s, double t) {
    if (s < 0.0 || t < 0.0) {
        throw DomainError("covariance_rh: times must be nonnegative");
    }
    const double a = h.twice();
    return 0.5 * (std::pow(s, a) + std::pow(t, a) - std::pow(std::abs(t - s), a));
}

double fgn_autocovariance(Hurst h, std::size_t lag, double step) {
    if (!(step > 0.0)) {
        throw DomainError("fgn_autocovariance: step must be positive");
    }
    const double a = h.twice();
    const double k = static_cast<double>(lag);
    const double kernel = lag == 0 ? 2.0
                                   : std::pow(k + 1.0, a) - 2.0 * std::pow(k, a) + std::pow(k - 1.0, a);
    return 0.5 * std::pow(step, a) * kernel;
}

CirculantSpectrum::CirculantSpectrum(Hurst hurst, TimeGrid grid, std::vector<double> eigenvalues)
    : hurst_(hurst), grid_(grid), eigenvalues_(std::move(eigenvalues)) {
    const double size = static_cast<double>(eigenvalues_.size());
    amplitudes_.reserve(eigenvalues_.size());
    for (double ev : eigenvalues_) amplitudes_.push_back(std::sqrt(ev / size));
}

CirculantSpectrum circulant_spectrum(Hurst h, const TimeGrid& grid, double tolerance) {
    const std::size_t n = grid.steps();
    if (!is_power_of_two(n)) {
        throw ContractError("circulant sampler needs a power-of-two step count, got " + std::to_string(n));
    }
    std::vector<std::complex<double>> row(2 * n);
    for (std::size_t j = 0; j <= n; ++j) row[j] = fgn_autocovariance(h, j, grid.step());
    for (std::size_t j = 1; j < n; ++j) row[2 * n - j] = row[j];
    detail::fft_forward(row);

    std::vector<double> eigenvalues(2 * n);
    std::transform(row.begin(), row.end(), eigenvalues.begin(), [](auto z) { return z.real(); });
    const double largest = *std::max_element(eigenvalues.begin(), eigenvalues.end());
    const double smallest = *std::min_element(eigenvalues.begin(), eigenvalues.end());
    if (smallest < -tolerance * largest) {
        throw EmbeddingError(h.value(), n, smallest);
    }
    for (double& ev : eigenvalues) ev = std::max(ev, 0.0);
    return CirculantSpectrum(h, grid, std::move(eigenvalues));
}

std::pair<FgnBlock, FgnBlock> sample_fgn(const CirculantSpectrum& spectrum, CounterRng& rng) {
    const auto amplitudes = spectrum.amplitudes();
    const std::size_t size = amplitudes.size();
    const std::size_t n = size / 2;

    thread_local std::vector<std::complex<double>> work;
    work.resize(size);
    std::normal_distribution<double> normal;
    for (std::size_t k = 0; k < size; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        work[k] = amplitudes[k] * std::complex<double>(re, im);
    }
    detail::fft_forward(work);

    FgnBlock first{std::vector<double>(n), spectrum.grid(), spectrum.hurst()};
    FgnBlock second{std::vector<double>(n), spectrum.grid(), spectrum.hurst()};
    for (std::size_t j = 0; j < n; ++j) {
        first.increments[j] = work[j].real();
        second.increments[j] = work[j].imag();
    }
    return {std::move(first), std::move(second)};
}

std::pair<FgnBlock, FgnBlock> sample_fgn_block(const CirculantSpectrum& spectrum, std::uint64_t seed,
                                               std::uint64_t block_index) {
    CounterRng rng(seed, StreamTag::gaussian_block, block_index);
    return sample_fgn(spectrum, rng);
}

FbmPath fbm_path(const FgnBlock& block) {
    std::vector<double> values(block.increments.size() + 1);
    values[0] = 0.0;
    for (std::size_t n = 0; n < block.increments.size(); ++n) {
        values[n + 1] = values[n] + block.increments[n];
    }
    return FbmPath{std::move(values), block.grid, block.hurst};
}

FbmPath coarsen(const FbmPath& path, std::size_t factor) {
    TimeGrid grid = path.grid.coarsened(factor);
    std::vector<double> values(grid.steps() + 1);
    for (std::size_t n = 0; n < values.size(); ++n) values[n] = path.values[n * factor];
    return FbmPath{std::move(values), grid, path.hurst};
}

CholeskyOracle::CholeskyOracle(Hurst h, const TimeGrid& grid, std::size_t cap)
    : hurst_(h), grid_(grid) {
    const std::size_t n = grid.steps();
    if (n > cap) {
        throw ContractError("Cholesky oracle capped at " + std::to_string(cap) + " steps, got " +
                            std::to_string(n));
    }
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(h, k, grid.step());

    lower_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = gamma[i - j];
            for (std::size_t k = 0; k < j; ++k) sum -= lower_[i * n + k] * lower_[j * n + k];
            if (i == j) {
                if (!(sum > 0.0)) {
                    throw OracleError("fGn covariance not numerically positive definite at row " +
                                      std::to_string(i));
                }
                lower_[i * n + i] = std::sqrt(sum);
            } else {
                lower_[i * n + j] = sum / lower_[j * n + j];
            }
        }
    }
}

FbmPath CholeskyOracle::sample(CounterRng& rng) const {
    const std::size_t n = grid_.steps();
    std::normal_distribution<double> normal;
    std::vector<double> z(n);
    for (double& v : z) v = normal(rng);

    FgnBlock block{std::vector<double>(n), grid_, hurst_};
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k <= i; ++k) sum += lower_[i * n + k] * z[k];
        block.increments[i] = sum;
    }
    return fbm_path(block);
}

FbmPath cholesky_fbm(Hurst h, const TimeGrid& grid, CounterRng& rng, std::size_t cap) {
    return CholeskyOracle(h, grid, cap).sample(rng);
}

}  // namespace fracpass
