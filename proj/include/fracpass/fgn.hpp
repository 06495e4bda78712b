#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fracpass/rng.hpp"
#include "fracpass/types.hpp"

namespace fracpass {

/// fBm covariance R_H(s, t) = (s^2H + t^2H - |t - s|^2H) / 2.
[[nodiscard]] double covariance_rh(Hurst h, double s, double t);

/// Autocovariance at `lag` of the increments of fBm on a grid with spacing
/// `step`: (step^2H / 2) (|k+1|^2H - 2|k|^2H + |k-1|^2H).
[[nodiscard]] double fgn_autocovariance(Hurst h, std::size_t lag, double step);

/// N consecutive increments B_{(n+1)step} - B_{n step}.
struct FgnBlock {
    std::vector<double> increments;
    TimeGrid grid;
    Hurst hurst;
};

/// fBm sampled on a grid; values[0] == 0 and values.size() == steps + 1.
struct FbmPath {
    std::vector<double> values;
    TimeGrid grid;
    Hurst hurst;
};

/// Eigenvalues of the 2N x 2N circulant matrix whose first row wraps the
/// fGn autocovariance (gamma(0), ..., gamma(N), gamma(N-1), ..., gamma(1)).
class CirculantSpectrum {
public:
    CirculantSpectrum(Hurst hurst, TimeGrid grid, std::vector<double> eigenvalues);

    [[nodiscard]] Hurst hurst() const noexcept { return hurst_; }
    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
    /// sqrt(eigenvalue / 2N), the per-frequency amplitude used by the sampler.
    [[nodiscard]] std::span<const double> amplitudes() const noexcept { return amplitudes_; }

private:
    Hurst hurst_;
    TimeGrid grid_;
    std::vector<double> eigenvalues_;
    std::vector<double> amplitudes_;
};

inline constexpr double kEigenvalueTolerance = 1e-12;

/// Builds the circulant spectrum for N = grid.steps() (a power of two).
/// Eigenvalues in [-tol * max, 0) are clamped to zero; anything lower
/// raises EmbeddingError.
[[nodiscard]] CirculantSpectrum circulant_spectrum(Hurst h, const TimeGrid& grid,
                                                   double tolerance = kEigenvalueTolerance);

/// Draws two independent exact fGn blocks from one complex FFT. The result
/// depends only on the spectrum and the generator state.
[[nodiscard]] std::pair<FgnBlock, FgnBlock> sample_fgn(const CirculantSpectrum& spectrum, CounterRng& rng);

/// sample_fgn with the generator for block `block_index` of `seed`. Paths
/// 2*block_index and 2*block_index + 1 of a Monte Carlo run come from here.
[[nodiscard]] std::pair<FgnBlock, FgnBlock> sample_fgn_block(const CirculantSpectrum& spectrum,
                                                             std::uint64_t seed, std::uint64_t block_index);

/// Prefix sum of the increments.
[[nodiscard]] FbmPath fbm_path(const FgnBlock& block);

/// Keeps every `factor`-th grid value; the coupled coarse path of a refinement study.
[[nodiscard]] FbmPath coarsen(const FbmPath& path, std::size_t factor);

inline constexpr std::size_t kCholeskyCap = std::size_t{1} << 11;

/// Exact O(N^3) oracle: lower Cholesky factor of the N x N fGn covariance.
class CholeskyOracle {
public:
    CholeskyOracle(Hurst h, const TimeGrid& grid, std::size_t cap = kCholeskyCap);

    [[nodiscard]] FbmPath sample(CounterRng& rng) const;

private:
    Hurst hurst_;
    TimeGrid grid_;
    std::vector<double> lower_;  // row-major packed N x N
};

/// One Cholesky sample; factorises on every call, so prefer CholeskyOracle in loops.
[[nodiscard]] FbmPath cholesky_fbm(Hurst h, const TimeGrid& grid, CounterRng& rng,
                                   std::size_t cap = kCholeskyCap);

}  // namespace fracpass
