#pragma once

#include <complex>
#include <span>

namespace fracpass::detail {

/// In-place forward DFT, X_k = sum_j x_j exp(-2 pi i jk / n), backed by FFTW.
/// Plans are built once per size with FFTW_ESTIMATE so the arithmetic, and
/// therefore every output bit, is identical across runs and threads.
void fft_forward(std::span<std::complex<double>> data);

}  // namespace fracpass::detail
