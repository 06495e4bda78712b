#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracpass::stats {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.correction_);
    }
    [[nodiscard]] double value() const noexcept { return sum_ + correction_; }

private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

inline constexpr std::size_t kReductionChunk = 4096;

/// Sum reduced chunk by chunk (chunk index ascending), each chunk with
/// compensated summation. The result does not depend on how the values
/// were produced, only on their order.
[[nodiscard]] double chunked_sum(std::span<const double> values);

struct MeanAndError {
    double mean = 0.0;
    double std_dev = 0.0;    // sample standard deviation (n - 1)
    double std_error = 0.0;  // std_dev / sqrt(n)
};

[[nodiscard]] MeanAndError mean_and_error(std::span<const double> values);

[[nodiscard]] double normal_cdf(double x) noexcept;
[[nodiscard]] double normal_pdf(double x, double mean = 0.0, double sd = 1.0) noexcept;

/// Asymptotic Kolmogorov survival function Q(x) = 2 sum (-1)^{k-1} exp(-2 k^2 x^2).
[[nodiscard]] double kolmogorov_q(double x) noexcept;

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// One-sample KS test against a continuous CDF (Stephens' small-sample correction).
[[nodiscard]] KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample KS test.
[[nodiscard]] KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    std::size_t bins_used = 0;
};

/// Pearson chi-square of observed counts against expected counts. Adjacent
/// bins are pooled left to right until each pooled expectation reaches
/// `min_expected`; dof = pooled bins - 1 - `fitted_parameters`.
[[nodiscard]] ChiSquareResult chi_square(std::span<const double> observed, std::span<const double> expected,
                                         double min_expected = 5.0, std::size_t fitted_parameters = 0);

/// Upper tail of the chi-square distribution.
[[nodiscard]] double chi_square_sf(double statistic, double dof);

}  // namespace fracpass::stats
