#include "fracpass/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "fracpass/error.hpp"

namespace fracpass::stats {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        correction_ += (sum_ - t) + x;
    } else {
        correction_ += (x - t) + sum_;
    }
    sum_ = t;
}

double chunked_sum(std::span<const double> values) {
    CompensatedSum total;
    for (std::size_t start = 0; start < values.size(); start += kReductionChunk) {
        const std::size_t stop = std::min(values.size(), start + kReductionChunk);
        CompensatedSum chunk;
        for (std::size_t i = start; i < stop; ++i) chunk.add(values[i]);
        total.merge(chunk);
    }
    return total.value();
}

MeanAndError mean_and_error(std::span<const double> values) {
    if (values.empty()) throw UsageError("mean_and_error: empty sample");
    const double n = static_cast<double>(values.size());
    MeanAndError out;
    out.mean = chunked_sum(values) / n;
    if (values.size() < 2) return out;
    std::vector<double> squares(values.size());
    std::transform(values.begin(), values.end(), squares.begin(),
                   [m = out.mean](double v) { return (v - m) * (v - m); });
    out.std_dev = std::sqrt(chunked_sum(squares) / (n - 1.0));
    out.std_error = out.std_dev / std::sqrt(n);
    return out;
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x, double mean, double sd) noexcept {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double kolmogorov_q(double x) noexcept {
    if (x <= 0.0) return 1.0;
    if (x < 0.2) return 1.0;  // series converges slowly; Q is 1 to double precision here
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double corrected_p(double d, double effective_n) {
    const double root = std::sqrt(effective_n);
    return kolmogorov_q((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw UsageError("ks_one_sample: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return {d, corrected_p(d, n)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw UsageError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return {d, corrected_p(d, na * nb / (na + nb))};
}

double chi_square_sf(double statistic, double dof) {
    if (dof <= 0.0) throw UsageError("chi_square_sf: dof must be positive");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square(std::span<const double> observed, std::span<const double> expected,
                           double min_expected, std::size_t fitted_parameters) {
    if (observed.size() != expected.size() || observed.empty()) {
        throw UsageError("chi_square: observed and expected must have equal nonzero length");
    }
    std::vector<double> pooled_obs, pooled_exp;
    double acc_obs = 0.0, acc_exp = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        acc_obs += observed[i];
        acc_exp += expected[i];
        if (acc_exp >= min_expected) {
            pooled_obs.push_back(acc_obs);
            pooled_exp.push_back(acc_exp);
            acc_obs = acc_exp = 0.0;
        }
    }
    if (acc_exp > 0.0 || acc_obs > 0.0) {
        if (pooled_exp.empty()) {
            pooled_obs.push_back(acc_obs);
            pooled_exp.push_back(acc_exp);
        } else {
            pooled_obs.back() += acc_obs;
            pooled_exp.back() += acc_exp;
        }
    }
    if (pooled_exp.size() < fitted_parameters + 2) {
        throw DataError("chi_square: too few bins after pooling");
    }
    ChiSquareResult out;
    for (std::size_t i = 0; i < pooled_exp.size(); ++i) {
        const double diff = pooled_obs[i] - pooled_exp[i];
        out.statistic += diff * diff / pooled_exp[i];
    }
    out.bins_used = pooled_exp.size();
    out.dof = pooled_exp.size() - 1 - fitted_parameters;
    out.p_value = chi_square_sf(out.statistic, static_cast<double>(out.dof));
    return out;
}

}  // namespace fracpass::stats
