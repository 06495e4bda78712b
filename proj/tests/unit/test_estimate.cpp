#include <cmath>

#include "doctest.h"
#include "fracpass/error.hpp"
#include "fracpass/estimate.hpp"
#include "fracpass/theory.hpp"

using namespace fracpass;

namespace {

const TimeGrid kGrid(20.0, 2000);

PassageOutcome hit_at(double t) {
    return PassageOutcome{PassageOutcome::Kind::hit, static_cast<std::size_t>(std::llround(t / kGrid.step())), t,
                          kGrid.horizon()};
}

}  // namespace

TEST_CASE("laplace_estimator trivial cases") {
    const std::vector<PassageOutcome> at_zero(10, PassageOutcome::hit(0, kGrid));
    const auto one = laplace_estimator(at_zero, 1.0);
    CHECK(one.value == 1.0);
    CHECK(one.std_error == 0.0);
    CHECK(one.censored == 0);
    const std::vector<PassageOutcome> none(10, PassageOutcome::censored(kGrid));
    const auto zero = laplace_estimator(none, 2.0, Hurst(0.6), EstimatorKind::bridge);
    CHECK(zero.value == 0.0);
    CHECK(zero.censored == 10);
    CHECK(zero.samples == 10);
    CHECK(zero.estimator == EstimatorKind::bridge);
    CHECK(zero.hurst.value() == 0.6);
}

TEST_CASE("laplace_estimator mean and standard error") {
    const std::vector<PassageOutcome> outs{hit_at(1.0), hit_at(2.0), PassageOutcome::censored(kGrid), hit_at(0.5)};
    const auto est = laplace_estimator(outs, 1.5);
    const std::vector<double> contrib{std::exp(-1.5), std::exp(-3.0), 0.0, std::exp(-0.75)};
    double mean = 0.0;
    for (double c : contrib) mean += c / 4.0;
    double ss = 0.0;
    for (double c : contrib) ss += (c - mean) * (c - mean);
    CHECK(est.value == doctest::Approx(mean).epsilon(1e-14));
    CHECK(est.std_error == doctest::Approx(std::sqrt(ss / 3.0) / 2.0).epsilon(1e-12));
    CHECK(est.censored == 1);
}

TEST_CASE("laplace_estimator errors") {
    CHECK_THROWS_AS((void)laplace_estimator({}, 1.0), UsageError);
    const std::vector<PassageOutcome> outs{hit_at(1.0)};
    CHECK_THROWS_AS((void)laplace_estimator(outs, 0.0), DomainError);
}

TEST_CASE("gap_estimate") {
    LaplaceEstimate a;
    a.value = 0.2;
    a.std_error = 0.003;
    a.lambda = 1.0;
    LaplaceEstimate ref = a;
    ref.value = 0.25;
    ref.std_error = 0.004;
    const auto g = gap_estimate(a, ref);
    CHECK(g.gap == doctest::Approx(0.05));
    CHECK(g.gap_se == doctest::Approx(0.005));
    CHECK(gap_estimate(a, a).gap == 0.0);
    const auto exact = gap_estimate(a, 0.2431);
    CHECK(exact.gap == doctest::Approx(0.0431));
    CHECK(exact.gap_se == doctest::Approx(0.003));
    ref.lambda = 2.0;
    CHECK_THROWS_AS((void)gap_estimate(a, ref), UsageError);
}

TEST_CASE("paired_gap uses per-path differences") {
    const std::vector<PassageOutcome> est{hit_at(2.0), hit_at(3.0), hit_at(1.0)};
    const std::vector<PassageOutcome> ref{hit_at(1.0), hit_at(2.0), hit_at(1.0)};
    const auto g = paired_gap(est, ref, 1.0);
    const std::vector<double> d{std::exp(-1.0) - std::exp(-2.0), std::exp(-2.0) - std::exp(-3.0), 0.0};
    const double mean = (d[0] + d[1] + d[2]) / 3.0;
    double ss = 0.0;
    for (double x : d) ss += (x - mean) * (x - mean);
    CHECK(g.gap == doctest::Approx(mean).epsilon(1e-14));
    CHECK(g.gap_se == doctest::Approx(std::sqrt(ss / 2.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS((void)paired_gap(est, std::vector<PassageOutcome>{hit_at(1.0)}, 1.0), UsageError);
}

TEST_CASE("density_histogram of a single hit") {
    const std::vector<PassageOutcome> outs{hit_at(1.0)};
    const auto h = density_histogram(outs, BinSpec{0.0, 2.0, 1});
    REQUIRE(h.mass.size() == 1);
    CHECK(h.mass[0] == doctest::Approx(0.5));
    CHECK(h.hits == 1);
}

TEST_CASE("density_histogram integrates to the hit fraction") {
    std::vector<PassageOutcome> outs;
    for (int i = 0; i < 1000; ++i) {
        if (i % 7 == 0) outs.push_back(PassageOutcome::censored(kGrid));
        else outs.push_back(hit_at(0.013 * i));
    }
    const auto h = density_histogram(outs, BinSpec{0.0, 10.0, 200});
    double integral = 0.0;
    for (std::size_t i = 0; i < h.mass.size(); ++i) integral += h.mass[i] * h.bin_width(i);
    const double inside = double(h.hits - h.overflow) / double(h.samples);
    CHECK(std::abs(integral - inside) < 1e-12);
    CHECK(integral + double(h.overflow) / double(h.samples) ==
          doctest::Approx(double(h.hits) / double(h.samples)).epsilon(1e-12));
    CHECK(h.censored == 143);
    CHECK(h.samples == 1000);
    CHECK(h.overflow > 0);
}

TEST_CASE("density_histogram needs a hit") {
    const std::vector<PassageOutcome> none(5, PassageOutcome::censored(kGrid));
    CHECK_THROWS_AS((void)density_histogram(none, BinSpec{}), DataError);
}

TEST_CASE("supremum_stats examples") {
    const TimeGrid grid(2.0, 2);
    const auto s = supremum_stats(FbmPath{{0.0, 2.0, 1.0}, grid, Hurst(0.6)}, 2.0);
    CHECK(s.sup_value == 2.0);
    CHECK(s.argmax_time == 1.0);
    const auto z = supremum_stats(FbmPath{{0.0, 0.0, 0.0}, grid, Hurst(0.6)}, 2.0);
    CHECK(z.sup_value == 0.0);
    CHECK(z.argmax_time == 0.0);
    const TimeGrid g4(4.0, 4);
    const auto m = supremum_stats(FbmPath{{0.0, 1.0, 2.0, 3.0, 4.0}, g4, Hurst(0.6)}, 3.0);
    CHECK(m.sup_value == 3.0);
    CHECK(m.argmax_time == 3.0);
    CHECK_THROWS_AS((void)supremum_stats(FbmPath{{0.0, 0.0, 0.0}, grid, Hurst(0.6)}, 3.0), DomainError);
}

TEST_CASE("conjecture_moment is small near r = 0 and respects preconditions") {
    const TimeGrid grid(1.0, 256);
    const auto tiny = conjecture_moment(Hurst(0.6), 0.1, 2.5, 1.0 / 256, grid, 200, 1);
    CHECK(tiny.value <= std::pow(1.0 / 256, 0.6 * 2.5) + 1e-15);
    const auto full = conjecture_moment(Hurst(0.6), 0.1, 2.5, 1.0, grid, 400, 1);
    CHECK(full.value > tiny.value);
    CHECK(full.value <= 1.0);
    CHECK_THROWS_AS((void)conjecture_moment(Hurst(0.6), 0.1, 3.5, 1.0, grid, 10, 1), DomainError);
    CHECK_THROWS_AS((void)conjecture_moment(Hurst(0.6), 0.0, 2.5, 1.0, grid, 10, 1), DomainError);
}

TEST_CASE("conjecture_moment is independent of the worker count") {
    const TimeGrid grid(2.0, 256);
    const auto a = conjecture_moment(Hurst(0.7), 0.1, 2.5, 2.0, grid, 300, 4, 1);
    const auto b = conjecture_moment(Hurst(0.7), 0.1, 2.5, 2.0, grid, 300, 4, 3);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("tail_exponent recovers a t^-1/2 survival") {
    // Quantile construction: tau = 1 / U^2 has P(tau >= t) = t^(-1/2) for t >= 1.
    const TimeGrid grid(100.0, 100000);
    std::vector<PassageOutcome> outs;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const double u = (i + 0.5) / m;
        const double tau = 1.0 / (u * u);
        if (tau > grid.horizon()) outs.push_back(PassageOutcome::censored(grid));
        else outs.push_back(PassageOutcome{PassageOutcome::Kind::hit, 0, tau, grid.horizon()});
    }
    const std::vector<double> ts{1.5, 3.0, 6.0, 12.0, 24.0, 48.0};
    const auto fit = tail_exponent(outs, ts);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.01));
}

TEST_CASE("tail_exponent drops survival values of 0 and 1") {
    const TimeGrid grid(10.0, 1000);
    const std::vector<PassageOutcome> outs{hit_at(2.0), hit_at(3.0), hit_at(4.0), hit_at(5.0)};
    // t = 1 gives survival 1 and t = 9 gives 0; only 3 and 4 remain.
    const std::vector<double> ts{1.0, 3.0, 4.0, 9.0};
    const auto fit = tail_exponent(outs, ts);
    CHECK(fit.n == 2);
    const std::vector<double> bad{1.0, 9.0};
    CHECK_THROWS_AS((void)tail_exponent(outs, bad), DataError);
}
