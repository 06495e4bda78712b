#include "fracpass/commands.hpp"

#include <fftw3.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>

#include "fracpass/error.hpp"
#include "fracpass/theory.hpp"
#include "fracpass/version.hpp"
#include "json.hpp"

namespace fracpass {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_output(const std::filesystem::path& path) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open " + path.string() + " for writing");
    return out;
}

std::string shortest(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return ec == std::errc{} ? std::string(buffer, end) : format_number(value);
}

bool has_brownian_row(const RunConfig& config) {
    return std::find(config.hurst_list.begin(), config.hurst_list.end(), 0.5) != config.hurst_list.end();
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string density_file_name(double hurst) { return "density_H" + shortest(hurst) + ".csv"; }

const StudyRow& LaplaceStudy::at(double hurst, double lambda, EstimatorKind kind) const {
    for (const auto& row : rows) {
        if (row.hurst == hurst && row.lambda == lambda && row.estimate.estimator == kind) return row;
    }
    throw UsageError("no study row for H=" + std::to_string(hurst) + ", lambda=" + std::to_string(lambda) +
                     ", estimator " + to_string(kind));
}

LaplaceStudy run_laplace_study(const RunConfig& config) {
    validate(config);
    const PathModel model = PathModel::from_config(config);
    const TimeGrid grid = config.grid();
    const auto kinds = config.estimators();
    std::vector<Detector> detectors;
    for (auto kind : kinds) detectors.push_back({kind, 1});

    // H = 1/2 first so that its outcomes are available as the paired reference.
    std::vector<double> order = config.hurst_list;
    std::stable_partition(order.begin(), order.end(), [](double h) { return h == 0.5; });

    std::map<double, std::vector<std::vector<PassageOutcome>>> outcomes;
    for (double hv : order) {
        if (outcomes.count(hv)) continue;
        outcomes[hv] = simulate_passages(model, Hurst(hv), grid, config.samples, config.seed, detectors,
                                         config.workers);
    }

    LaplaceStudy study;
    const auto reference = outcomes.find(0.5);
    for (double hv : config.hurst_list) {
        const auto& per_detector = outcomes.at(hv);
        for (double lambda : config.lambda_list) {
            for (std::size_t d = 0; d < kinds.size(); ++d) {
                StudyRow row;
                row.hurst = hv;
                row.lambda = lambda;
                row.estimate = laplace_estimator(per_detector[d], lambda, Hurst(hv), kinds[d]);
                if (reference != outcomes.end()) {
                    const auto gap = paired_gap(per_detector[d], reference->second[d], lambda);
                    row.delta = gap.gap;
                    row.delta_se = gap.gap_se;
                } else if (const auto exact = model.brownian_reference(lambda)) {
                    const auto gap = gap_estimate(row.estimate, *exact);
                    row.delta = gap.gap;
                    row.delta_se = gap.gap_se;
                } else {
                    row.delta = kNaN;
                    row.delta_se = kNaN;
                }
                study.rows.push_back(row);
            }
        }
    }
    return study;
}

std::filesystem::path write_laplace_csv(const LaplaceStudy& study, const std::filesystem::path& dir) {
    const auto path = dir / "laplace.csv";
    auto out = open_output(path);
    out << "H,lambda,estimator,value,std_error,censored,delta_vs_bm,delta_se\n";
    for (const auto& row : study.rows) {
        out << format_number(row.hurst) << ',' << format_number(row.lambda) << ','
            << to_string(row.estimate.estimator) << ',' << format_number(row.estimate.value) << ','
            << format_number(row.estimate.std_error) << ',' << row.estimate.censored << ','
            << format_number(row.delta) << ',' << format_number(row.delta_se) << '\n';
    }
    return path;
}

std::vector<BridgeCompareRow> run_bridge_compare(const RunConfig& config) {
    validate(config);
    if (config.estimator != EstimatorChoice::both) {
        throw ConfigError("bridge-compare needs estimator=both");
    }
    if (config.steps < 4) throw ConfigError("bridge-compare needs at least 4 steps");
    const PathModel model = PathModel::from_config(config);
    const TimeGrid grid = config.grid();
    const std::vector<Detector> detectors{
        {EstimatorKind::simple, 1}, {EstimatorKind::simple, 2}, {EstimatorKind::bridge, 2}};

    auto err_pct = [](double value, double reference) {
        return 100.0 * std::abs(value - reference) / reference;
    };

    std::vector<BridgeCompareRow> rows;
    for (double hv : config.hurst_list) {
        const Hurst h(hv);
        const auto outcomes = simulate_passages(model, h, grid, config.samples, config.seed, detectors,
                                                config.workers);
        for (double lambda : config.lambda_list) {
            BridgeCompareRow row;
            row.hurst = hv;
            row.lambda = lambda;
            const auto fine = laplace_estimator(outcomes[0], lambda, h, EstimatorKind::simple);
            row.bridge = laplace_estimator(outcomes[2], lambda, h, EstimatorKind::bridge);
            const auto exact = model.brownian_reference(lambda);
            if (h.is_brownian() && exact) {
                row.reference = *exact;
                row.simple = fine;
            } else {
                row.reference = fine.value;
                row.simple = laplace_estimator(outcomes[1], lambda, h, EstimatorKind::simple);
            }
            row.simple_err_pct = err_pct(row.simple.value, row.reference);
            row.bridge_err_pct = err_pct(row.bridge.value, row.reference);
            rows.push_back(row);
        }
    }
    return rows;
}

std::filesystem::path write_bridge_compare_csv(const std::vector<BridgeCompareRow>& rows,
                                               const std::filesystem::path& dir) {
    const auto path = dir / "bridge_compare.csv";
    auto out = open_output(path);
    out << "H,lambda,reference_or_fine,simple,simple_err_pct,bridge,bridge_err_pct\n";
    for (const auto& row : rows) {
        out << format_number(row.hurst) << ',' << format_number(row.lambda) << ','
            << format_number(row.reference) << ',' << format_number(row.simple.value) << ','
            << format_number(row.simple_err_pct) << ',' << format_number(row.bridge.value) << ','
            << format_number(row.bridge_err_pct) << '\n';
    }
    return path;
}

void check_rate_config(const RunConfig& config) {
    if (!has_brownian_row(config)) throw ConfigError("rate needs H = 0.5 in the hurst list");
    std::vector<double> above;
    for (double h : config.hurst_list) {
        if (h > 0.5 && std::find(above.begin(), above.end(), h) == above.end()) above.push_back(h);
    }
    if (above.size() < 3) throw ConfigError("rate needs at least three distinct H values above 0.5");
}

std::vector<RateRow> run_rate(const RunConfig& config, const LaplaceStudy& study) {
    check_rate_config(config);
    std::vector<double> above;
    for (double h : config.hurst_list) {
        if (h > 0.5 && std::find(above.begin(), above.end(), h) == above.end()) above.push_back(h);
    }
    if (above.size() < 3) throw ConfigError("rate needs at least three distinct H values above 0.5");
    std::sort(above.begin(), above.end());
    const EstimatorKind kind =
        config.estimator == EstimatorChoice::bridge ? EstimatorKind::bridge : EstimatorKind::simple;

    std::vector<RateRow> rows;
    for (double lambda : config.lambda_list) {
        RateRow row;
        row.lambda = lambda;
        std::vector<double> hs, ses;
        for (double h : above) {
            const auto& cell = study.at(h, lambda, kind);
            hs.push_back(h);
            row.h_minus_half.push_back(h - 0.5);
            row.gaps.push_back(cell.delta);
            ses.push_back(cell.delta_se);
        }
        row.linear = linear_fit(row.h_minus_half, row.gaps);
        try {
            row.loglog = rate_exponent(hs, row.gaps, ses);
            for (const auto& ex : row.loglog->excluded) {
                std::clog << "rate: lambda=" << lambda << ", H=" << hs[ex.index] << " excluded from log-log fit ("
                          << ex.reason << ")\n";
            }
        } catch (const RankError& e) {
            std::clog << "rate: lambda=" << lambda << ": no log-log fit (" << e.what() << ")\n";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::filesystem::path> write_rate_csv(const std::vector<RateRow>& rows, std::size_t line_samples,
                                                  const std::filesystem::path& dir) {
    const auto rate_path = dir / "rate.csv";
    auto rate = open_output(rate_path);
    rate << "lambda,slope,intercept,r_squared,beta_hat\n";
    for (const auto& row : rows) {
        rate << format_number(row.lambda) << ',' << format_number(row.linear.slope) << ','
             << format_number(row.linear.intercept) << ',' << format_number(row.linear.r_squared) << ','
             << format_number(row.loglog ? row.loglog->fit.slope : kNaN) << '\n';
    }

    const auto fig_path = dir / "fig1_data.csv";
    auto fig = open_output(fig_path);
    fig << "kind,lambda,h_minus_half,gap\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.gaps.size(); ++i) {
            fig << "point," << format_number(row.lambda) << ',' << format_number(row.h_minus_half[i]) << ','
                << format_number(row.gaps[i]) << '\n';
        }
    }
    for (const auto& row : rows) {
        const double upper = *std::max_element(row.h_minus_half.begin(), row.h_minus_half.end());
        for (std::size_t k = 0; k < line_samples; ++k) {
            const double x = upper * static_cast<double>(k) / static_cast<double>(line_samples - 1);
            fig << "line," << format_number(row.lambda) << ',' << format_number(x) << ','
                << format_number(row.linear.intercept + row.linear.slope * x) << '\n';
        }
    }
    return {rate_path, fig_path};
}

std::vector<DensityResult> run_density(const RunConfig& config) {
    validate(config);
    const PathModel model = PathModel::from_config(config);
    const TimeGrid grid = config.grid();
    const Detector detector{
        config.estimator == EstimatorChoice::simple ? EstimatorKind::simple : EstimatorKind::bridge, 1};
    const BinSpec bins{0.0, std::min(config.horizon, config.density_upper), config.density_bins};

    std::vector<DensityResult> results;
    for (double hv : config.hurst_list) {
        const auto outcomes =
            simulate_passages(model, Hurst(hv), grid, config.samples, config.seed, {&detector, 1}, config.workers);
        results.push_back({hv, density_histogram(outcomes.front(), bins)});
    }
    return results;
}

std::vector<std::filesystem::path> write_density_csv(const std::vector<DensityResult>& results,
                                                     const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> paths;
    for (const auto& result : results) {
        const auto path = dir / density_file_name(result.hurst);
        auto out = open_output(path);
        out << "bin_left,bin_right,density\n";
        const auto& hist = result.histogram;
        for (std::size_t i = 0; i < hist.mass.size(); ++i) {
            out << format_number(hist.bin_edges[i]) << ',' << format_number(hist.bin_edges[i + 1]) << ','
                << format_number(hist.mass[i]) << '\n';
        }
        paths.push_back(path);
    }
    return paths;
}

ConjectureTrend trend_slope(std::span<const double> xs, std::span<const MomentEstimate> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw UsageError("trend_slope: need two or more points");
    double mean_x = 0.0;
    for (double x : xs) mean_x += x;
    mean_x /= static_cast<double>(xs.size());
    double sxx = 0.0;
    for (double x : xs) sxx += (x - mean_x) * (x - mean_x);
    if (!(sxx > 0.0)) throw RankError("trend_slope: abscissae are all equal");
    ConjectureTrend trend;
    double variance = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double w = (xs[i] - mean_x) / sxx;
        trend.slope += w * ys[i].value;
        variance += w * w * ys[i].std_error * ys[i].std_error;
    }
    trend.slope_se = std::sqrt(variance);
    return trend;
}

ConjectureReport run_conjecture(const RunConfig& config) {
    validate(config);
    if (!(config.p > 2.0 && config.p < 3.0)) throw ConfigError("conjecture needs p in (2, 3)");
    if (!(config.eta > 0.0)) throw ConfigError("conjecture needs eta > 0");
    if (config.r_list.size() < 2) throw ConfigError("conjecture needs at least two r values");
    for (double r : config.r_list) {
        if (!(r > 0.0 && r <= config.horizon)) throw ConfigError("every r must lie in (0, horizon]");
    }
    const TimeGrid grid = config.grid();
    ConjectureReport report;
    for (double hv : config.hurst_list) {
        std::vector<MomentEstimate> moments;
        for (std::size_t i = 0; i < config.r_list.size(); ++i) {
            const double r = config.r_list[i];
            const auto m = conjecture_moment(Hurst(hv), config.eta, config.p, r, grid, config.samples,
                                             mix_seed(config.seed, i), config.workers);
            moments.push_back(m);
            report.points.push_back({hv, r, m});
        }
        auto trend = trend_slope(config.r_list, moments);
        trend.hurst = hv;
        report.trends.push_back(trend);
    }
    return report;
}

std::vector<std::filesystem::path> write_conjecture_csv(const ConjectureReport& report,
                                                        const std::filesystem::path& dir) {
    const auto points_path = dir / "conjecture.csv";
    auto points = open_output(points_path);
    points << "H,r,moment,std_error\n";
    for (const auto& p : report.points) {
        points << format_number(p.hurst) << ',' << format_number(p.r) << ',' << format_number(p.moment.value)
               << ',' << format_number(p.moment.std_error) << '\n';
    }
    const auto trend_path = dir / "conjecture_trend.csv";
    auto trend = open_output(trend_path);
    trend << "H,slope,slope_se\n";
    for (const auto& t : report.trends) {
        trend << format_number(t.hurst) << ',' << format_number(t.slope) << ',' << format_number(t.slope_se)
              << '\n';
    }
    return {points_path, trend_path};
}

std::filesystem::path write_manifest(const RunConfig& config, const std::string& command,
                                     const std::filesystem::path& dir) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["fftw"] = std::string(fftw_version);
    j["compiler"] = __VERSION__;
    auto& c = j["config"];
    c["seed"] = config.seed;
    c["horizon"] = config.horizon;
    c["steps"] = config.steps;
    c["step"] = config.horizon / static_cast<double>(config.steps);
    c["samples"] = config.samples;
    c["hurst"] = config.hurst_list;
    c["lambda"] = config.lambda_list;
    c["x0"] = config.x0;
    c["threshold"] = config.threshold;
    c["estimator"] = to_string(config.estimator);
    c["drift"] = config.drift;
    c["diffusion"] = config.diffusion;
    c["paper_scale"] = config.paper_scale;
    c["line_samples"] = config.line_samples;
    c["density_bins"] = config.density_bins;
    c["density_upper"] = config.density_upper;
    c["eta"] = config.eta;
    c["p"] = config.p;
    c["r"] = config.r_list;
    // workers omitted: outputs are independent of it

    const auto path = dir / "run_manifest.json";
    auto out = open_output(path);
    out << j.dump(2) << '\n';
    return path;
}

}  // namespace fracpass
