#include "fracpass/cli.hpp"

#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "fracpass/commands.hpp"
#include "fracpass/config.hpp"
#include "fracpass/error.hpp"
#include "fracpass/selftest.hpp"
#include "fracpass/version.hpp"

namespace fracpass {

namespace {

template <typename Body>
int guarded(std::ostream& log, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        log << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DomainError& e) {
        log << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ContractError& e) {
        log << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DataError& e) {
        log << "degenerate data: " << e.what() << '\n';
        return kExitDegenerateData;
    } catch (const RankError& e) {
        log << "degenerate data: " << e.what() << '\n';
        return kExitDegenerateData;
    } catch (const Error& e) {
        log << "numerical failure: " << e.what() << '\n';
        return kExitNumericalError;
    }
}

void report_files(std::ostream& log, const std::vector<std::filesystem::path>& files) {
    for (const auto& f : files) log << "wrote " << f.string() << '\n';
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& log) {
    return guarded(log, [&] {
        const auto study = run_laplace_study(config);
        report_files(log, {write_laplace_csv(study, config.output_dir),
                           write_manifest(config, "simulate", config.output_dir)});
        return kExitOk;
    });
}

int cmd_bridge_compare(const RunConfig& config, std::ostream& log) {
    return guarded(log, [&] {
        const auto rows = run_bridge_compare(config);
        report_files(log, {write_bridge_compare_csv(rows, config.output_dir),
                           write_manifest(config, "bridge-compare", config.output_dir)});
        return kExitOk;
    });
}

int cmd_rate(const RunConfig& config, std::ostream& log) {
    return guarded(log, [&] {
        validate(config);
        check_rate_config(config);
        const auto rows = run_rate(config, run_laplace_study(config));
        for (const auto& row : rows) {
            log << "lambda=" << row.lambda << ": slope " << row.linear.slope << ", R^2 " << row.linear.r_squared;
            if (row.loglog) log << ", log-log exponent " << row.loglog->fit.slope;
            log << '\n';
        }
        auto files = write_rate_csv(rows, config.line_samples, config.output_dir);
        files.push_back(write_manifest(config, "rate", config.output_dir));
        report_files(log, files);
        return kExitOk;
    });
}

int cmd_density(const RunConfig& config, std::ostream& log) {
    return guarded(log, [&] {
        auto files = write_density_csv(run_density(config), config.output_dir);
        files.push_back(write_manifest(config, "density", config.output_dir));
        report_files(log, files);
        return kExitOk;
    });
}

int cmd_conjecture(const RunConfig& config, std::ostream& log) {
    return guarded(log, [&] {
        const auto report = run_conjecture(config);
        for (const auto& t : report.trends) {
            log << "H=" << t.hurst << ": trend slope " << t.slope << " +- " << t.slope_se << '\n';
        }
        auto files = write_conjecture_csv(report, config.output_dir);
        files.push_back(write_manifest(config, "conjecture", config.output_dir));
        report_files(log, files);
        return kExitOk;
    });
}

int cmd_selftest(const RunConfig& config, std::ostream& log) {
    return guarded(log, [&] {
        SelftestOptions options;
        options.seed = config.seed;
        options.workers = config.workers;
        const auto results = run_selftest(options);
        std::size_t failed = 0;
        for (const auto& r : results) {
            log << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
            failed += r.passed ? 0 : 1;
        }
        log << results.size() - failed << "/" << results.size() << " checks passed\n";
        return failed == 0 ? kExitOk : kExitSelftestFailed;
    });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional Brownian motion first-passage experiments", "fracpass"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    bool paper_scale = false;
    app.add_option("--config", config_path, "flat key = value configuration file");
    app.add_flag("--paper-scale", paper_scale, "use N = 2^16 steps and M = 10^5 samples");

    std::map<std::string, std::string> overrides;
    for (const auto& key : config_keys()) {
        if (key == "paper-scale") continue;
        app.add_option("--" + key, overrides[key], "override '" + key + "'");
    }

    const std::vector<std::pair<std::string, std::string>> commands{
        {"simulate", "Laplace transform estimates per H and lambda (laplace.csv)"},
        {"bridge-compare", "simple vs bridge estimator accuracy (bridge_compare.csv)"},
        {"rate", "linear and log-log fits of the gap against H - 1/2 (rate.csv, fig1_data.csv)"},
        {"density", "hit-time histograms (density_H<h>.csv)"},
        {"conjecture", "truncated argmax moments against r (conjecture.csv)"},
        {"selftest", "sampler and identity checks"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    std::vector<const char*> argv{"fracpass"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfigError;
    }

    RunConfig config;
    const int status = guarded(err, [&] {
        if (config_path) apply_config_file(config, *config_path);
        if (paper_scale) apply_paper_scale(config);
        for (const auto& key : config_keys()) {
            if (key != "paper-scale" && app.count("--" + key) > 0) apply_setting(config, key, overrides[key]);
        }
        return kExitOk;
    });
    if (status != kExitOk) return status;

    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "simulate") return cmd_simulate(config, err);
    if (command == "bridge-compare") return cmd_bridge_compare(config, err);
    if (command == "rate") return cmd_rate(config, err);
    if (command == "density") return cmd_density(config, err);
    if (command == "conjecture") return cmd_conjecture(config, err);
    return cmd_selftest(config, out);
}

}  // namespace fracpass
