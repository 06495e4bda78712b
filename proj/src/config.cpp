#include "fracpass/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fracpass/error.hpp"

namespace fracpass {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& text) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        // Accept 1e5 style and exact powers like 2^14.
        const auto caret = text.find('^');
        if (caret != std::string::npos) {
            const auto base = to_integer<Int>(key, text.substr(0, caret));
            const auto exponent = to_integer<unsigned>(key, text.substr(caret + 1));
            Int result = 1;
            for (unsigned i = 0; i < exponent; ++i) result *= base;
            return result;
        }
        const double d = to_double(key, text);
        if (d >= 0.0 && d == static_cast<double>(static_cast<Int>(d))) return static_cast<Int>(d);
        throw ConfigError("'" + key + "' expects a nonnegative integer, got '" + text + "'");
    }
    return v;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string cleaned = text;
    cleaned.erase(std::remove_if(cleaned.begin(), cleaned.end(), [](char c) { return c == '[' || c == ']'; }),
                  cleaned.end());
    std::stringstream in(cleaned);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    if (out.empty()) throw ConfigError("'" + key + "' expects a comma-separated list");
    return out;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("'" + key + "' expects true or false, got '" + text + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "seed",  "horizon",   "steps",   "samples", "hurst",       "lambda",       "x0",
        "threshold", "estimator", "drift", "diffusion", "out", "workers", "paper-scale",
        "line-samples", "bins", "density-upper", "eta", "p", "r"};
    return keys;
}

void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& raw_value) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(raw_value);
    if (key == "seed") config.seed = to_integer<std::uint64_t>(key, value);
    else if (key == "horizon") config.horizon = to_double(key, value);
    else if (key == "steps") config.steps = to_integer<std::size_t>(key, value);
    else if (key == "samples") config.samples = to_integer<std::size_t>(key, value);
    else if (key == "hurst") config.hurst_list = to_list(key, value);
    else if (key == "lambda") config.lambda_list = to_list(key, value);
    else if (key == "x0") config.x0 = to_double(key, value);
    else if (key == "threshold") config.threshold = to_double(key, value);
    else if (key == "estimator") config.estimator = parse_estimator_choice(value);
    else if (key == "drift") config.drift = value;
    else if (key == "diffusion") config.diffusion = value;
    else if (key == "out") config.output_dir = value;
    else if (key == "workers") config.workers = to_integer<unsigned>(key, value);
    else if (key == "paper-scale") {
        if (to_bool(key, value)) apply_paper_scale(config);
    }
    else if (key == "line-samples") config.line_samples = to_integer<std::size_t>(key, value);
    else if (key == "bins") config.density_bins = to_integer<std::size_t>(key, value);
    else if (key == "density-upper") config.density_upper = to_double(key, value);
    else if (key == "eta") config.eta = to_double(key, value);
    else if (key == "p") config.p = to_double(key, value);
    else if (key == "r") config.r_list = to_list(key, value);
    else throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration file " + path.string());
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key = value");
        }
        apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    }
}

}  // namespace fracpass
