#include "fracpass/sde.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>

#include "fracpass/error.hpp"

namespace fracpass {

double LampertiMap::sigma(double x) const {
    if (coefficients_.constant_diffusion) return *coefficients_.constant_diffusion;
    const double s = coefficients_.diffusion(x);
    if (!(s >= coefficients_.diffusion_floor)) {
        std::ostringstream msg;
        msg << "diffusion coefficient " << s << " at x=" << x << " is below the floor "
            << coefficients_.diffusion_floor;
        throw EllipticityError(msg.str());
    }
    return s;
}

double LampertiMap::integral(double a, double b) const {
    if (a == b) return 0.0;
    if (coefficients_.constant_diffusion) return (b - a) / *coefficients_.constant_diffusion;
    auto inv_sigma = [this](double x) { return 1.0 / sigma(x); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(inv_sigma, a, b, 15, 1e-13);
}

std::size_t LampertiMap::panel_of(double x) const noexcept {
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const auto index = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - nodes_.begin() - 1, 0));
    return std::min(index, nodes_.size() - 2);
}

void LampertiMap::warn_extrapolation() const {
    std::call_once(*warned_, [this] {
        std::clog << "warning: Lamperti map evaluated outside [" << range_.lower << ", " << range_.upper
                  << "]; extending linearly\n";
    });
}

double LampertiMap::forward(double x) const {
    if (x < range_.lower) {
        warn_extrapolation();
        return node_values_.front() - (range_.lower - x) / sigma(range_.lower);
    }
    if (x > range_.upper) {
        warn_extrapolation();
        return node_values_.back() + (x - range_.upper) / sigma(range_.upper);
    }
    const std::size_t i = panel_of(x);
    return node_values_[i] + integral(nodes_[i], x);
}

double LampertiMap::inverse(double y) const {
    if (y < node_values_.front()) {
        warn_extrapolation();
        return range_.lower - (node_values_.front() - y) * sigma(range_.lower);
    }
    if (y > node_values_.back()) {
        warn_extrapolation();
        return range_.upper + (y - node_values_.back()) * sigma(range_.upper);
    }
    if (coefficients_.constant_diffusion) return x0_ + y * *coefficients_.constant_diffusion;

    const auto it = std::upper_bound(node_values_.begin(), node_values_.end(), y);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - node_values_.begin() - 1, 0));
    i = std::min(i, nodes_.size() - 2);
    const double lo = nodes_[i];
    const double hi = nodes_[i + 1];
    const double fraction = (y - node_values_[i]) / (node_values_[i + 1] - node_values_[i]);
    const double guess = lo + fraction * (hi - lo);

    auto residual = [&](double x) {
        return std::make_pair(node_values_[i] + integral(lo, x) - y, 1.0 / sigma(x));
    };
    std::uintmax_t iterations = 50;
    return boost::math::tools::newton_raphson_iterate(residual, guess, lo, hi, 45, iterations);
}

double LampertiMap::reduced_drift(double y) const {
    if (coefficients_.zero_drift) return 0.0;
    const double x = inverse(y);
    return coefficients_.drift(x) / sigma(x);
}

LampertiMap build_lamperti(const Coefficients& coefficients, double x0, Interval range, std::size_t panels) {
    if (!(range.lower < range.upper)) throw DomainError("build_lamperti: empty range");
    if (x0 < range.lower || x0 > range.upper) throw DomainError("build_lamperti: x0 outside the range");
    if (!coefficients.constant_diffusion && !coefficients.diffusion) {
        throw ContractError("build_lamperti: no diffusion coefficient");
    }
    if (!coefficients.zero_drift && !coefficients.drift) {
        throw ContractError("build_lamperti: no drift coefficient");
    }
    if (coefficients.constant_diffusion && !(*coefficients.constant_diffusion >= coefficients.diffusion_floor)) {
        throw EllipticityError("constant diffusion coefficient is below the ellipticity floor");
    }
    panels = std::max<std::size_t>(panels, 1);

    LampertiMap map;
    map.coefficients_ = coefficients;
    map.x0_ = x0;
    map.range_ = range;
    map.nodes_.resize(panels + 1);
    const double width = (range.upper - range.lower) / static_cast<double>(panels);
    for (std::size_t i = 0; i <= panels; ++i) map.nodes_[i] = range.lower + width * static_cast<double>(i);
    map.nodes_.back() = range.upper;

    map.node_values_.assign(panels + 1, 0.0);
    for (std::size_t i = 0; i < panels; ++i) {
        (void)map.sigma(map.nodes_[i]);  // ellipticity at every node, not only at quadrature points
        map.node_values_[i + 1] = map.node_values_[i] + map.integral(map.nodes_[i], map.nodes_[i + 1]);
    }
    (void)map.sigma(range.upper);

    const std::size_t anchor_panel = map.panel_of(x0);
    const double anchor = map.node_values_[anchor_panel] + map.integral(map.nodes_[anchor_panel], x0);
    for (double& v : map.node_values_) v -= anchor;
    return map;
}

XPath euler_solve(const RealFunction& reduced_drift, double x0_reduced, const FbmPath& path) {
    const double step = path.grid.step();
    XPath out{std::vector<double>(path.values.size()), path.grid, path.hurst, x0_reduced};
    double drift_sum = 0.0;
    for (std::size_t n = 0; n < path.values.size(); ++n) {
        const double y = x0_reduced + (path.values[n] + drift_sum);
        if (!std::isfinite(y)) throw PropagationError("non-finite Euler state", n);
        out.values[n] = y;
        if (n + 1 < path.values.size()) {
            const double b = reduced_drift(y);
            if (!std::isfinite(b)) throw PropagationError("non-finite drift evaluation", n);
            drift_sum += b * step;
        }
    }
    return out;
}

double threshold_transform(const LampertiMap& map, double threshold) {
    if (!map.contains(threshold)) throw DomainError("threshold_transform: threshold outside the tabulated range");
    return map.forward(threshold);
}

XPath to_x_space(const LampertiMap& map, const XPath& reduced) {
    XPath out{std::vector<double>(reduced.values.size()), reduced.grid, reduced.hurst, map.x0()};
    std::transform(reduced.values.begin(), reduced.values.end(), out.values.begin(),
                   [&](double y) { return map.inverse(y); });
    return out;
}

namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& spec) {
    std::vector<double> numbers;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            numbers.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + item + "' in '" + spec + "'");
        }
    }
    return numbers;
}

}  // namespace

Coefficients parse_coefficients(const std::string& drift, const std::string& diffusion) {
    Coefficients c;
    const auto colon = drift.find(':');
    const std::string name = drift.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : drift.substr(colon + 1);
    if (name == "zero" && args.empty()) {
        c.drift = [](double) { return 0.0; };
        c.zero_drift = true;
    } else if (name == "linear") {
        const auto v = parse_numbers(args, drift);
        if (v.size() != 2) throw ConfigError("drift 'linear:a,c' needs two numbers, got '" + drift + "'");
        c.drift = [a = v[0], b = v[1]](double x) { return a * x + b; };
        c.zero_drift = v[0] == 0.0 && v[1] == 0.0;
    } else if (name == "ou") {
        const auto v = parse_numbers(args, drift);
        if (v.size() != 1) throw ConfigError("drift 'ou:k' needs one number, got '" + drift + "'");
        c.drift = [k = v[0]](double x) { return -k * x; };
        c.zero_drift = v[0] == 0.0;
    } else {
        throw ConfigError("unknown drift '" + drift + "' (expected zero, linear:a,c or ou:k)");
    }

    if (diffusion == "one") {
        c.constant_diffusion = 1.0;
    } else if (diffusion.rfind("const:", 0) == 0) {
        const auto v = parse_numbers(diffusion.substr(6), diffusion);
        if (v.size() != 1 || !(v[0] > 0.0)) {
            throw ConfigError("diffusion 'const:s' needs one positive number, got '" + diffusion + "'");
        }
        c.constant_diffusion = v[0];
    } else {
        throw ConfigError("unknown diffusion '" + diffusion + "' (expected one or const:s)");
    }
    const double s = *c.constant_diffusion;
    c.diffusion = [s](double) { return s; };
    return c;
}

}  // namespace fracpass
