#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fracpass/fgn.hpp"
#include "fracpass/types.hpp"

namespace fracpass {

using RealFunction = std::function<double(double)>;

/// dX = b(X) dt + sigma(X) dB^H.
struct Coefficients {
    RealFunction drift;
    RealFunction diffusion;
    double diffusion_floor = 1e-8;  // sigma must stay >= this (strong ellipticity)
    /// Set when sigma is a known constant; the Lamperti map is then affine
    /// and built in closed form.
    std::optional<double> constant_diffusion;
    bool zero_drift = false;
};

struct Interval {
    double lower;
    double upper;
};

inline constexpr double kLampertiTolerance = 1e-10;

/// F(x) = integral from x0 to x of 1/sigma, its inverse and the reduced drift
/// b(F^-1(y)) / sigma(F^-1(y)) of the unit-diffusion equation dY = b~(Y) dt + dB^H.
///
/// F is tabulated on `range` by adaptive Gauss-Kronrod quadrature; outside it
/// F is extended linearly with the boundary slope (a warning is logged once).
class LampertiMap {
public:
    [[nodiscard]] double forward(double x) const;
    [[nodiscard]] double inverse(double y) const;
    [[nodiscard]] double reduced_drift(double y) const;

    [[nodiscard]] double x0() const noexcept { return x0_; }
    [[nodiscard]] Interval range() const noexcept { return range_; }
    [[nodiscard]] bool contains(double x) const noexcept { return x >= range_.lower && x <= range_.upper; }

private:
    friend LampertiMap build_lamperti(const Coefficients&, double, Interval, std::size_t);

    LampertiMap() = default;

    [[nodiscard]] double sigma(double x) const;
    [[nodiscard]] double integral(double a, double b) const;
    [[nodiscard]] std::size_t panel_of(double x) const noexcept;
    void warn_extrapolation() const;

    Coefficients coefficients_;
    double x0_ = 0.0;
    Interval range_{0.0, 0.0};
    std::vector<double> nodes_;
    std::vector<double> node_values_;  // F at nodes
    std::shared_ptr<std::once_flag> warned_ = std::make_shared<std::once_flag>();
};

/// Requires sigma >= diffusion_floor on `range` (EllipticityError otherwise)
/// and x0 inside `range`.
[[nodiscard]] LampertiMap build_lamperti(const Coefficients& coefficients, double x0, Interval range,
                                         std::size_t panels = 256);

/// Solution of an SDE on a grid.
struct XPath {
    std::vector<double> values;
    TimeGrid grid;
    Hurst hurst;
    double x0;
};

/// Euler scheme Y_{n+1} = Y_n + b~(Y_n) step + (B_{n+1} - B_n) driven by `path`.
/// The accumulated drift is kept apart from the noise, so with b~ = 0 the
/// output is exactly x0_reduced + path.values[n].
[[nodiscard]] XPath euler_solve(const RealFunction& reduced_drift, double x0_reduced, const FbmPath& path);

/// F(threshold): the level Y must reach for X to reach `threshold`.
[[nodiscard]] double threshold_transform(const LampertiMap& map, double threshold);

/// Maps a reduced path back through F^-1.
[[nodiscard]] XPath to_x_space(const LampertiMap& map, const XPath& reduced);

/// Registry used by the CLI: `zero`, `linear:a,c` (a x + c), `ou:k` (-k x).
[[nodiscard]] Coefficients parse_coefficients(const std::string& drift, const std::string& diffusion);

}  // namespace fracpass
