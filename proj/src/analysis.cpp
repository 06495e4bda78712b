#include "fracpass/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracpass/error.hpp"
#include "fracpass/estimate.hpp"

namespace fracpass {

RegressionFit weighted_linear_fit(std::span<const double> xs, std::span<const double> ys,
                                  std::span<const double> weights) {
    if (xs.size() != ys.size() || xs.size() != weights.size()) {
        throw UsageError("linear fit: xs, ys and weights must have equal length");
    }
    const std::size_t n = xs.size();
    if (n < 2) throw RankError("linear fit needs at least 2 points");

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(weights[i] > 0.0)) throw UsageError("linear fit: weights must be positive");
        sw += weights[i];
        sx += weights[i] * xs[i];
        sy += weights[i] * ys[i];
    }
    const double mx = sx / sw;
    const double my = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += weights[i] * dx * dx;
        sxy += weights[i] * dx * dy;
        syy += weights[i] * dy * dy;
    }
    const double spread = std::max(std::abs(mx), 1.0);
    if (!(sxx > 1e-28 * spread * spread * sw)) throw RankError("linear fit: abscissae are all equal");

    RegressionFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.residuals.resize(n);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        fit.residuals[i] = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += weights[i] * fit.residuals[i] * fit.residuals[i];
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    if (n > 2) {
        const double sigma2 = ss_res / static_cast<double>(n - 2);
        fit.slope_se = std::sqrt(sigma2 / sxx);
        fit.intercept_se = std::sqrt(sigma2 * (1.0 / sw + mx * mx / sxx));
    }
    return fit;
}

RegressionFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    const std::vector<double> ones(xs.size(), 1.0);
    return weighted_linear_fit(xs, ys, ones);
}

RateFit rate_exponent(std::span<const double> hurst_values, std::span<const double> gaps,
                      std::span<const double> gap_se) {
    if (hurst_values.size() != gaps.size() || (!gap_se.empty() && gap_se.size() != gaps.size())) {
        throw UsageError("rate_exponent: input lengths differ");
    }
    RateFit out;
    std::vector<double> log_h, log_gap;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!(hurst_values[i] > 0.5)) {
            throw DomainError("rate_exponent: every H must exceed 1/2");
        }
        if (!(gaps[i] > 0.0)) {
            out.excluded.push_back({i, "nonpositive gap"});
            continue;
        }
        if (!gap_se.empty() && gaps[i] <= 2.0 * gap_se[i]) {
            out.excluded.push_back({i, "gap within 2 SE of zero"});
            continue;
        }
        log_h.push_back(std::log(hurst_values[i] - 0.5));
        log_gap.push_back(std::log(gaps[i]));
    }
    if (log_h.size() < 2) throw RankError("rate_exponent: fewer than 2 usable points");
    out.fit = linear_fit(log_h, log_gap);
    return out;
}

std::vector<std::string> GapTable::header() const {
    std::vector<std::string> columns{"H"};
    for (double lambda : lambdas) {
        std::ostringstream l;
        l << lambda;
        columns.push_back("L_lambda=" + l.str());
        columns.push_back("Delta_lambda=" + l.str());
    }
    return columns;
}

GapTable assemble_gap_table(const std::vector<std::vector<std::optional<LaplaceEstimate>>>& estimates,
                            const std::vector<LaplaceEstimate>& reference) {
    GapTable table;
    for (const auto& ref : reference) table.lambdas.push_back(ref.lambda);

    std::ostringstream missing;
    bool any_missing = false;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (estimates[i].size() != reference.size()) {
            throw UsageError("assemble_gap_table: row " + std::to_string(i) + " has " +
                             std::to_string(estimates[i].size()) + " columns, expected " +
                             std::to_string(reference.size()));
        }
        for (std::size_t j = 0; j < reference.size(); ++j) {
            if (!estimates[i][j]) {
                missing << (any_missing ? ", " : "") << "(row " << i << ", lambda " << reference[j].lambda << ")";
                any_missing = true;
            }
        }
    }
    if (any_missing) throw UsageError("assemble_gap_table: missing cells " + missing.str());

    for (const auto& row : estimates) {
        GapTableRow out;
        out.hurst = row.empty() ? 0.5 : row.front()->hurst.value();
        for (std::size_t j = 0; j < row.size(); ++j) {
            const auto gap = gap_estimate(*row[j], reference[j]);
            out.cells.push_back({row[j]->value, gap.gap, gap.gap_se});
        }
        table.rows.push_back(std::move(out));
    }
    return table;
}

}  // namespace fracpass
