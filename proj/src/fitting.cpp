#include "dvlight/fitting.hpp"
#include "dvlight/detail/levmar.hpp"
#include "dvlight/errors.hpp"
#include "dvlight/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dvlight {

namespace {

struct LorentzModel {
    // params: A, x0, hw, B
    double value(double x, const std::vector<double>& p) const {
        const double u = (x - p[1]) / p[2];
        return p[0] / (1.0 + u * u) + p[3];
    }
    void gradient(double x, const std::vector<double>& p, std::vector<double>& g) const {
        const double u = (x - p[1]) / p[2];
        const double den = 1.0 + u * u;
        g[0] = 1.0 / den;
        g[1] = p[0] * 2.0 * u / (p[2] * den * den);
        g[2] = p[0] * 2.0 * u * u / (p[2] * den * den);
        g[3] = 1.0;
    }
};

} // namespace

LorentzianFit fit_lorentzian(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    if (n < 8 || y.size() != n)
        throw invalid_parameter_error("fit_lorentzian: need >= 8 paired points");

    const double ymin = *std::min_element(y.begin(), y.end());
    const double ymax = *std::max_element(y.begin(), y.end());
    if (ymax == ymin)
        throw degenerate_data_error("fit_lorentzian: constant data");

    // Edge baseline, peak-or-dip detection from which side deviates more.
    const double edge = 0.5 * (y.front() + y.back());
    const bool dip = (edge - ymin) > (ymax - edge);
    const double yext = dip ? ymin : ymax;
    size_t ipk = 0;
    for (size_t i = 0; i < n; ++i)
        if (y[i] == yext) { ipk = i; break; }
    if (ipk == 0 || ipk + 1 == n)
        throw peak_at_edge_error("fit_lorentzian: extremum on grid edge");

    const double A0 = yext - edge;
    // Half-max crossings give the initial half width.
    const double half = edge + 0.5 * A0;
    double xl = x.front(), xr = x.back();
    for (size_t i = ipk; i-- > 0;) {
        const bool crossed = dip ? (y[i] > half) : (y[i] < half);
        if (crossed) { xl = x[i]; break; }
    }
    for (size_t i = ipk + 1; i < n; ++i) {
        const bool crossed = dip ? (y[i] > half) : (y[i] < half);
        if (crossed) { xr = x[i]; break; }
    }
    double hw0 = 0.5 * (xr - xl);
    if (!(hw0 > 0.0))
        hw0 = std::abs(x[1] - x[0]);

    std::vector<double> w(n, 1.0);
    LorentzModel model;
    auto r = detail::levmar_fit(model, {A0, x[ipk], hw0, edge}, x, y, w);

    LorentzianFit fit;
    fit.amplitude = r.params[0];
    fit.center = r.params[1];
    fit.fwhm = 2.0 * std::abs(r.params[2]);
    fit.baseline = r.params[3];
    fit.converged = r.converged;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double res = y[i] - model.value(x[i], r.params);
        ss += res * res;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(n)) / std::abs(fit.amplitude);
    return fit;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y,
                     std::span<const double> weights) {
    const size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw invalid_parameter_error("linear_fit: need >= 2 paired points");
    if (!weights.empty() && weights.size() != n)
        throw invalid_parameter_error("linear_fit: weight length mismatch");

    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        sw += w;
        sx += w * x[i];
        sy += w * y[i];
        sxx += w * x[i] * x[i];
        sxy += w * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    const double xspread = sxx / sw - (sx / sw) * (sx / sw);
    if (!(xspread > 0.0) || det == 0.0)
        throw rank_deficiency_error("linear_fit: x values are all equal");

    LinearFit f;
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;

    double ssres = 0.0, sstot = 0.0;
    const double ymean = sy / sw;
    for (size_t i = 0; i < n; ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ssres += w * r * r;
        sstot += w * (y[i] - ymean) * (y[i] - ymean);
    }
    f.r_squared = sstot > 0.0 ? 1.0 - ssres / sstot : 1.0;
    if (n > 2) {
        const double s2 = ssres / static_cast<double>(n - 2);
        f.slope_stderr = std::sqrt(s2 * sw / det);
        f.intercept_stderr = std::sqrt(s2 * sxx / det);
    }
    return f;
}

double PowerCalibration::s_eta_at(double power_mw) const {
    if (s_eta_table.empty())
        throw invalid_parameter_error("PowerCalibration: empty S eta table");
    if (power_mw <= s_eta_table.front().first)
        return s_eta_table.front().second;
    if (power_mw >= s_eta_table.back().first)
        return s_eta_table.back().second;
    for (size_t i = 1; i < s_eta_table.size(); ++i) {
        if (power_mw <= s_eta_table[i].first) {
            const auto& [x0, y0] = s_eta_table[i - 1];
            const auto& [x1, y1] = s_eta_table[i];
            const double t = (power_mw - x0) / (x1 - x0);
            return y0 + t * (y1 - y0);
        }
    }
    return s_eta_table.back().second;
}

PowerCalibration calibrate_power(
    const MediumParams& medium,
    const std::vector<std::pair<double, Spectrum>>& spectra_by_power) {
    if (spectra_by_power.size() < 3)
        throw invalid_parameter_error("calibrate_power: need >= 3 powers");

    std::vector<double> powers, halfwidths;
    powers.reserve(spectra_by_power.size());
    for (const auto& [p, spec] : spectra_by_power) {
        std::vector<double> omegas(spec.grid.count);
        for (size_t i = 0; i < spec.grid.count; ++i)
            omegas[i] = spec.grid.omega(i);
        const LorentzianFit fit = fit_lorentzian(omegas, spec.power_signal);
        powers.push_back(p);
        halfwidths.push_back(fit.fwhm / 2.0); // gamma + Gamma(P_c)
    }

    const LinearFit line = linear_fit(powers, halfwidths);
    if (!(line.intercept > 0.0))
        throw inconsistency_error("calibrate_power: extrapolated gamma <= 0");

    PowerCalibration cal;
    cal.gamma_extrapolated = line.intercept;
    cal.kappa = line.slope * medium.gamma_1p / 2.0;
    return cal;
}

std::vector<std::pair<double, double>> calibrate_s_eta(
    const MediumParams& medium,
    const std::vector<std::pair<double, Spectrum>>& spectra_by_power,
    const PowerCalibration& cal) {
    std::vector<std::pair<double, double>> table;
    table.reserve(spectra_by_power.size());
    const double gamma = cal.gamma_extrapolated;
    for (const auto& [p, spec] : spectra_by_power) {
        const double gamma_power = 2.0 * cal.kappa * p / medium.gamma_1p;
        const double peak =
            *std::max_element(spec.power_signal.begin(), spec.power_signal.end());
        const double amplitude = std::sqrt(peak);
        // |t_s| ~ e^{-d} (S eta) Gamma / (2 (gamma + Gamma)); ratio stays
        // defined as Gamma -> 0.
        const double s_eta = 2.0 * amplitude * std::exp(medium.half_optical_depth) *
                             (gamma + gamma_power) / gamma_power;
        const double sf = s_eta * gamma_power / (gamma + gamma_power);
        if (sf > 0.3)
            throw out_of_validity_error("calibrate_s_eta: |Sf| = " + std::to_string(sf) +
                                        " > 0.3, weak-EIT extraction invalid");
        table.emplace_back(p, s_eta);
    }
    return table;
}

} // namespace dvlight
