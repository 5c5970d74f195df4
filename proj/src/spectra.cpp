#include "dvlight/spectra.hpp"
#include "dvlight/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dvlight {

std::vector<double> FrequencyGrid::omegas() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = omega(i);
    return v;
}

FrequencyGrid FrequencyGrid::linspaced(double lo, double hi, std::size_t n) {
    FrequencyGrid g;
    g.count = n;
    g.omega_start = lo;
    g.omega_step = n > 1 ? (hi - lo) / static_cast<double>(n - 1) : 0.0;
    validate(g);
    return g;
}

void validate(const FrequencyGrid& g) {
    if (g.count < 3)
        throw invalid_parameter_error("frequency grid needs >= 3 points");
    if (!(g.omega_step > 0.0))
        throw invalid_parameter_error("frequency grid must be strictly increasing");
    if (!std::isfinite(g.omega_start) || !std::isfinite(g.omega_step))
        throw invalid_parameter_error("frequency grid bounds must be finite");
}

FrequencyGrid default_grid(const MediumParams& medium, const DriveState& drive,
                           double half_linewidths, std::size_t points) {
    const cplx gp = compute_Gamma(drive, medium);
    const double hw = medium.gamma + gp.real();
    if (!(hw > 0.0))
        throw degenerate_pole_error("default_grid: gamma + Re Gamma must be > 0");
    const double center = gp.imag(); // light shift
    return FrequencyGrid::linspaced(center - half_linewidths * hw,
                                    center + half_linewidths * hw, points);
}

Spectrum scan_spectrum(const MediumParams& medium, const DriveState& drive,
                       const FrequencyGrid& grid) {
    validate(grid);
    validate(medium);
    validate(drive);
    Spectrum s;
    s.grid = grid;
    s.power_probe.resize(grid.count);
    s.power_signal.resize(grid.count);
    const cplx S = compute_S(medium, drive.delta);
    const cplx gp = compute_Gamma(drive, medium);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const cplx f = compute_f(medium, gp, grid.omega(i));
        const TransferAmplitudes a = transfer_amplitudes(S, f);
        s.power_probe[i] = std::norm(a.t_p);
        s.power_signal[i] = std::norm(a.t_s);
    }
    return s;
}

double contrast(double power_on_resonance, double power_off_resonance) {
    if (!(power_on_resonance >= 0.0) || !(power_off_resonance >= 0.0))
        throw invalid_parameter_error("contrast: powers must be >= 0");
    const double sum = power_on_resonance + power_off_resonance;
    if (sum == 0.0)
        throw undefined_contrast_error("contrast: both powers are zero");
    return std::abs(power_on_resonance - power_off_resonance) / sum;
}

std::vector<ContrastPoint> contrast_sweep(const MediumParams& medium,
                                          const std::vector<DriveState>& drives,
                                          double off_resonance_omega,
                                          double noise_floor,
                                          std::vector<std::string>* warnings) {
    validate(medium);
    if (!(noise_floor >= 0.0))
        throw invalid_parameter_error("contrast_sweep: noise floor must be >= 0");
    std::vector<ContrastPoint> out;
    out.reserve(drives.size());
    for (const DriveState& drive : drives) {
        validate(drive);
        const cplx S = compute_S(medium, drive.delta);
        const cplx gp = compute_Gamma(drive, medium);
        const double center = gp.imag();
        const double hw = medium.gamma + gp.real();
        if (std::isfinite(off_resonance_omega) && warnings &&
            std::abs(off_resonance_omega - center) < 20.0 * hw) {
            warnings->push_back("contrast_sweep: off-resonance omega within 20 linewidths "
                                "of the line center; baseline is contaminated");
        }

        const cplx f_res = compute_f(medium, gp, center);
        const TransferAmplitudes on = transfer_amplitudes(S, f_res);

        cplx tp_off, ts_off;
        if (std::isfinite(off_resonance_omega)) {
            const cplx f_off = compute_f(medium, gp, off_resonance_omega);
            const TransferAmplitudes off = transfer_amplitudes(S, f_off);
            tp_off = off.t_p;
            ts_off = off.t_s;
        } else {
            tp_off = std::exp(-S); // f -> 0 baseline
            ts_off = 0.0;
        }

        ContrastPoint c;
        c.probe = contrast(std::norm(on.t_p), std::norm(tp_off) + noise_floor);
        c.signal = contrast(std::norm(on.t_s), std::norm(ts_off) + noise_floor);
        out.push_back(c);
    }
    return out;
}

double lineshape_asymmetry(std::span<const double> y, const FrequencyGrid& grid) {
    validate(grid);
    if (y.size() != grid.count)
        throw invalid_parameter_error("lineshape_asymmetry: length mismatch");
    const std::size_t n = y.size();

    // Baseline from the outer 1% of samples on each side.
    const std::size_t edge = std::max<std::size_t>(1, n / 100);
    double left = 0.0, right = 0.0;
    for (std::size_t i = 0; i < edge; ++i) {
        left += y[i];
        right += y[n - 1 - i];
    }
    const double baseline = 0.5 * (left + right) / static_cast<double>(edge);

    double devmax = 0.0, devmin = 0.0;
    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = y[i] - baseline;
        if (d > devmax) { devmax = d; imax = i; }
        if (d < devmin) { devmin = d; imin = i; }
    }
    const bool dip = -devmin > devmax;
    const double peak_dev = dip ? -devmin : devmax;
    const std::size_t ipk = dip ? imin : imax;
    if (peak_dev <= 0.0)
        throw degenerate_data_error("lineshape_asymmetry: flat data");
    if (ipk == 0 || ipk + 1 == n)
        throw peak_at_edge_error("lineshape_asymmetry: extremum on grid edge");

    // Center = centroid of the top (bottom) 10% of the deviation.
    double wsum = 0.0, xsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = dip ? baseline - y[i] : y[i] - baseline;
        if (d >= 0.9 * peak_dev) {
            wsum += d;
            xsum += d * grid.omega(i);
        }
    }
    const double omega0 = xsum / wsum;

    // Linear interpolation on the uniform grid.
    auto interp = [&](double w) {
        const double u = (w - grid.omega_start) / grid.omega_step;
        const std::size_t i0 = static_cast<std::size_t>(u);
        const double t = u - static_cast<double>(i0);
        return y[i0] * (1.0 - t) + y[i0 + 1] * t;
    };

    const double span_left = omega0 - grid.omega_start;
    const double span_right = grid.omega_end() - omega0;
    const std::size_t pairs =
        static_cast<std::size_t>(std::min(span_left, span_right) / grid.omega_step);
    if (pairs < 2)
        throw peak_at_edge_error("lineshape_asymmetry: too little room around center");

    double ss = 0.0;
    for (std::size_t j = 1; j < pairs; ++j) {
        const double delta = static_cast<double>(j) * grid.omega_step;
        const double diff = interp(omega0 + delta) - interp(omega0 - delta);
        ss += diff * diff;
    }
    return std::sqrt(ss / static_cast<double>(pairs - 1)) / peak_dev;
}

} // namespace dvlight
