#include "dvlight/temporal.hpp"
#include "dvlight/errors.hpp"
#include "dvlight/fft.hpp"
#include "dvlight/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dvlight {

double Pulse::energy() const {
    double e = 0.0;
    for (const cplx& v : samples)
        e += std::norm(v);
    return e * dt;
}

Pulse make_gaussian_pulse(double center, double one_over_e_full_duration, double t0,
                          double window, double dt) {
    if (!(dt > 0.0) || !(window > 0.0) || !(one_over_e_full_duration > 0.0))
        throw invalid_parameter_error("make_gaussian_pulse: dt, window, duration must be > 0");
    Pulse p;
    p.dt = dt;
    p.t0 = t0;
    const std::size_t n = fft::next_pow2(static_cast<std::size_t>(std::ceil(window / dt)));
    p.samples.resize(n);
    const double tg = one_over_e_full_duration / 2.0; // field 1/e half duration
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (p.time(i) - center) / tg;
        p.samples[i] = std::exp(-u * u);
    }
    return p;
}

const char* to_string(DelayMethod m) {
    switch (m) {
    case DelayMethod::analytic: return "analytic";
    case DelayMethod::numeric: return "numeric";
    case DelayMethod::pulse_centroid: return "pulse-centroid";
    }
    return "?";
}

double analytic_tau_s(const MediumParams& medium, const DriveState& drive) {
    const cplx gp = compute_Gamma(drive, medium);
    if (!(medium.gamma + gp.real() > 0.0))
        throw degenerate_pole_error("analytic_tau_s: gamma + Re Gamma must be > 0");
    return (1.0 / (medium.gamma + gp)).real();
}

double analytic_tau_p(const MediumParams& medium, const DriveState& drive) {
    const cplx gp = compute_Gamma(drive, medium);
    if (!(medium.gamma + gp.real() > 0.0))
        throw degenerate_pole_error("analytic_tau_p: gamma + Re Gamma must be > 0");
    const cplx S = compute_S(medium, drive.delta);
    const cplx den = medium.gamma + gp;
    return (S / 2.0 * medium.eta_act * gp / (den * den)).real();
}

double numeric_group_delay(const TransferFn& transfer, double omega0, double delta_omega) {
    if (!(delta_omega > 0.0))
        throw invalid_parameter_error("numeric_group_delay: delta_omega must be > 0");
    const cplx tp = transfer(omega0 + delta_omega);
    const cplx tm = transfer(omega0 - delta_omega);
    if (tp == cplx(0.0, 0.0) || tm == cplx(0.0, 0.0))
        throw zero_transfer_error("numeric_group_delay: transfer vanishes near omega0");
    const double dphi = std::arg(tp / tm);
    if (std::abs(dphi) > pi / 2.0)
        throw phase_jump_error("numeric_group_delay: phase step exceeds pi/2; "
                               "reduce delta_omega");
    return dphi / (2.0 * delta_omega);
}

double numeric_group_delay_checked(const TransferFn& transfer, double omega0,
                                   double delta_omega, std::vector<std::string>* warnings) {
    const double coarse = numeric_group_delay(transfer, omega0, delta_omega);
    const double fine = numeric_group_delay(transfer, omega0, delta_omega / 2.0);
    const double tol = std::max(1e-3 * std::max(std::abs(coarse), std::abs(fine)),
                                1e-9 / delta_omega);
    if (std::abs(coarse - fine) > tol && warnings)
        warnings->push_back("numeric_group_delay: half-step estimate deviates by more "
                            "than 0.1%; transfer function is curved on this scale");
    return fine;
}

Pulse propagate_pulse(const Pulse& pulse_in, const TransferFn& transfer,
                      std::vector<std::string>* warnings) {
    (void)warnings;
    if (!(pulse_in.dt > 0.0) || pulse_in.samples.empty())
        throw invalid_parameter_error("propagate_pulse: empty pulse");
    const double energy_in = pulse_in.energy();
    if (!(energy_in > 0.0) || !std::isfinite(energy_in))
        throw zero_energy_error("propagate_pulse: input has no energy");

    Pulse out;
    out.dt = pulse_in.dt;
    out.t0 = pulse_in.t0;
    const std::size_t n = fft::next_pow2(pulse_in.samples.size());
    out.samples = pulse_in.samples;
    out.samples.resize(n, cplx(0.0, 0.0));

    // Delay estimate from the filter phase across the innermost bins, used to
    // reject configurations whose output would wrap around the window.
    const double dw = fft::bin_frequency(1, n, out.dt);
    const cplx h_plus = transfer(dw);
    const cplx h_minus = transfer(-dw);
    double delay_estimate = 0.0;
    if (h_plus != cplx(0.0, 0.0) && h_minus != cplx(0.0, 0.0))
        delay_estimate = std::arg(h_plus / h_minus) / (2.0 * dw);

    const double total = energy_in / out.dt;
    double acc = 0.0;
    double t_lo = out.t0, t_hi = out.window_end();
    for (std::size_t i = 0; i < pulse_in.samples.size(); ++i) {
        acc += std::norm(pulse_in.samples[i]);
        if (acc >= 1e-9 * total) { t_lo = out.time(i); break; }
    }
    acc = 0.0;
    for (std::size_t i = pulse_in.samples.size(); i-- > 0;) {
        acc += std::norm(pulse_in.samples[i]);
        if (acc >= 1e-9 * total) { t_hi = out.time(i); break; }
    }
    if (t_hi + delay_estimate > out.window_end() || t_lo + delay_estimate < out.t0)
        throw aliasing_error("propagate_pulse: delayed pulse would wrap past the time "
                             "window; enlarge the window");

    fft::analysis(out.samples);
    for (std::size_t k = 0; k < n; ++k)
        out.samples[k] *= transfer(fft::bin_frequency(k, n, out.dt));
    fft::synthesis(out.samples);
    return out;
}

double pulse_centroid(const Pulse& pulse) {
    double e = 0.0, te = 0.0;
    for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
        const double p = std::norm(pulse.samples[i]);
        e += p;
        te += p * pulse.time(i);
    }
    if (!(e > 0.0))
        throw zero_energy_error("pulse_centroid: zero-energy pulse");
    return te / e;
}

PulseDelayMeasurement measure_pulse_delay(const MediumParams& medium, const DriveState& drive,
                                          const PulseSettings& settings,
                                          std::vector<std::string>* warnings) {
    validate(medium);
    validate(drive);
    const double hw = raman_halfwidth(medium, drive);
    if (!(hw > 0.0))
        throw degenerate_pole_error("measure_pulse_delay: gamma + Re Gamma must be > 0");
    const double tau_expected = analytic_tau_s(medium, drive);
    const double duration = settings.duration_over_tau_s * tau_expected;
    const double window = settings.window_over_duration * duration;
    const double dt = duration / static_cast<double>(settings.samples_per_duration);

    const double bandwidth = 4.0 / duration; // spectral 1/e half-width of the Gaussian
    if (bandwidth > hw / 10.0 && warnings)
        warnings->push_back("measure_pulse_delay: pulse bandwidth exceeds linewidth/10; "
                            "the centroid delay picks up distortion corrections");

    PulseDelayMeasurement m;
    m.input = make_gaussian_pulse(2.5 * duration, duration, 0.0, window, dt);
    // Carrier sits on the two-photon resonance omega = 0.
    const TransferFn signal_fn = [&](double w) { return transfer_at(medium, drive, w).t_s; };
    const TransferFn probe_fn = [&](double w) { return transfer_at(medium, drive, w).t_p; };
    m.output_signal = propagate_pulse(m.input, signal_fn, warnings);
    m.output_probe = propagate_pulse(m.input, probe_fn, warnings);
    const double c_in = pulse_centroid(m.input);
    m.tau_s = pulse_centroid(m.output_signal) - c_in;
    m.tau_p = pulse_centroid(m.output_probe) - c_in;
    return m;
}

std::vector<DelayResult> delay_sweep(const MediumParams& medium,
                                     const std::vector<DriveState>& drives,
                                     DelayMethod method,
                                     const std::vector<double>& axis_values,
                                     const PulseSettings& pulse,
                                     std::vector<std::string>* warnings) {
    if (!axis_values.empty() && axis_values.size() != drives.size())
        throw invalid_parameter_error("delay_sweep: axis/drive length mismatch");
    std::vector<DelayResult> out;
    out.reserve(drives.size());
    for (std::size_t i = 0; i < drives.size(); ++i) {
        const DriveState& d = drives[i];
        DelayResult r;
        r.axis_value = axis_values.empty() ? d.omega_rabi : axis_values[i];
        r.method = method;
        switch (method) {
        case DelayMethod::analytic:
            r.tau_s = analytic_tau_s(medium, d);
            r.tau_p = analytic_tau_p(medium, d);
            break;
        case DelayMethod::numeric: {
            const double dw = raman_halfwidth(medium, d) / 100.0;
            const TransferFn ts = [&](double w) { return transfer_at(medium, d, w).t_s; };
            const TransferFn tp = [&](double w) { return transfer_at(medium, d, w).t_p; };
            r.tau_s = numeric_group_delay_checked(ts, 0.0, dw, warnings);
            r.tau_p = numeric_group_delay_checked(tp, 0.0, dw, warnings);
            break;
        }
        case DelayMethod::pulse_centroid: {
            const PulseDelayMeasurement m = measure_pulse_delay(medium, d, pulse, warnings);
            r.tau_s = m.tau_s;
            r.tau_p = m.tau_p;
            break;
        }
        }
        out.push_back(r);
    }
    return out;
}

} // namespace dvlight
