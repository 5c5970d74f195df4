#ifndef DVLIGHT_TEMPORAL_HPP
#define DVLIGHT_TEMPORAL_HPP

#include "dvlight/model_core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dvlight {

// Uniformly sampled complex temporal envelope.
struct Pulse {
    double dt = 0.0; // s
    double t0 = 0.0; // time of first sample, s
    std::vector<cplx> samples;

    double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    double window_end() const { return t0 + dt * static_cast<double>(samples.size()); }
    double energy() const; // sum |E|^2 dt
};

Pulse make_gaussian_pulse(double center, double one_over_e_full_duration, double t0,
                          double window, double dt);

enum class DelayMethod { analytic, numeric, pulse_centroid };

const char* to_string(DelayMethod m);

struct DelayResult {
    double axis_value = 0.0; // P_c (mW) or Delta (rad/s), as driven by the sweep
    double tau_p = 0.0;      // s
    double tau_s = 0.0;      // s
    DelayMethod method = DelayMethod::analytic;
};

// tau_s = Re 1/(gamma + Gamma); independent of d and eta_act.
double analytic_tau_s(const MediumParams& medium, const DriveState& drive);

// tau_p = Re (S/2) eta_act Gamma / (gamma + Gamma)^2 at omega = 0.
double analytic_tau_p(const MediumParams& medium, const DriveState& drive);

using TransferFn = std::function<cplx(double)>;

// tau = Im d/domega ln t(omega) by central difference at omega0. Throws
// zero_transfer_error when t vanishes at an evaluation point and
// phase_jump_error when the phase step exceeds pi/2.
double numeric_group_delay(const TransferFn& transfer, double omega0, double delta_omega);

// Same, with the delta/2 consistency check: the two estimates must agree to
// 0.1% (relative, floored at 1e-6 of the coarse step's inverse) or a warning
// is recorded. Returns the finer estimate.
double numeric_group_delay_checked(const TransferFn& transfer, double omega0,
                                   double delta_omega,
                                   std::vector<std::string>* warnings = nullptr);

// FFT -> multiply by transfer sampled on the pulse's frequency grid ->
// inverse FFT. The grid is zero-padded to a power of two; the returned pulse
// keeps t0 and dt and may be longer than the input. Throws aliasing_error if
// the filter's own delay would push the pulse tail past the window end.
Pulse propagate_pulse(const Pulse& pulse_in, const TransferFn& transfer,
                      std::vector<std::string>* warnings = nullptr);

// Energy centroid sum t |E|^2 / sum |E|^2.
double pulse_centroid(const Pulse& pulse);

// Pulse grid used by the pulse-centroid method.
struct PulseSettings {
    double duration_over_tau_s = 10.0;  // 1/e full duration as multiple of expected tau_s
    double window_over_duration = 20.0; // time window as multiple of the duration
    std::size_t samples_per_duration = 64;
};

// tau_p and tau_s for each drive. `axis_values` (optional, parallel to
// `drives`) fills DelayResult::axis_value for CSV output.
std::vector<DelayResult> delay_sweep(const MediumParams& medium,
                                     const std::vector<DriveState>& drives,
                                     DelayMethod method,
                                     const std::vector<double>& axis_values = {},
                                     const PulseSettings& pulse = {},
                                     std::vector<std::string>* warnings = nullptr);

// Single-drive pulse-centroid measurement of the signal (and probe) delay.
struct PulseDelayMeasurement {
    Pulse input;
    Pulse output_signal;
    Pulse output_probe;
    double tau_s = 0.0;
    double tau_p = 0.0;
};

PulseDelayMeasurement measure_pulse_delay(const MediumParams& medium, const DriveState& drive,
                                          const PulseSettings& settings = {},
                                          std::vector<std::string>* warnings = nullptr);

} // namespace dvlight

#endif
