#include "dvlight/model_core.hpp"
#include "dvlight/errors.hpp"

#include <cmath>
#include <string>

namespace dvlight {

void validate(const MediumParams& m) {
    if (!(m.half_optical_depth >= 0.0))
        throw invalid_parameter_error("half optical depth d must be >= 0");
    if (!(m.gamma_1p > 0.0))
        throw invalid_parameter_error("one-photon decoherence gamma_1p must be > 0");
    if (!(m.gamma >= 0.0))
        throw invalid_parameter_error("Raman decoherence gamma must be >= 0");
    if (!(m.eta_act >= 0.0 && m.eta_act <= 1.0))
        throw invalid_parameter_error("active fraction eta_act must be in [0,1]");
    if (!(m.diffusion >= 0.0))
        throw invalid_parameter_error("diffusion coefficient must be >= 0");
}

void validate(const DriveState& d) {
    if (!(d.omega_rabi >= 0.0))
        throw invalid_parameter_error("Rabi frequency must be >= 0");
    if (!std::isfinite(d.delta))
        throw invalid_parameter_error("one-photon detuning must be finite");
}

cplx compute_S(const MediumParams& medium, double delta) {
    if (!(medium.gamma_1p > 0.0))
        throw invalid_parameter_error("compute_S: gamma_1p must be > 0");
    return medium.half_optical_depth * medium.gamma_1p / cplx(medium.gamma_1p, -delta);
}

cplx compute_Gamma(const DriveState& drive, const MediumParams& medium) {
    if (!(medium.gamma_1p > 0.0))
        throw invalid_parameter_error("compute_Gamma: gamma_1p must be > 0");
    if (!(drive.omega_rabi >= 0.0))
        throw invalid_parameter_error("compute_Gamma: Rabi frequency must be >= 0");
    return 2.0 * drive.omega_rabi * drive.omega_rabi / cplx(medium.gamma_1p, -drive.delta);
}

cplx compute_f(const MediumParams& medium, cplx gamma_power, double omega) {
    if (gamma_power == cplx(0.0, 0.0))
        return {0.0, 0.0}; // no control, no two-photon response
    if (std::isinf(omega))
        return {0.0, 0.0};
    const double pole = medium.gamma + gamma_power.real();
    if (!(pole > 0.0))
        throw degenerate_pole_error("compute_f: gamma + Re Gamma must be > 0, got " +
                                    std::to_string(pole));
    return medium.eta_act * gamma_power / (cplx(medium.gamma, -omega) + gamma_power);
}

ComplexResponse steady_response(const MediumParams& medium, const DriveState& drive,
                                double omega) {
    ComplexResponse r;
    r.s = compute_S(medium, drive.delta);
    r.gamma_power = compute_Gamma(drive, medium);
    r.f = compute_f(medium, r.gamma_power, omega);
    return r;
}

cplx expm1_cplx(cplx z) {
    if (std::abs(z) < 1e-4) {
        // z (1 + z/2 (1 + z/3 (1 + z/4))): relative error below 1e-19 here
        return z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0)));
    }
    return std::exp(z) - 1.0;
}

TransferAmplitudes transfer_amplitudes(cplx S, cplx f) {
    TransferAmplitudes a;
    const cplx abs_factor = std::exp(-S); // may underflow for deep absorption; fine
    a.g_plus = std::exp(-S * (1.0 - f)) / 2.0;
    a.g_minus = abs_factor / 2.0;
    a.t_p = a.g_plus + a.g_minus;
    // expm1 form of g_plus - g_minus, stable for |Sf| -> 0
    a.t_s = abs_factor * expm1_cplx(S * f) / 2.0;
    a.t_s_weak = abs_factor * S * f / 2.0;
    return a;
}

TransferPair transfer_at(const MediumParams& medium, const DriveState& drive, double omega) {
    const ComplexResponse r = steady_response(medium, drive, omega);
    const TransferAmplitudes a = transfer_amplitudes(r.s, r.f);
    return {a.t_p, a.t_s, omega};
}

double efficiency(cplx t_s) { return std::norm(t_s); }

double raman_halfwidth(const MediumParams& medium, const DriveState& drive) {
    return medium.gamma + compute_Gamma(drive, medium).real();
}

} // namespace dvlight
