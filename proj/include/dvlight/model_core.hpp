#ifndef DVLIGHT_MODEL_CORE_HPP
#define DVLIGHT_MODEL_CORE_HPP

#include <complex>

namespace dvlight {

using cplx = std::complex<double>;

// Static medium constants. The resonant optical depth of the cell is 2d for
// both probe and signal; d is the half depth used in the response formulas.
struct MediumParams {
    double half_optical_depth = 2.5; // d, dimensionless
    double gamma_1p = 0.0;           // one-photon decoherence rate, rad/s
    double gamma = 0.0;              // Raman (two-photon) decoherence rate, rad/s
    double eta_act = 1.0;            // active-atom fraction, [0,1]
    double diffusion = 0.0;          // diffusion coefficient, mm^2/s
};

// Control-field state. Both control beams are assumed equal, with a single
// Rabi frequency and a common one-photon detuning.
struct DriveState {
    double omega_rabi = 0.0; // rad/s
    double delta = 0.0;      // one-photon detuning, rad/s
};

// Throw invalid_parameter_error on out-of-range fields.
void validate(const MediumParams& m);
void validate(const DriveState& d);

// Complex Lorentzian responses at one frequency.
struct ComplexResponse {
    cplx s;           // one-photon response S, dimensionless
    cplx gamma_power; // power broadening Gamma, rad/s (Im part = light shift)
    cplx f;           // two-photon response at the given omega, dimensionless
};

// S = d gamma_1p / (gamma_1p - i Delta)
cplx compute_S(const MediumParams& medium, double delta);

// Gamma = 2 Omega^2 / (gamma_1p - i Delta)
cplx compute_Gamma(const DriveState& drive, const MediumParams& medium);

// f = eta_act Gamma / (gamma + Gamma - i omega).
// Requires gamma + Re Gamma > 0 unless Gamma == 0 (then f == 0 identically).
// An infinite omega returns 0 (the far-detuned baseline).
cplx compute_f(const MediumParams& medium, cplx gamma_power, double omega);

ComplexResponse steady_response(const MediumParams& medium, const DriveState& drive,
                                double omega);

// Transmission amplitudes of the two normal modes and of the bare fields.
// g_plus carries the EIT window, g_minus the plain one-photon absorption.
// t_s_weak is the |Sf| << 1 estimate e^{-S} S f / 2, kept as a diagnostic;
// t_s itself is always the exact exponential form e^{-S}(e^{Sf}-1)/2.
struct TransferAmplitudes {
    cplx g_plus;
    cplx g_minus;
    cplx t_p;      // transmitted probe, g_plus + g_minus
    cplx t_s;      // generated signal, g_plus - g_minus
    cplx t_s_weak; // weak-EIT diagnostic estimate
};

TransferAmplitudes transfer_amplitudes(cplx S, cplx f);

// Probe/signal amplitudes on a frequency point.
struct TransferPair {
    cplx t_p;
    cplx t_s;
    double omega = 0.0; // two-photon detuning, rad/s
};

TransferPair transfer_at(const MediumParams& medium, const DriveState& drive, double omega);

// Generation efficiency beta = |t_s|^2.
double efficiency(cplx t_s);

// gamma + Re Gamma, the half-width of the Raman line in rad/s.
double raman_halfwidth(const MediumParams& medium, const DriveState& drive);

// e^z - 1 without cancellation for small |z|.
cplx expm1_cplx(cplx z);

} // namespace dvlight

#endif
