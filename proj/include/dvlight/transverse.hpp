#ifndef DVLIGHT_TRANSVERSE_HPP
#define DVLIGHT_TRANSVERSE_HPP

#include "dvlight/model_core.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dvlight {

// Square complex transverse envelope, row-major, N a power of two.
// Transverse wave numbers are angular (rad/mm) so that D k^2 is in 1/s.
struct BeamProfile {
    double pitch = 0.0; // mm
    std::size_t n = 0;
    std::vector<cplx> samples; // n*n, row-major

    cplx& at(std::size_t row, std::size_t col) { return samples[row * n + col]; }
    const cplx& at(std::size_t row, std::size_t col) const { return samples[row * n + col]; }
    double total_power() const; // sum |E|^2
};

void validate(const BeamProfile& b);

// Centered Gaussian field e^{-r^2/w^2}; w is the FIELD 1/e radius, so the
// intensity falls as e^{-2 r^2 / w^2}.
BeamProfile make_gaussian_beam(std::size_t n, double pitch_mm, double w_field_mm);

// Diffusion-broadened two-photon response: gamma -> gamma + D k^2.
// f_k = eta_act Gamma / (gamma + D k^2 + Gamma - i omega), the exact
// rational form.
cplx f_k(const MediumParams& medium, cplx gamma_power, double omega, double k);

// Gaussian-filter estimate f^(0) e^{-tau_s D k^2}; diagnostic counterpart of
// the exact form above.
cplx f_k_gaussian(const MediumParams& medium, cplx gamma_power, double omega, double k);

enum class KFilter { exact, gaussian };

// 2-D FFT; multiply each k-mode by t_s built from f^(k) (exact) or from
// f^(0) e^{-tau_s D k^2} (gaussian); inverse FFT.
BeamProfile propagate_beam(const BeamProfile& beam_in, const MediumParams& medium,
                           const DriveState& drive, double omega, KFilter filter,
                           std::vector<std::string>* warnings = nullptr);

struct WidthMeasurement {
    double w = 0.0;               // Gaussian 1/e FIELD radius, mm
    double gaussian_overlap = 0.0; // in [0,1]
};

// Radially binned least-squares fit of |E|^2 to A e^{-2 r^2 / w^2} + B about
// the intensity centroid. gaussian_overlap is the normalized inner product
// of fitted and measured intensity over the full grid.
WidthMeasurement fit_gaussian_width(const BeamProfile& beam);

struct DiffusionPoint {
    double tau_s = 0.0; // s
    double w2 = 0.0;    // mm^2
};

// For each drive: analytic tau_s and the fitted w^2 of the propagated beam.
// Feed to linear_fit; slope/4 estimates the diffusion coefficient.
std::vector<DiffusionPoint> diffusion_sweep(const MediumParams& medium,
                                            const std::vector<DriveState>& drives,
                                            const BeamProfile& beam_in, KFilter filter,
                                            std::vector<std::string>* warnings = nullptr);

} // namespace dvlight

#endif
