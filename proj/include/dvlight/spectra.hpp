#ifndef DVLIGHT_SPECTRA_HPP
#define DVLIGHT_SPECTRA_HPP

#include "dvlight/model_core.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dvlight {

// Uniform grid of two-photon detunings omega (rad/s), count >= 3.
struct FrequencyGrid {
    double omega_start = 0.0;
    double omega_step = 0.0;
    std::size_t count = 0;

    double omega(std::size_t i) const { return omega_start + omega_step * static_cast<double>(i); }
    double omega_end() const { return omega(count - 1); }
    std::vector<double> omegas() const;

    static FrequencyGrid linspaced(double lo, double hi, std::size_t n);
};

void validate(const FrequencyGrid& g);

// Default scan: +-`half_linewidths` half-widths around the light-shifted
// line center omega = Im Gamma.
FrequencyGrid default_grid(const MediumParams& medium, const DriveState& drive,
                           double half_linewidths = 20.0, std::size_t points = 4096);

struct Spectrum {
    FrequencyGrid grid;
    std::vector<double> power_probe;  // |t_p(omega)|^2
    std::vector<double> power_signal; // |t_s(omega)|^2
};

Spectrum scan_spectrum(const MediumParams& medium, const DriveState& drive,
                       const FrequencyGrid& grid);

// |P_r - P_inf| / (P_r + P_inf); throws undefined_contrast_error if both 0.
double contrast(double power_on_resonance, double power_off_resonance);

struct ContrastPoint {
    double probe = 0.0;
    double signal = 0.0;
};

// On-resonance power is evaluated at the light-shifted center omega = Im
// Gamma. The off-resonance point is the model evaluated at
// `off_resonance_omega`; passing +infinity (the default in the CLI) uses the
// analytic omega->inf baseline, i.e. t_p -> e^{-S}, t_s -> 0 exactly. A
// nonzero noise floor is added to the off-resonance powers.
std::vector<ContrastPoint> contrast_sweep(const MediumParams& medium,
                                          const std::vector<DriveState>& drives,
                                          double off_resonance_omega,
                                          double noise_floor = 0.0,
                                          std::vector<std::string>* warnings = nullptr);

// Symmetry residual of a spectral line: 0 for an even lineshape. Locates the
// peak (or dip) center by centroid of the top (bottom) 10% of the
// deviation-from-baseline, then RMS of mirror-pair differences normalized by
// the peak deviation.
double lineshape_asymmetry(std::span<const double> y, const FrequencyGrid& grid);

} // namespace dvlight

#endif
