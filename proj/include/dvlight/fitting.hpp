#ifndef DVLIGHT_FITTING_HPP
#define DVLIGHT_FITTING_HPP

#include "dvlight/model_core.hpp"

#include <span>
#include <utility>
#include <vector>

namespace dvlight {

struct Spectrum; // spectra.hpp

// y = A / (1 + ((x - x0)/hw)^2) + B, reported as center x0 and fwhm = 2 hw.
struct LorentzianFit {
    double amplitude = 0.0;
    double center = 0.0;   // rad/s
    double fwhm = 0.0;     // rad/s
    double baseline = 0.0;
    double rms_residual = 0.0; // RMS residual normalized to |amplitude|
    bool converged = false;
};

// Damped iterative least squares (normal equations with adaptive damping),
// deterministic initialization from peak, half-max crossings and edge
// baseline. Converges on relative parameter change < 1e-8 or 200 iterations;
// non-convergence returns the best iterate with converged = false.
LorentzianFit fit_lorentzian(std::span<const double> x, std::span<const double> y);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
    double r_squared = 0.0;
};

// Weighted ordinary least squares, closed form. Empty weights = unit weights.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y,
                     std::span<const double> weights = {});

// Result of the Gamma(P_c) calibration chain. The drive model is
// Omega^2 = kappa P_c, hence Gamma(P_c) = 2 kappa P_c / gamma_1p at Delta=0.
struct PowerCalibration {
    double kappa = 0.0;               // rad^2/s^2 per mW
    double gamma_extrapolated = 0.0;  // rad/s, intercept of gamma+Gamma vs P_c
    std::vector<std::pair<double, double>> s_eta_table; // (P_c mW, S eta_act)

    // Linear interpolation in the table; clamps outside its range.
    double s_eta_at(double power_mw) const;
};

// Fits each spectrum's generation line, converts fitted FWHM/2 to
// gamma + Gamma(P_c), and linear-fits against P_c: intercept -> gamma,
// slope -> kappa = slope * gamma_1p / 2. Spectra must be taken at Delta=0.
PowerCalibration calibrate_power(
    const MediumParams& medium,
    const std::vector<std::pair<double, Spectrum>>& spectra_by_power);

// Extracts S eta_act per power from the on-resonance generated amplitude via
// |t_s| ~ e^{-d} (S eta_act) Gamma / (2 (gamma + Gamma)), using d from the
// medium and the rates from `cal`. Valid only for weak EIT (|Sf| <= 0.3).
std::vector<std::pair<double, double>> calibrate_s_eta(
    const MediumParams& medium,
    const std::vector<std::pair<double, Spectrum>>& spectra_by_power,
    const PowerCalibration& cal);

} // namespace dvlight

#endif
