#ifndef DVLIGHT_UNITS_HPP
#define DVLIGHT_UNITS_HPP

// Unit convention used throughout: every rate, detuning and linewidth is an
// ANGULAR frequency in rad/s internally. Hz appears only at the I/O boundary
// (config files, CSV columns, reported FWHM values). Lengths are mm, times
// are seconds, diffusion coefficients mm^2/s.

namespace dvlight {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double hz_to_rad_s(double hz) { return two_pi * hz; }
inline constexpr double rad_s_to_hz(double w) { return w / two_pi; }

// Reported linewidths are FWHM in Hz. The Raman line has half-width
// gamma + Re Gamma in rad/s, so FWHM = 2 (gamma + Re Gamma) / (2 pi).
inline constexpr double fwhm_hz_from_halfwidth(double halfwidth_rad_s) {
    return 2.0 * halfwidth_rad_s / two_pi;
}
inline constexpr double halfwidth_from_fwhm_hz(double fwhm_hz) {
    return fwhm_hz * two_pi / 2.0;
}

} // namespace dvlight

#endif
