#ifndef DVLIGHT_FFT_HPP
#define DVLIGHT_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

// Thin re-entrant wrappers around FFTW (plan creation serialized internally).
// Sign convention: `analysis` uses e^{+i omega t} so that envelopes evolve as
// e^{-i omega t} and a transfer factor e^{+i omega tau} delays a pulse by tau.

namespace dvlight::fft {

// In-place 1-D transforms, any length.
void analysis(std::vector<std::complex<double>>& data);           // sum x_n e^{+2pi i kn/N}
void synthesis(std::vector<std::complex<double>>& data);          // (1/N) sum X_k e^{-2pi i kn/N}

// In-place 2-D transforms of an n x n row-major grid.
void analysis_2d(std::vector<std::complex<double>>& data, std::size_t n);
void synthesis_2d(std::vector<std::complex<double>>& data, std::size_t n);

// Angular frequency of bin k for sample spacing `step` (time s or length mm):
// 2 pi k / (N step) for k <= N/2, negative alias above.
double bin_frequency(std::size_t k, std::size_t n, double step);

std::size_t next_pow2(std::size_t n);

} // namespace dvlight::fft

#endif
