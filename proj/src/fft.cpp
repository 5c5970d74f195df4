#include "dvlight/fft.hpp"
#include "dvlight/units.hpp"

#include <fftw3.h>

#include <mutex>

namespace dvlight::fft {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void run_1d(std::vector<std::complex<double>>& data, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

void run_2d(std::vector<std::complex<double>>& data, std::size_t n, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf, buf, sign,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

} // namespace

void analysis(std::vector<std::complex<double>>& data) {
    run_1d(data, FFTW_BACKWARD); // FFTW backward = e^{+2pi i kn/N}
}

void synthesis(std::vector<std::complex<double>>& data) {
    run_1d(data, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data)
        v *= scale;
}

void analysis_2d(std::vector<std::complex<double>>& data, std::size_t n) {
    run_2d(data, n, FFTW_BACKWARD);
}

void synthesis_2d(std::vector<std::complex<double>>& data, std::size_t n) {
    run_2d(data, n, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data)
        v *= scale;
}

double bin_frequency(std::size_t k, std::size_t n, double step) {
    const auto nn = static_cast<double>(n);
    double kk = static_cast<double>(k);
    if (k > n / 2)
        kk -= nn;
    return two_pi * kk / (nn * step);
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

} // namespace dvlight::fft
