#include "dvlight/transverse.hpp"
#include "dvlight/detail/levmar.hpp"
#include "dvlight/errors.hpp"
#include "dvlight/fft.hpp"
#include "dvlight/temporal.hpp"

#include <algorithm>
#include <cmath>

namespace dvlight {

double BeamProfile::total_power() const {
    double p = 0.0;
    for (const cplx& v : samples)
        p += std::norm(v);
    return p;
}

void validate(const BeamProfile& b) {
    if (!(b.pitch > 0.0))
        throw invalid_parameter_error("beam pitch must be > 0");
    if (b.n < 2 || (b.n & (b.n - 1)) != 0)
        throw invalid_parameter_error("beam grid size must be a power of two >= 2");
    if (b.samples.size() != b.n * b.n)
        throw invalid_parameter_error("beam sample count does not match n*n");
}

BeamProfile make_gaussian_beam(std::size_t n, double pitch_mm, double w_field_mm) {
    if (!(w_field_mm > 0.0))
        throw invalid_parameter_error("make_gaussian_beam: width must be > 0");
    BeamProfile b;
    b.pitch = pitch_mm;
    b.n = n;
    b.samples.resize(n * n);
    validate(b);
    const double c = static_cast<double>(n) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = (static_cast<double>(i) - c) * pitch_mm;
        for (std::size_t j = 0; j < n; ++j) {
            const double x = (static_cast<double>(j) - c) * pitch_mm;
            b.at(i, j) = std::exp(-(x * x + y * y) / (w_field_mm * w_field_mm));
        }
    }
    return b;
}

cplx f_k(const MediumParams& medium, cplx gamma_power, double omega, double k) {
    if (gamma_power == cplx(0.0, 0.0))
        return {0.0, 0.0};
    const double dk2 = medium.diffusion * k * k;
    const double pole = medium.gamma + gamma_power.real() + dk2;
    if (!(pole > 0.0))
        throw degenerate_pole_error("f_k: gamma + Re Gamma + D k^2 must be > 0");
    return medium.eta_act * gamma_power / (cplx(medium.gamma + dk2, -omega) + gamma_power);
}

cplx f_k_gaussian(const MediumParams& medium, cplx gamma_power, double omega, double k) {
    const cplx f0 = compute_f(medium, gamma_power, omega);
    const double tau_s = (1.0 / (medium.gamma + gamma_power)).real();
    return f0 * std::exp(-tau_s * medium.diffusion * k * k);
}

namespace {

double edge_power_fraction(const BeamProfile& b) {
    double edge = 0.0;
    const std::size_t n = b.n;
    for (std::size_t j = 0; j < n; ++j)
        edge += std::norm(b.at(0, j)) + std::norm(b.at(n - 1, j));
    for (std::size_t i = 1; i + 1 < n; ++i)
        edge += std::norm(b.at(i, 0)) + std::norm(b.at(i, n - 1));
    return edge / b.total_power();
}

} // namespace

BeamProfile propagate_beam(const BeamProfile& beam_in, const MediumParams& medium,
                           const DriveState& drive, double omega, KFilter filter,
                           std::vector<std::string>* warnings) {
    validate(beam_in);
    validate(medium);
    validate(drive);
    if (!(beam_in.total_power() > 0.0))
        throw zero_energy_error("propagate_beam: input beam has no power");
    if (edge_power_fraction(beam_in) > 1e-6)
        throw edge_leakage_error("propagate_beam: edge power exceeds 1e-6 of total; "
                                 "the beam is not confined to the grid");

    const cplx S = compute_S(medium, drive.delta);
    const cplx gp = compute_Gamma(drive, medium);
    const double hw = medium.gamma + gp.real();

    BeamProfile out = beam_in;
    const std::size_t n = out.n;
    fft::analysis_2d(out.samples, n);

    if (filter == KFilter::gaussian && warnings && medium.diffusion > 0.0) {
        // Dominant |k| of the input spectrum (power-weighted RMS).
        double pk = 0.0, pt = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ky = fft::bin_frequency(i, n, out.pitch);
            for (std::size_t j = 0; j < n; ++j) {
                const double kx = fft::bin_frequency(j, n, out.pitch);
                const double p = std::norm(out.at(i, j));
                pk += p * (kx * kx + ky * ky);
                pt += p;
            }
        }
        if (medium.diffusion * pk / pt > 0.1 * hw)
            warnings->push_back("propagate_beam: D k^2 not small against gamma + Re Gamma "
                                "for the dominant modes; the gaussian filter is out of "
                                "its validity range");
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double ky = fft::bin_frequency(i, n, out.pitch);
        for (std::size_t j = 0; j < n; ++j) {
            const double kx = fft::bin_frequency(j, n, out.pitch);
            const double k = std::sqrt(kx * kx + ky * ky);
            const cplx f = filter == KFilter::exact ? f_k(medium, gp, omega, k)
                                                    : f_k_gaussian(medium, gp, omega, k);
            out.at(i, j) *= transfer_amplitudes(S, f).t_s;
        }
    }
    fft::synthesis_2d(out.samples, n);
    return out;
}

WidthMeasurement fit_gaussian_width(const BeamProfile& beam) {
    validate(beam);
    const std::size_t n = beam.n;
    const double total = beam.total_power();
    if (!(total > 0.0))
        throw zero_energy_error("fit_gaussian_width: beam has no power");

    // Sub-pixel intensity centroid.
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double p = std::norm(beam.at(i, j));
            cy += p * static_cast<double>(i);
            cx += p * static_cast<double>(j);
        }
    cx /= total;
    cy /= total;

    {
        const std::size_t ic = static_cast<std::size_t>(std::lround(cy));
        const std::size_t jc = static_cast<std::size_t>(std::lround(cx));
        if (ic == 0 || ic + 1 >= n || jc == 0 || jc + 1 >= n)
            throw peak_at_edge_error("fit_gaussian_width: intensity centroid on grid edge");
    }

    // Radial bins of width = pitch; abscissa is the mean radius of the
    // pixels in the bin, weight the pixel count.
    const std::size_t nbins = n; // covers the full diagonal
    std::vector<double> sum(nbins, 0.0), rsum(nbins, 0.0);
    std::vector<double> cnt(nbins, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double dx = (static_cast<double>(j) - cx) * beam.pitch;
            const double dy = (static_cast<double>(i) - cy) * beam.pitch;
            const double r = std::sqrt(dx * dx + dy * dy);
            const std::size_t bin = std::min<std::size_t>(
                static_cast<std::size_t>(r / beam.pitch), nbins - 1);
            sum[bin] += std::norm(beam.at(i, j));
            rsum[bin] += r;
            cnt[bin] += 1.0;
        }

    std::vector<double> radius, profile, weight;
    for (std::size_t b = 0; b < nbins; ++b) {
        if (cnt[b] == 0.0)
            continue;
        radius.push_back(rsum[b] / cnt[b]);
        profile.push_back(sum[b] / cnt[b]);
        weight.push_back(cnt[b]);
    }

    // Deterministic initialization: peak bin, e^-2 crossing, tail baseline.
    const double b0 = profile.back();
    const double a0 = *std::max_element(profile.begin(), profile.end()) - b0;
    double w0 = radius.back();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i] - b0 < a0 * std::exp(-2.0)) {
            w0 = std::max(radius[i], beam.pitch);
            break;
        }
    }

    struct GaussModel {
        double value(double r, const std::vector<double>& p) const {
            return p[0] * std::exp(-2.0 * r * r / (p[1] * p[1])) + p[2];
        }
        void gradient(double r, const std::vector<double>& p, std::vector<double>& g) const {
            const double e = std::exp(-2.0 * r * r / (p[1] * p[1]));
            g[0] = e;
            g[1] = p[0] * e * 4.0 * r * r / (p[1] * p[1] * p[1]);
            g[2] = 1.0;
        }
    };
    const auto fitted = detail::levmar_fit(GaussModel{}, {a0, w0, b0}, radius, profile, weight);

    WidthMeasurement m;
    m.w = std::abs(fitted.params[1]);

    // Normalized inner product of fitted vs measured intensity on the grid.
    double dot = 0.0, nf = 0.0, nm = 0.0;
    GaussModel model;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double dx = (static_cast<double>(j) - cx) * beam.pitch;
            const double dy = (static_cast<double>(i) - cy) * beam.pitch;
            const double r = std::sqrt(dx * dx + dy * dy);
            const double fi = model.value(r, fitted.params);
            const double me = std::norm(beam.at(i, j));
            dot += fi * me;
            nf += fi * fi;
            nm += me * me;
        }
    m.gaussian_overlap = dot / std::sqrt(nf * nm);
    if (!(m.gaussian_overlap >= 0.5))
        throw fit_failure_error("fit_gaussian_width: overlap with a Gaussian below 0.5");
    return m;
}

std::vector<DiffusionPoint> diffusion_sweep(const MediumParams& medium,
                                            const std::vector<DriveState>& drives,
                                            const BeamProfile& beam_in, KFilter filter,
                                            std::vector<std::string>* warnings) {
    std::vector<DiffusionPoint> out;
    out.reserve(drives.size());
    for (const DriveState& d : drives) {
        DiffusionPoint p;
        p.tau_s = analytic_tau_s(medium, d);
        const BeamProfile prop = propagate_beam(beam_in, medium, d, 0.0, filter, warnings);
        const WidthMeasurement m = fit_gaussian_width(prop);
        p.w2 = m.w * m.w;
        out.push_back(p);
    }
    return out;
}

} // namespace dvlight
