#include "dvlight/scenarios.hpp"
#include "dvlight/csv.hpp"
#include "dvlight/errors.hpp"
#include "dvlight/fitting.hpp"
#include "dvlight/units.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

namespace dvlight {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using csv::format_double;

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads)
                    fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

struct Emitter {
    fs::path dir;
    std::vector<std::string> files;
    json outputs = json::array();

    void table(const std::string& name, const csv::Table& t) {
        csv::write_file((dir / name).string(), t);
        files.push_back(name);
        outputs.push_back({{"file", name}, {"columns", t.header}});
    }
};

const char* axis_column(SweepAxis kind) {
    switch (kind) {
    case SweepAxis::power: return "P_c_mW";
    case SweepAxis::detuning: return "Delta_rad_s";
    case SweepAxis::rabi: return "omega_rabi_rad_s";
    }
    return "axis";
}

csv::Table spectrum_table(const Spectrum& s) {
    csv::Table t;
    t.header = {"omega_rad_s", "power_probe", "power_signal"};
    for (std::size_t i = 0; i < s.grid.count; ++i)
        t.add_row({format_double(s.grid.omega(i)), format_double(s.power_probe[i]),
                   format_double(s.power_signal[i])});
    return t;
}

csv::Table beam_table(const BeamProfile& b) {
    csv::Table t;
    t.header = {"N", "pitch_mm"};
    t.add_row({format_double(static_cast<double>(b.n)), format_double(b.pitch)});
    t.add_row({"real", "imag"});
    for (const cplx& v : b.samples)
        t.add_row({format_double(v.real()), format_double(v.imag())});
    return t;
}

json lorentzian_json(const LorentzianFit& f) {
    return {{"amplitude", f.amplitude},
            {"center_rad_s", f.center},
            {"fwhm_rad_s", f.fwhm},
            {"fwhm_hz", rad_s_to_hz(f.fwhm)},
            {"baseline", f.baseline},
            {"rms_residual", f.rms_residual},
            {"converged", f.converged}};
}

// ---- per-scenario bodies -------------------------------------------------

void run_spectrum(const ScenarioConfig& c, Emitter& em, json& results,
                  std::vector<std::string>& warnings) {
    const DriveState drive = c.drives.front();
    const FrequencyGrid grid = default_grid(c.medium, drive, c.spectrum_grid.half_linewidths,
                                            c.spectrum_grid.points);
    const Spectrum s = scan_spectrum(c.medium, drive, grid);
    em.table("spectrum.csv", spectrum_table(s));

    const std::vector<double> omegas = grid.omegas();
    const LorentzianFit fit = fit_lorentzian(omegas, s.power_signal);
    results["signal_line"] = lorentzian_json(fit);
    results["asymmetry_signal"] = lineshape_asymmetry(s.power_signal, grid);
    results["asymmetry_probe"] = lineshape_asymmetry(s.power_probe, grid);
    results["beta_peak"] =
        *std::max_element(s.power_signal.begin(), s.power_signal.end());
    const auto cp = contrast_sweep(c.medium, {drive}, c.contrast.off_resonance_omega,
                                   c.contrast.noise_floor, &warnings);
    results["probe_contrast"] = cp.front().probe;
    results["signal_contrast"] = cp.front().signal;
}

void run_contrast(const ScenarioConfig& c, Emitter& em, json& results,
                  std::vector<std::string>& warnings) {
    const auto with_floor = contrast_sweep(c.medium, c.drives, c.contrast.off_resonance_omega,
                                           c.contrast.noise_floor, &warnings);
    const auto zero_floor =
        contrast_sweep(c.medium, c.drives, c.contrast.off_resonance_omega, 0.0, nullptr);
    csv::Table t;
    t.header = {axis_column(c.axis_kind), "probe_contrast", "signal_contrast",
                "signal_contrast_zero_floor"};
    for (std::size_t i = 0; i < c.drives.size(); ++i)
        t.add_row({format_double(c.axis[i]), format_double(with_floor[i].probe),
                   format_double(with_floor[i].signal), format_double(zero_floor[i].signal)});
    em.table("contrast.csv", t);

    double pmin = 1.0, pmax = 0.0, smin = 1.0;
    for (std::size_t i = 0; i < with_floor.size(); ++i) {
        pmin = std::min(pmin, with_floor[i].probe);
        pmax = std::max(pmax, with_floor[i].probe);
        smin = std::min(smin, with_floor[i].signal);
    }
    results["probe_contrast_min"] = pmin;
    results["probe_contrast_max"] = pmax;
    results["signal_contrast_min"] = smin;
    results["noise_floor"] = c.contrast.noise_floor;
}

void run_delay(const ScenarioConfig& c, Emitter& em, json& results, unsigned threads,
               std::vector<std::string>& warnings) {
    csv::Table t;
    t.header = {"P_c_or_Delta", "tau_p_s", "tau_s_s", "method"};
    std::vector<DelayResult> all;
    for (DelayMethod method : c.delay_methods) {
        std::vector<DelayResult> rows(c.drives.size());
        std::vector<std::vector<std::string>> warn_per(c.drives.size());
        parallel_for(c.drives.size(), threads, [&](std::size_t i) {
            const std::vector<DriveState> one{c.drives[i]};
            const std::vector<double> axis{c.axis[i]};
            rows[i] = delay_sweep(c.medium, one, method, axis, c.pulse_grid, &warn_per[i])
                          .front();
        });
        for (auto& w : warn_per)
            warnings.insert(warnings.end(), w.begin(), w.end());
        all.insert(all.end(), rows.begin(), rows.end());
    }
    for (const DelayResult& r : all)
        t.add_row({format_double(r.axis_value), format_double(r.tau_p),
                   format_double(r.tau_s), to_string(r.method)});
    em.table("delay.csv", t);

    // Headline numbers from the first (usually analytic) method block.
    const std::size_t n = c.drives.size();
    double tau_s_max = 0.0, tau_p_max = 0.0, tau_p_argmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tau_s_max = std::max(tau_s_max, all[i].tau_s);
        if (all[i].tau_p > tau_p_max) {
            tau_p_max = all[i].tau_p;
            tau_p_argmax = all[i].axis_value;
        }
    }
    results["tau_s_max_s"] = tau_s_max;
    results["tau_p_max_s"] = tau_p_max;
    results["tau_p_argmax"] = tau_p_argmax;
}

void run_pulse(const ScenarioConfig& c, Emitter& em, json& results,
               std::vector<std::string>& warnings) {
    const DriveState drive = c.drives.front();
    const PulseDelayMeasurement m =
        measure_pulse_delay(c.medium, drive, c.pulse_grid, &warnings);
    csv::Table t;
    t.header = {"time_s", "input_re", "input_im", "signal_re", "signal_im",
                "probe_re", "probe_im"};
    for (std::size_t i = 0; i < m.output_signal.samples.size(); ++i) {
        const cplx in = i < m.input.samples.size() ? m.input.samples[i] : cplx(0.0);
        t.add_row({format_double(m.output_signal.time(i)), format_double(in.real()),
                   format_double(in.imag()), format_double(m.output_signal.samples[i].real()),
                   format_double(m.output_signal.samples[i].imag()),
                   format_double(m.output_probe.samples[i].real()),
                   format_double(m.output_probe.samples[i].imag())});
    }
    em.table("pulse.csv", t);
    results["tau_s_centroid_s"] = m.tau_s;
    results["tau_p_centroid_s"] = m.tau_p;
    results["tau_s_analytic_s"] = analytic_tau_s(c.medium, drive);
    results["tau_p_analytic_s"] = analytic_tau_p(c.medium, drive);
}

void run_beam(const ScenarioConfig& c, Emitter& em, json& results,
              std::vector<std::string>& warnings) {
    const DriveState drive = c.drives.front();
    const BeamProfile in =
        make_gaussian_beam(c.beam_grid.n, c.beam_grid.pitch_mm, c.beam_grid.w_in_mm);
    const BeamProfile out =
        propagate_beam(in, c.medium, drive, 0.0, c.beam_grid.filter, &warnings);
    em.table("beam_in.csv", beam_table(in));
    em.table("beam_out.csv", beam_table(out));
    const WidthMeasurement min = fit_gaussian_width(in);
    const WidthMeasurement mout = fit_gaussian_width(out);
    const double tau_s = analytic_tau_s(c.medium, drive);
    results["w_in_fit_mm"] = min.w;
    results["w_out_fit_mm"] = mout.w;
    results["overlap_in"] = min.gaussian_overlap;
    results["overlap_out"] = mout.gaussian_overlap;
    results["tau_s_s"] = tau_s;
    results["w2_out_predicted_mm2"] =
        c.beam_grid.w_in_mm * c.beam_grid.w_in_mm + 4.0 * c.medium.diffusion * tau_s;
}

void run_fig4(const ScenarioConfig& c, Emitter& em, json& results, unsigned threads,
              std::vector<std::string>& warnings) {
    const BeamProfile in =
        make_gaussian_beam(c.beam_grid.n, c.beam_grid.pitch_mm, c.beam_grid.w_in_mm);
    em.table("beam_in.csv", beam_table(in));

    const std::size_t n = c.drives.size();
    std::vector<DiffusionPoint> points(n);
    std::vector<double> overlaps(n);
    std::vector<std::vector<std::string>> warn_per(n);
    BeamProfile last_out;
    parallel_for(n, threads, [&](std::size_t i) {
        const BeamProfile out = propagate_beam(in, c.medium, c.drives[i], 0.0,
                                               c.beam_grid.filter, &warn_per[i]);
        const WidthMeasurement m = fit_gaussian_width(out);
        points[i] = {analytic_tau_s(c.medium, c.drives[i]), m.w * m.w};
        overlaps[i] = m.gaussian_overlap;
        if (i + 1 == n)
            last_out = out;
    });
    for (auto& w : warn_per)
        warnings.insert(warnings.end(), w.begin(), w.end());
    em.table("beam_out_last.csv", beam_table(last_out));

    csv::Table t;
    t.header = {"tau_s_s", "w2_mm2"};
    std::vector<double> taus, w2s;
    for (const DiffusionPoint& p : points) {
        t.add_row({format_double(p.tau_s), format_double(p.w2)});
        taus.push_back(p.tau_s);
        w2s.push_back(p.w2);
    }
    em.table("widths.csv", t);

    const LinearFit fit = linear_fit(taus, w2s);
    results["fitted_D_mm2_s"] = fit.slope / 4.0;
    results["intercept_w2_mm2"] = fit.intercept;
    results["r_squared"] = fit.r_squared;
    results["min_gaussian_overlap"] = *std::min_element(overlaps.begin(), overlaps.end());
    results["true_D_mm2_s"] = c.medium.diffusion;
    json area = json::array();
    for (double w2 : w2s)
        area.push_back(pi * w2); // both w^2 and pi w^2 are reported
    results["pi_w2_mm2"] = area;
}

void run_calibrate(const ScenarioConfig& c, Emitter& em, json& results,
                   std::vector<std::string>& warnings) {
    (void)warnings;
    if (c.axis_kind != SweepAxis::power)
        throw config_error("calibrate scenario needs control_power_mw drives");
    std::vector<std::pair<double, Spectrum>> by_power;
    by_power.reserve(c.drives.size());
    for (std::size_t i = 0; i < c.drives.size(); ++i) {
        const FrequencyGrid grid = default_grid(c.medium, c.drives[i],
                                                c.spectrum_grid.half_linewidths,
                                                c.spectrum_grid.points);
        by_power.emplace_back(c.axis[i], scan_spectrum(c.medium, c.drives[i], grid));
    }
    const PowerCalibration cal = calibrate_power(c.medium, by_power);
    const auto s_eta = calibrate_s_eta(c.medium, by_power, cal);

    csv::Table lw;
    lw.header = {"P_c_mW", "value"};
    for (const auto& [p, spec] : by_power) {
        const std::vector<double> omegas = spec.grid.omegas();
        const LorentzianFit f = fit_lorentzian(omegas, spec.power_signal);
        lw.add_row({format_double(p), format_double(f.fwhm / 2.0)});
    }
    em.table("linewidth_table.csv", lw);

    csv::Table se;
    se.header = {"P_c_mW", "value"};
    for (const auto& [p, v] : s_eta)
        se.add_row({format_double(p), format_double(v)});
    em.table("s_eta_table.csv", se);

    results["kappa_recovered"] = cal.kappa;
    results["gamma_recovered_rad_s"] = cal.gamma_extrapolated;
    results["gamma_true_rad_s"] = c.medium.gamma;
    if (c.kappa > 0.0) {
        results["kappa_true"] = c.kappa;
        results["kappa_rel_error"] = std::abs(cal.kappa - c.kappa) / c.kappa;
    }
    results["gamma_rel_error"] =
        std::abs(cal.gamma_extrapolated - c.medium.gamma) / c.medium.gamma;
    results["s_eta_true"] = c.medium.half_optical_depth * c.medium.eta_act;
}

} // namespace

RunResult run_scenario(const ScenarioConfig& config, unsigned threads) {
    if (config.drives.empty())
        throw config_error("run_scenario: empty drive list");

    Emitter em;
    em.dir = fs::path(config.out_dir);
    fs::create_directories(em.dir);

    {
        std::ofstream f(em.dir / "effective_config.json", std::ios::binary | std::ios::trunc);
        if (!f)
            throw config_error("cannot write effective_config.json in " + config.out_dir);
        f << config.effective.dump(2) << '\n';
        em.files.push_back("effective_config.json");
    }

    json results;
    std::vector<std::string> warnings;
    try {
        if (config.scenario == "spectrum" || config.scenario == "fig2a")
            run_spectrum(config, em, results, warnings);
        else if (config.scenario == "contrast" || config.scenario == "fig2b")
            run_contrast(config, em, results, warnings);
        else if (config.scenario == "delay" || config.scenario == "fig3a" ||
                 config.scenario == "fig3b")
            run_delay(config, em, results, threads, warnings);
        else if (config.scenario == "pulse")
            run_pulse(config, em, results, warnings);
        else if (config.scenario == "beam")
            run_beam(config, em, results, warnings);
        else if (config.scenario == "fig4")
            run_fig4(config, em, results, threads, warnings);
        else if (config.scenario == "calibrate")
            run_calibrate(config, em, results, warnings);
        else
            throw config_error("unhandled scenario '" + config.scenario + "'");
    } catch (const std::exception& e) {
        std::ofstream f(em.dir / "FAILED.txt", std::ios::binary | std::ios::trunc);
        f << config.scenario << " failed: " << e.what() << '\n';
        throw;
    }

    RunResult r;
    r.summary["scenario"] = config.scenario;
    r.summary["outputs"] = em.outputs;
    r.summary["results"] = results;
    r.summary["warnings"] = warnings;
    {
        std::ofstream f(em.dir / "summary.json", std::ios::binary | std::ios::trunc);
        if (!f)
            throw config_error("cannot write summary.json in " + config.out_dir);
        f << r.summary.dump(2) << '\n';
        em.files.push_back("summary.json");
    }
    r.files = em.files;
    return r;
}

} // namespace dvlight
