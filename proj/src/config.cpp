#include "dvlight/config.hpp"
#include "dvlight/errors.hpp"
#include "dvlight/units.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dvlight {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw config_error("config." + path + ": " + msg);
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object())
        fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            fail(path + "." + it.key(), "unknown key (units must be explicit: use the "
                                        "listed _rad_s/_hz suffixed keys)");
    }
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number())
        fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& path, const std::string& key,
                 double fallback) {
    if (!obj.contains(key))
        return fallback;
    return get_number(obj, path, key);
}

std::vector<double> get_number_list(const json& v, const std::string& path) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number())
                fail(path, "expected numbers in the array");
            out.push_back(e.get<double>());
        }
    } else {
        fail(path, "expected a number or an array of numbers");
    }
    return out;
}

// Exactly one of <base>_rad_s / <base>_hz; returns rad/s values.
std::vector<double> rate_list(const json& obj, const std::string& path,
                              const std::string& base, bool required,
                              std::vector<double> fallback = {}) {
    const std::string k_rad = base + "_rad_s";
    const std::string k_hz = base + "_hz";
    const bool has_rad = obj.contains(k_rad);
    const bool has_hz = obj.contains(k_hz);
    if (has_rad && has_hz)
        fail(path, "give " + base + " either in rad/s or in Hz, not both");
    if (!has_rad && !has_hz) {
        if (required)
            fail(path, "missing " + k_rad + " (or " + k_hz + ")");
        return fallback;
    }
    std::vector<double> v = has_rad ? get_number_list(obj.at(k_rad), path + "." + k_rad)
                                    : get_number_list(obj.at(k_hz), path + "." + k_hz);
    if (has_hz)
        for (double& x : v)
            x = hz_to_rad_s(x);
    return v;
}

double rate_scalar(const json& obj, const std::string& path, const std::string& base,
                   bool required, double fallback = 0.0) {
    auto v = rate_list(obj, path, base, required, {fallback});
    if (v.size() != 1)
        fail(path, base + " must be a single number here");
    return v[0];
}

} // namespace

bool known_scenario(const std::string& name) {
    static const std::set<std::string> names = {"spectrum", "contrast", "delay", "pulse",
                                                "beam",     "calibrate", "fig2a", "fig2b",
                                                "fig3a",    "fig3b",     "fig4"};
    return names.count(name) > 0;
}

ScenarioConfig validate_config(const nlohmann::json& raw) {
    ScenarioConfig c;
    require_keys(raw, "",
                 {"scenario", "out_dir", "medium", "drive", "spectrum_grid", "pulse_grid",
                  "beam_grid", "contrast", "delay_methods", "s_eta_table_csv"});

    if (!raw.contains("scenario") || !raw.at("scenario").is_string())
        fail("scenario", "missing scenario name");
    c.scenario = raw.at("scenario").get<std::string>();
    if (!known_scenario(c.scenario))
        fail("scenario", "unknown scenario '" + c.scenario + "'");

    if (raw.contains("out_dir")) {
        if (!raw.at("out_dir").is_string())
            fail("out_dir", "expected a string");
        c.out_dir = raw.at("out_dir").get<std::string>();
    }

    // ---- medium ----
    if (!raw.contains("medium"))
        fail("medium", "missing section");
    const json& jm = raw.at("medium");
    require_keys(jm, "medium",
                 {"half_optical_depth", "gamma_1p_rad_s", "gamma_1p_hz", "gamma_rad_s",
                  "gamma_hz", "eta_act", "diffusion_mm2_s"});
    if (!jm.contains("half_optical_depth"))
        fail("medium.half_optical_depth", "missing");
    c.medium.half_optical_depth = get_number(jm, "medium", "half_optical_depth");
    c.medium.gamma_1p = rate_scalar(jm, "medium", "gamma_1p", true);
    c.medium.gamma = rate_scalar(jm, "medium", "gamma", true);
    if (!jm.contains("eta_act"))
        fail("medium.eta_act", "missing");
    c.medium.eta_act = get_number(jm, "medium", "eta_act");
    c.medium.diffusion = number_or(jm, "medium", "diffusion_mm2_s", 0.0);
    try {
        validate(c.medium);
    } catch (const invalid_parameter_error& e) {
        fail("medium", e.what());
    }

    // ---- drive ----
    if (!raw.contains("drive"))
        fail("drive", "missing section");
    const json& jd = raw.at("drive");
    require_keys(jd, "drive",
                 {"delta_rad_s", "delta_hz", "omega_rabi_rad_s", "control_power_mw",
                  "kappa_rad2_s2_per_mw"});
    std::vector<double> deltas = rate_list(jd, "drive", "delta", false, {0.0});
    if (deltas.empty())
        fail("drive.delta_rad_s", "empty detuning list");

    const bool has_rabi = jd.contains("omega_rabi_rad_s");
    const bool has_power = jd.contains("control_power_mw");
    if (has_rabi == has_power)
        fail("drive", "give exactly one of omega_rabi_rad_s or control_power_mw");

    std::vector<double> rabis;
    std::vector<double> powers;
    if (has_rabi) {
        rabis = get_number_list(jd.at("omega_rabi_rad_s"), "drive.omega_rabi_rad_s");
        if (rabis.empty())
            fail("drive.omega_rabi_rad_s", "empty drive list");
    } else {
        powers = get_number_list(jd.at("control_power_mw"), "drive.control_power_mw");
        if (powers.empty())
            fail("drive.control_power_mw", "empty drive list");
        if (!jd.contains("kappa_rad2_s2_per_mw"))
            fail("drive.kappa_rad2_s2_per_mw", "required with control_power_mw "
                                               "(Omega^2 = kappa P_c)");
        c.kappa = get_number(jd, "drive", "kappa_rad2_s2_per_mw");
        if (!(c.kappa > 0.0))
            fail("drive.kappa_rad2_s2_per_mw", "must be > 0");
        rabis.reserve(powers.size());
        for (double p : powers) {
            if (!(p >= 0.0))
                fail("drive.control_power_mw", "powers must be >= 0");
            rabis.push_back(std::sqrt(c.kappa * p));
        }
    }

    const std::size_t n_drive = rabis.size();
    const std::size_t n_delta = deltas.size();
    if (n_drive > 1 && n_delta > 1)
        fail("drive", "either the drive strength or the detuning may be a sweep, not both");

    const std::size_t n = std::max(n_drive, n_delta);
    c.drives.reserve(n);
    c.axis.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        DriveState d;
        d.omega_rabi = rabis[n_drive > 1 ? i : 0];
        d.delta = deltas[n_delta > 1 ? i : 0];
        try {
            validate(d);
        } catch (const invalid_parameter_error& e) {
            fail("drive", e.what());
        }
        c.drives.push_back(d);
        if (n_delta > 1) {
            c.axis_kind = SweepAxis::detuning;
            c.axis.push_back(d.delta);
        } else if (has_power) {
            c.axis_kind = SweepAxis::power;
            c.axis.push_back(powers[n_drive > 1 ? i : 0]);
        } else {
            c.axis_kind = SweepAxis::rabi;
            c.axis.push_back(d.omega_rabi);
        }
    }

    // ---- grids ----
    if (raw.contains("spectrum_grid")) {
        const json& g = raw.at("spectrum_grid");
        require_keys(g, "spectrum_grid", {"half_linewidths", "points"});
        c.spectrum_grid.half_linewidths = number_or(g, "spectrum_grid", "half_linewidths",
                                                    c.spectrum_grid.half_linewidths);
        if (!(c.spectrum_grid.half_linewidths > 0.0))
            fail("spectrum_grid.half_linewidths", "must be > 0");
        const double pts =
            number_or(g, "spectrum_grid", "points", static_cast<double>(c.spectrum_grid.points));
        if (!(pts >= 3.0) || pts != std::floor(pts))
            fail("spectrum_grid.points", "must be an integer >= 3");
        c.spectrum_grid.points = static_cast<std::size_t>(pts);
    }

    if (raw.contains("pulse_grid")) {
        const json& g = raw.at("pulse_grid");
        require_keys(g, "pulse_grid",
                     {"duration_over_tau_s", "window_over_duration", "samples_per_duration"});
        c.pulse_grid.duration_over_tau_s =
            number_or(g, "pulse_grid", "duration_over_tau_s", c.pulse_grid.duration_over_tau_s);
        c.pulse_grid.window_over_duration =
            number_or(g, "pulse_grid", "window_over_duration", c.pulse_grid.window_over_duration);
        const double spd = number_or(g, "pulse_grid", "samples_per_duration",
                                     static_cast<double>(c.pulse_grid.samples_per_duration));
        if (!(c.pulse_grid.duration_over_tau_s > 0.0))
            fail("pulse_grid.duration_over_tau_s", "must be > 0");
        if (!(c.pulse_grid.window_over_duration > 2.0))
            fail("pulse_grid.window_over_duration", "must be > 2");
        if (!(spd >= 8.0) || spd != std::floor(spd))
            fail("pulse_grid.samples_per_duration", "must be an integer >= 8");
        c.pulse_grid.samples_per_duration = static_cast<std::size_t>(spd);
    }

    if (raw.contains("beam_grid")) {
        const json& g = raw.at("beam_grid");
        require_keys(g, "beam_grid", {"n", "pitch_mm", "w_in_mm", "k_filter"});
        const double bn = number_or(g, "beam_grid", "n", static_cast<double>(c.beam_grid.n));
        if (!(bn >= 2.0) || bn != std::floor(bn) ||
            (static_cast<std::size_t>(bn) & (static_cast<std::size_t>(bn) - 1)) != 0)
            fail("beam_grid.n", "must be a power of two >= 2");
        c.beam_grid.n = static_cast<std::size_t>(bn);
        c.beam_grid.pitch_mm = number_or(g, "beam_grid", "pitch_mm", c.beam_grid.pitch_mm);
        c.beam_grid.w_in_mm = number_or(g, "beam_grid", "w_in_mm", c.beam_grid.w_in_mm);
        if (!(c.beam_grid.pitch_mm > 0.0))
            fail("beam_grid.pitch_mm", "must be > 0");
        if (!(c.beam_grid.w_in_mm > 0.0))
            fail("beam_grid.w_in_mm", "must be > 0");
        if (g.contains("k_filter")) {
            const json& kf = g.at("k_filter");
            if (!kf.is_string() ||
                (kf.get<std::string>() != "exact" && kf.get<std::string>() != "gaussian"))
                fail("beam_grid.k_filter", "must be \"exact\" or \"gaussian\"");
            c.beam_grid.filter =
                kf.get<std::string>() == "exact" ? KFilter::exact : KFilter::gaussian;
        }
    }

    if (raw.contains("contrast")) {
        const json& g = raw.at("contrast");
        require_keys(g, "contrast", {"noise_floor", "off_resonance_omega_rad_s",
                                     "off_resonance_omega_hz"});
        c.contrast.noise_floor = number_or(g, "contrast", "noise_floor", 0.0);
        if (!(c.contrast.noise_floor >= 0.0))
            fail("contrast.noise_floor", "must be >= 0");
        const bool has_rad = g.contains("off_resonance_omega_rad_s");
        const bool has_hz = g.contains("off_resonance_omega_hz");
        if (has_rad || has_hz) {
            const json& v = has_rad ? g.at("off_resonance_omega_rad_s")
                                    : g.at("off_resonance_omega_hz");
            if (v.is_string() && v.get<std::string>() == "inf") {
                c.contrast.off_resonance_omega = std::numeric_limits<double>::infinity();
            } else if (v.is_number()) {
                c.contrast.off_resonance_omega =
                    has_rad ? v.get<double>() : hz_to_rad_s(v.get<double>());
            } else {
                fail("contrast.off_resonance_omega", "expected a number or \"inf\"");
            }
        }
    }

    if (raw.contains("delay_methods")) {
        const json& g = raw.at("delay_methods");
        if (!g.is_array() || g.empty())
            fail("delay_methods", "expected a non-empty array");
        c.delay_methods.clear();
        for (const auto& e : g) {
            if (!e.is_string())
                fail("delay_methods", "expected strings");
            const std::string s = e.get<std::string>();
            if (s == "analytic")
                c.delay_methods.push_back(DelayMethod::analytic);
            else if (s == "numeric")
                c.delay_methods.push_back(DelayMethod::numeric);
            else if (s == "pulse")
                c.delay_methods.push_back(DelayMethod::pulse_centroid);
            else
                fail("delay_methods", "unknown method '" + s + "'");
        }
    }

    if (raw.contains("s_eta_table_csv") && !raw.at("s_eta_table_csv").is_null()) {
        if (!raw.at("s_eta_table_csv").is_string())
            fail("s_eta_table_csv", "expected a path string");
        c.s_eta_table_csv = raw.at("s_eta_table_csv").get<std::string>();
    }

    // ---- effective (defaults resolved, canonical units) ----
    json eff;
    eff["scenario"] = c.scenario;
    eff["out_dir"] = c.out_dir;
    eff["medium"] = {{"half_optical_depth", c.medium.half_optical_depth},
                     {"gamma_1p_rad_s", c.medium.gamma_1p},
                     {"gamma_rad_s", c.medium.gamma},
                     {"eta_act", c.medium.eta_act},
                     {"diffusion_mm2_s", c.medium.diffusion}};
    {
        json drv;
        json rabi = json::array();
        for (const DriveState& d : c.drives)
            rabi.push_back(d.omega_rabi);
        json del = json::array();
        for (const DriveState& d : c.drives)
            del.push_back(d.delta);
        drv["omega_rabi_rad_s"] = rabi;
        drv["delta_rad_s"] = del;
        if (c.axis_kind == SweepAxis::power) {
            drv["control_power_mw"] = c.axis;
            drv["kappa_rad2_s2_per_mw"] = c.kappa;
        }
        eff["drive"] = drv;
    }
    eff["spectrum_grid"] = {{"half_linewidths", c.spectrum_grid.half_linewidths},
                            {"points", c.spectrum_grid.points}};
    eff["pulse_grid"] = {{"duration_over_tau_s", c.pulse_grid.duration_over_tau_s},
                         {"window_over_duration", c.pulse_grid.window_over_duration},
                         {"samples_per_duration", c.pulse_grid.samples_per_duration}};
    eff["beam_grid"] = {{"n", c.beam_grid.n},
                        {"pitch_mm", c.beam_grid.pitch_mm},
                        {"w_in_mm", c.beam_grid.w_in_mm},
                        {"k_filter", c.beam_grid.filter == KFilter::exact ? "exact" : "gaussian"}};
    eff["contrast"] = {{"noise_floor", c.contrast.noise_floor},
                       {"off_resonance_omega_rad_s",
                        std::isfinite(c.contrast.off_resonance_omega)
                            ? json(c.contrast.off_resonance_omega)
                            : json("inf")}};
    {
        json methods = json::array();
        for (DelayMethod m : c.delay_methods)
            methods.push_back(m == DelayMethod::analytic  ? "analytic"
                              : m == DelayMethod::numeric ? "numeric"
                                                          : "pulse");
        eff["delay_methods"] = methods;
    }
    if (c.s_eta_table_csv)
        eff["s_eta_table_csv"] = *c.s_eta_table_csv;
    c.effective = std::move(eff);
    return c;
}

namespace {

// Shared experiment-like constants for the built-in scenarios.
constexpr double kGamma1p = two_pi * 300e6;      // rad/s
constexpr double kGamma3ms = 1.0 / 3e-3;         // rad/s
const double kKappa = 5.0 * kGamma3ms * kGamma1p; // Gamma(2 mW) = 20 gamma at Delta=0

json base_medium(double d, double gamma, double eta, double diffusion) {
    return {{"half_optical_depth", d},
            {"gamma_1p_rad_s", kGamma1p},
            {"gamma_rad_s", gamma},
            {"eta_act", eta},
            {"diffusion_mm2_s", diffusion}};
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

std::vector<double> lin_spaced(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

} // namespace

nlohmann::json builtin_scenario(const std::string& name) {
    if (!known_scenario(name))
        throw config_error("unknown scenario '" + name + "'");
    json j;
    j["scenario"] = name;
    j["medium"] = base_medium(2.5, kGamma3ms, 0.5, 1050.0);
    j["drive"] = {{"delta_rad_s", 0.0},
                  {"control_power_mw", 0.14},
                  {"kappa_rad2_s2_per_mw", kKappa}};

    if (name == "fig2a" || name == "spectrum") {
        // 230 Hz generation line at large one-photon detuning; small eta_act
        // keeps |Sf| weak so the fitted width tracks gamma + Re Gamma.
        const double delta = name == "fig2a" ? two_pi * 880e6 : 0.0;
        j["medium"] = base_medium(2.5, kGamma3ms, 0.02, 1050.0);
        const double re_gamma_target = pi * 230.0 - kGamma3ms;
        const double omega2 =
            re_gamma_target * (kGamma1p * kGamma1p + delta * delta) / (2.0 * kGamma1p);
        j["drive"] = {{"delta_rad_s", delta}, {"omega_rabi_rad_s", std::sqrt(omega2)}};
    } else if (name == "fig2b" || name == "contrast") {
        j["drive"] = {{"delta_rad_s", 0.0},
                      {"control_power_mw", log_spaced(1e-4, 2.0, 25)},
                      {"kappa_rad2_s2_per_mw", kKappa}};
        j["contrast"] = {{"noise_floor", 0.0}, {"off_resonance_omega_rad_s", "inf"}};
    } else if (name == "fig3a" || name == "delay") {
        j["drive"] = {{"delta_rad_s", 0.0},
                      {"control_power_mw", log_spaced(1e-3, 2.0, 25)},
                      {"kappa_rad2_s2_per_mw", kKappa}};
        j["delay_methods"] = {"analytic", "numeric", "pulse"};
        j["pulse_grid"] = {{"duration_over_tau_s", 40.0}};
    } else if (name == "fig3b") {
        // Fixed weak drive, Gamma(Delta=0) = 0.2 gamma, detuning scan.
        const double omega2 = 0.1 * kGamma3ms * kGamma1p;
        j["drive"] = {{"delta_rad_s", lin_spaced(-two_pi * 1e9, two_pi * 1e9, 41)},
                      {"omega_rabi_rad_s", std::sqrt(omega2)}};
        j["delay_methods"] = {"analytic", "numeric"};
    } else if (name == "fig4" || name == "beam") {
        // Long-lived coherence and weak EIT: the beam picks up the pure
        // diffusion filter and the w^2 law stays linear over tau_s.
        const double gamma = 1.0 / 30e-3;
        j["medium"] = base_medium(2.5, gamma, 0.002, 1050.0);
        std::vector<double> rabi;
        for (double tau : {0.5e-3, 1e-3, 2e-3, 3e-3})
            rabi.push_back(std::sqrt((1.0 / tau - gamma) * kGamma1p / 2.0));
        if (name == "beam")
            rabi.resize(1);
        j["drive"] = {{"delta_rad_s", 0.0}, {"omega_rabi_rad_s", rabi}};
        j["beam_grid"] = {{"n", 256}, {"pitch_mm", 0.0625}, {"w_in_mm", 0.5},
                          {"k_filter", "gaussian"}};
    } else if (name == "calibrate") {
        j["medium"] = base_medium(0.5, kGamma3ms, 0.02, 1050.0);
        j["drive"] = {{"delta_rad_s", 0.0},
                      {"control_power_mw", json::array({0.005, 0.01, 0.02, 0.05, 0.1, 0.2})},
                      {"kappa_rad2_s2_per_mw", kKappa}};
    } else if (name == "pulse") {
        j["drive"] = {{"delta_rad_s", 0.0},
                      {"control_power_mw", 0.01},
                      {"kappa_rad2_s2_per_mw", kKappa}};
        j["pulse_grid"] = {{"duration_over_tau_s", 40.0}};
    }
    return j;
}

} // namespace dvlight
