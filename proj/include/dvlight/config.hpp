#ifndef DVLIGHT_CONFIG_HPP
#define DVLIGHT_CONFIG_HPP

#include "dvlight/model_core.hpp"
#include "dvlight/spectra.hpp"
#include "dvlight/temporal.hpp"
#include "dvlight/transverse.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dvlight {

enum class SweepAxis { rabi, power, detuning };

struct SpectrumGridCfg {
    double half_linewidths = 20.0;
    std::size_t points = 4096;
};

struct BeamGridCfg {
    std::size_t n = 256;
    double pitch_mm = 0.0625;
    double w_in_mm = 0.5;
    KFilter filter = KFilter::exact;
};

struct ContrastCfg {
    double noise_floor = 0.0;
    double off_resonance_omega = std::numeric_limits<double>::infinity(); // rad/s
};

// Fully validated scenario description, all quantities in internal units
// (rad/s, s, mm). `effective` is the resolved document (defaults filled,
// everything in canonical rad/s keys) emitted next to the outputs.
struct ScenarioConfig {
    std::string scenario;
    std::string out_dir = "out";
    MediumParams medium;
    std::vector<DriveState> drives;
    std::vector<double> axis;        // P_c (mW), Delta (rad/s) or Omega (rad/s)
    SweepAxis axis_kind = SweepAxis::rabi;
    double kappa = 0.0;              // rad^2/s^2 per mW; 0 when drives given as Rabi
    SpectrumGridCfg spectrum_grid;
    PulseSettings pulse_grid;
    BeamGridCfg beam_grid;
    ContrastCfg contrast;
    std::vector<DelayMethod> delay_methods{DelayMethod::analytic, DelayMethod::numeric};
    std::optional<std::string> s_eta_table_csv;
    nlohmann::json effective;
};

// Validates a raw JSON document: unknown keys rejected, units explicit
// (every rate key carries a _rad_s or _hz suffix), defaults filled.
// Throws config_error with a field-level message.
ScenarioConfig validate_config(const nlohmann::json& raw);

// Built-in parameter documents for the named scenario or subcommand
// (spectrum, contrast, delay, pulse, beam, calibrate, fig2a, fig2b, fig3a,
// fig3b, fig4). User configs are merge-patched on top.
nlohmann::json builtin_scenario(const std::string& name);

bool known_scenario(const std::string& name);

} // namespace dvlight

#endif
