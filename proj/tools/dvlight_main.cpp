#include "dvlight/config.hpp"
#include "dvlight/errors.hpp"
#include "dvlight/scenarios.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

int run(const std::string& scenario, const std::string& config_path,
        const std::string& out_dir, unsigned threads) {
    using nlohmann::json;
    json doc;
    try {
        doc = dvlight::builtin_scenario(scenario);
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f)
                throw dvlight::config_error("cannot open config file: " + config_path);
            json user;
            try {
                user = json::parse(f);
            } catch (const json::parse_error& e) {
                throw dvlight::config_error(std::string("config parse error: ") + e.what());
            }
            doc.merge_patch(user);
        }
        doc["scenario"] = scenario;
        if (!out_dir.empty())
            doc["out_dir"] = out_dir;

        const dvlight::ScenarioConfig cfg = dvlight::validate_config(doc);
        const dvlight::RunResult result = dvlight::run_scenario(cfg, threads);

        for (const auto& w : result.summary.at("warnings"))
            std::cerr << "warning: " << w.get<std::string>() << '\n';
        std::cout << "scenario " << scenario << " -> " << cfg.out_dir << '\n';
        for (const std::string& f : result.files)
            std::cout << "  wrote " << f << '\n';
        std::cout << result.summary.at("results").dump(2) << '\n';
        return 0;
    } catch (const dvlight::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const dvlight::invalid_parameter_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dvlight: continuous delayed-light generation in a double-V Raman "
                 "medium -- spectra, group delays, pulses, beam diffusion, calibration"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    unsigned threads = 0;
    app.add_option("--config", config_path,
                   "JSON parameter file, merge-patched over the built-in defaults")
        ->expected(1);
    app.add_option("--out", out_dir, "output directory (default from config)");
    app.add_option("--threads", threads, "worker threads for sweeps, 0 = auto");

    const std::pair<const char*, const char*> simple[] = {
        {"spectrum", "scan transmission and generation spectra"},
        {"contrast", "line contrast of probe and signal versus drive"},
        {"delay", "group delays of probe and signal"},
        {"pulse", "propagate a Gaussian pulse and measure centroid delays"},
        {"beam", "propagate a Gaussian beam through the k-space filter"},
        {"calibrate", "synthetic Gamma(P_c) and S eta calibration chain"},
    };
    for (const auto& [name, desc] : simple)
        app.add_subcommand(name, desc);

    auto* rep = app.add_subcommand("reproduce", "run a canned figure scenario");
    std::string figure;
    rep->add_option("figure", figure, "one of fig2a|fig2b|fig3a|fig3b|fig4")
        ->required()
        ->check(CLI::IsMember({"fig2a", "fig2b", "fig3a", "fig3b", "fig4"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string scenario =
        rep->parsed() ? figure : app.get_subcommands().front()->get_name();
    return run(scenario, config_path, out_dir, threads);
}
