#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fermikin/integrator.hpp"
#include "fermikin/scenario.hpp"

namespace {

using nlohmann::json;

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("FERMIKIN_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

json error_record(const std::string& kind, const std::string& what) {
    return json{{"error", {{"kind", kind}, {"message", what}}}};
}

fermikin::RunConfig load_config(const std::string& path, const json& overrides) {
    std::ifstream in(path);
    if (!in) throw fermikin::ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw fermikin::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    for (const auto& [k, v] : overrides.items()) j[k] = v;
    return fermikin::parse_config(j);
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"fermikin - kinetic equations of weakly interacting lattice fermions"};
    app.require_subcommand(1);

    std::string config_path;
    double opt_lambda = 0, opt_eps = 0, opt_tend = 0;
    int opt_n = 0;
    std::uint64_t opt_seed = 0;
    std::string opt_out;

    CLI::App* cmd_run = app.add_subcommand("run", "execute a run configuration");
    cmd_run->add_option("config", config_path, "JSON run configuration")->required();
    cmd_run->add_option("--lambda", opt_lambda, "coupling override");
    cmd_run->add_option("--grid-n", opt_n, "points per axis override");
    cmd_run->add_option("--eps", opt_eps, "delta width override");
    cmd_run->add_option("--t-end", opt_tend, "final time override");
    cmd_run->add_option("--seed", opt_seed, "random seed override");
    cmd_run->add_option("--out", opt_out, "output directory override");

    CLI::App* cmd_scenarios = app.add_subcommand("scenarios", "list the scenario presets");
    CLI::App* cmd_validate = app.add_subcommand("validate", "validate a run configuration");
    std::string validate_path;
    cmd_validate->add_option("config", validate_path, "JSON run configuration")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_scenarios->parsed()) {
            for (const auto& name : fermikin::scenario_names())
                std::cout << name << "\n    " << fermikin::scenario_claim(name) << "\n";
            return 0;
        }
        if (cmd_validate->parsed()) {
            const auto cfg = load_config(validate_path, json::object());
            std::cout << "ok\n" << fermikin::config_to_json(cfg).dump(2) << "\n";
            return 0;
        }
        // run
        json overrides = json::object();
        if (cmd_run->count("--lambda")) overrides["lambda"] = opt_lambda;
        if (cmd_run->count("--eps")) overrides["eps"] = opt_eps;
        if (cmd_run->count("--t-end")) overrides["t_end"] = opt_tend;
        if (cmd_run->count("--seed")) overrides["seed"] = opt_seed;
        if (cmd_run->count("--out")) overrides["out"] = opt_out;
        if (cmd_run->count("--grid-n")) {
            // keep the configured dimension, override the resolution
            std::ifstream in(config_path);
            json base;
            if (in) {
                try {
                    in >> base;
                } catch (...) {
                    base = json::object();
                }
            }
            int d = 1;
            if (base.contains("grid") && base["grid"].contains("d"))
                d = base["grid"]["d"].get<int>();
            else if (base.contains("scenario"))
                d = fermikin::preset_config(base["scenario"].get<std::string>()).grid_d;
            overrides["grid"] = {{"d", d}, {"n", opt_n}};
        }
        const auto cfg = load_config(config_path, overrides);
        return fermikin::run_scenario(cfg);
    } catch (const fermikin::ConfigError& e) {
        std::cerr << error_record("config", e.what()).dump() << "\n";
        return 2;
    } catch (const fermikin::StepFailure& e) {
        std::cerr << error_record("numerical", e.what()).dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << error_record("numerical", e.what()).dump() << "\n";
        return 3;
    }
}
