#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fermikin/wigner.hpp"

namespace fermikin {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ModelKind { spinless, hubbard, oracle, fd_scaling };

struct InitialSpec {
    std::string kind = "random";   // random | fermi_dirac | two_band | band_empty | band_full |
                                   // degenerate | file
    double amplitude = 0.3;
    double beta = 1.0;
    double mu = 0.0;
    double mu_plus = 0.2;
    double mu_minus = -0.3;
    int band = 1;                  // index of the empty/full band
    std::string path;              // file kind
};

struct OracleSpec {
    int sites_spinless = 8;
    int sites_hubbard = 4;
    std::vector<double> lambdas{0.05, 0.1, 0.2};
    double t_probe_spinless = 1.0;
    double t_probe_hubbard = 0.5;
};

struct RunConfig {
    std::string scenario;          // preset name, may be empty for fully custom runs
    std::string claim;             // what the preset demonstrates
    ModelKind model = ModelKind::spinless;
    int grid_d = 1;
    int grid_n = 32;
    std::string dispersion_kind = "nearest_neighbour";
    double dispersion_c = 0.0;
    double dispersion_eta = 0.0;
    std::string potential = "cosine";
    double lambda = 1.0;
    std::optional<double> eps;        // delta width; default from the grid
    std::optional<double> eps_pv;     // principal value width; default couples to eps
    std::string kernel = "lorentzian";
    bool conserve_energy = true;
    std::optional<double> dt;         // default 0.1/lambda^2
    double t_end = 10.0;
    int record_every = 5;
    std::optional<double> stationary_tol;   // default 1e-8*lambda^2
    std::uint64_t seed = 1;
    InitialSpec initial;
    OracleSpec oracle;
    std::string out = "out/run";
};

/// Parse + validate a config. Unknown keys and out-of-range values throw
/// ConfigError. A "scenario" key loads the preset first; remaining keys
/// override it.
RunConfig parse_config(const nlohmann::json& j);
RunConfig preset_config(const std::string& name);
std::vector<std::string> scenario_names();
std::string scenario_claim(const std::string& name);
nlohmann::json config_to_json(const RunConfig& cfg);

/// Deterministic seeded initial data.
ScalarWigner random_scalar_wigner(const KGrid& grid, std::uint64_t seed, double amplitude);
MatrixWigner random_matrix_wigner(const KGrid& grid, std::uint64_t seed, double amplitude);

/// Execute a scenario; writes trajectory.csv, final_state.json, summary.json
/// under cfg.out. Returns the process exit code (0 ok, 3 numerical failure).
int run_scenario(const RunConfig& cfg);

} // namespace fermikin
