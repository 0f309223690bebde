#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fermikin/hubbard.hpp"
#include "fermikin/scenario.hpp"
#include "fermikin/spinless.hpp"

using namespace fermikin;
using nlohmann::json;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "fermikin_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::filesystem::path& p) { return json::parse(slurp(p)); }

} // namespace

TEST_CASE("eight presets with documented claims") {
    const auto names = scenario_names();
    CHECK(names.size() == 8);
    for (const auto& n : names) {
        const RunConfig c = preset_config(n);
        CHECK(c.scenario == n);
        CHECK(!c.claim.empty());
    }
    CHECK_THROWS_AS(preset_config("no_such_scenario"), ConfigError);
}

TEST_CASE("config parsing validates keys and ranges") {
    CHECK_THROWS_AS(parse_config(json{{"bogus_key", 1}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"grid", {{"d", 1}, {"n", 5}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"grid", {{"d", 5}, {"n", 8}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"eps", -0.1}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"kernel", "cubic"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"initial", {{"kind", "file"}}}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"initial", {{"kind", "file"}, {"path", "/no/such/file"}}}}),
                    ConfigError);

    const RunConfig c = parse_config(json{{"scenario", "spinless_relax"}, {"t_end", 2.5}});
    CHECK(c.scenario == "spinless_relax");
    CHECK(c.t_end == 2.5);   // override wins over the preset
}

TEST_CASE("random initial data is deterministic and admissible") {
    const KGrid g(2, 6);
    const ScalarWigner a = random_scalar_wigner(g, 42, 0.5);
    const ScalarWigner b = random_scalar_wigner(g, 42, 0.5);
    CHECK(sup_distance(a, b) == 0.0);
    CHECK(admissible(a, 0.0));
    const ScalarWigner c = random_scalar_wigner(g, 43, 0.5);
    CHECK(sup_distance(a, c) > 1e-3);

    const MatrixWigner m = random_matrix_wigner(g, 42, 0.6);
    CHECK(admissible(m, 0.0));
    CHECK(hermiticity_error(m) == 0.0);
}

TEST_CASE("spinless run writes the three artifacts with schema and config echo") {
    const auto dir = temp_dir("spinless");
    RunConfig cfg = preset_config("spinless_relax");
    cfg.grid_n = 16;
    cfg.t_end = 1.0;
    cfg.record_every = 2;
    cfg.out = dir.string();
    CHECK(run_scenario(cfg) == 0);

    const std::string csv = slurp(dir / "trajectory.csv");
    CHECK(csv.find("# fermikin schema_version=1") != std::string::npos);
    CHECK(csv.find("# config=") != std::string::npos);
    CHECK(csv.find("time,entropy,entropy_production,density,energy,distance_to_equilibrium") !=
          std::string::npos);

    const json summary = read_json(dir / "summary.json");
    CHECK(summary.at("schema_version") == 1);
    CHECK(summary.at("config").at("grid").at("n") == 16);
    CHECK(summary.at("entropy").at("monotone").get<bool>());
    CHECK(summary.at("conservation_drift").at("density").get<double>() < 1e-10);
    CHECK(summary.at("conservation_drift").at("energy").get<double>() < 1e-10);

    const json state = read_json(dir / "final_state.json");
    CHECK(state.at("model") == "spinless");
    CHECK(state.at("values").size() == 16);

    // a state dump can seed another run
    RunConfig cfg2 = cfg;
    cfg2.initial.kind = "file";
    cfg2.initial.path = (dir / "final_state.json").string();
    cfg2.out = (dir / "resumed").string();
    CHECK(run_scenario(cfg2) == 0);
}

TEST_CASE("reruns with the same config and seed are byte-identical") {
    const auto dir1 = temp_dir("repeat1");
    const auto dir2 = temp_dir("repeat2");
    RunConfig cfg = preset_config("spinless_relax");
    cfg.grid_n = 16;
    cfg.t_end = 0.5;
    cfg.out = dir1.string();
    run_scenario(cfg);
    RunConfig cfg2 = cfg;   // same seed, different directory
    cfg2.out = dir2.string();
    run_scenario(cfg2);
    auto strip_config = [](std::string s) {
        // the config echo contains the output path; compare everything else
        std::istringstream in(s);
        std::ostringstream out;
        std::string line;
        while (std::getline(in, line))
            if (line.rfind("# config=", 0) != 0) out << line << "\n";
        return out.str();
    };
    CHECK(strip_config(slurp(dir1 / "trajectory.csv")) ==
          strip_config(slurp(dir2 / "trajectory.csv")));
}

TEST_CASE("hubbard empty band scenario freezes the occupations") {
    const auto dir = temp_dir("empty_band");
    RunConfig cfg = preset_config("hubbard_empty_band");
    cfg.t_end = 1.0;
    cfg.out = dir.string();
    CHECK(run_scenario(cfg) == 0);
    const json summary = read_json(dir / "summary.json");
    CHECK(summary.at("converged").get<bool>());   // rhs vanishes identically
    CHECK(summary.at("stationary_class").at("tag") == "empty_band");

    const json state = read_json(dir / "final_state.json");
    const KGrid g(cfg.grid_d, cfg.grid_n);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const auto& vals = state.at("values");
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const double want = 1.0 / (1.0 + std::exp(cfg.initial.beta * (disp[i] - cfg.initial.mu)));
        CHECK(std::abs(vals[static_cast<std::size_t>(i)].at("d0").get<double>() - want) < 1e-8);
        CHECK(std::abs(vals[static_cast<std::size_t>(i)].at("d1").get<double>()) < 1e-12);
    }
}

TEST_CASE("degeneracy scenarios report the eps scaling and the nnn lift") {
    const auto dir_deg = temp_dir("deg");
    RunConfig cfg = preset_config("d1_degenerate");
    cfg.t_end = 0.4;
    cfg.out = dir_deg.string();
    CHECK(run_scenario(cfg) == 0);
    const json s1 = read_json(dir_deg / "summary.json");
    const double ratio = s1.at("degeneracy").at("eps_ratio").get<double>();
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);

    const auto dir_lift = temp_dir("lift");
    RunConfig cfg2 = preset_config("d1_nnn_lifted");
    cfg2.t_end = 0.4;
    cfg2.out = dir_lift.string();
    CHECK(run_scenario(cfg2) == 0);
    const json s2 = read_json(dir_lift / "summary.json");
    CHECK(s2.at("degeneracy").at("lift").get<double>() >= 10.0);
}

TEST_CASE("fd fixed point scaling scenario") {
    const auto dir = temp_dir("fdscal");
    RunConfig cfg = preset_config("fd_fixed_point_scaling");
    cfg.out = dir.string();
    CHECK(run_scenario(cfg) == 0);
    const json s = read_json(dir / "summary.json");
    CHECK(s.at("first_order_scaling").get<bool>());
    for (const auto& probe : s.at("probes")) {
        CHECK(probe.at("ratio").get<double>() > 0.35);
        CHECK(probe.at("ratio").get<double>() < 0.65);
    }
}
