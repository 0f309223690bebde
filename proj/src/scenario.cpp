#include "fermikin/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "fermikin/dispersion.hpp"
#include "fermikin/fock.hpp"
#include "fermikin/hubbard.hpp"
#include "fermikin/integrator.hpp"
#include "fermikin/spinless.hpp"

namespace fermikin {

using nlohmann::json;

namespace {

constexpr int schema_version = 1;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;   // [0, 1)
}

double symmetric(std::mt19937_64& rng) { return 2.0 * uniform(rng) - 1.0; }

// smooth random field from low harmonics, normalized to sup norm 1
std::vector<double> harmonic_field(const KGrid& grid, std::mt19937_64& rng) {
    std::vector<double> f(static_cast<std::size_t>(grid.size()), 0.0);
    for (int nu = 0; nu < grid.dim(); ++nu)
        for (int m = 1; m <= 3; ++m) {
            const double a = symmetric(rng), b = symmetric(rng);
            for (std::int64_t i = 0; i < grid.size(); ++i) {
                const double k = grid.wavenumber(i)[nu];
                f[static_cast<std::size_t>(i)] += a * std::cos(2.0 * std::numbers::pi * m * k) +
                                                  b * std::sin(2.0 * std::numbers::pi * m * k);
            }
        }
    double sup = 1e-300;
    for (double v : f) sup = std::max(sup, std::abs(v));
    for (double& v : f) v /= sup;
    return f;
}

Dispersion make_dispersion(const RunConfig& cfg, const KGrid& grid) {
    if (cfg.dispersion_kind == "nearest_neighbour")
        return nearest_neighbour(grid, cfg.dispersion_c);
    if (cfg.dispersion_kind == "nearest_plus_nnn")
        return nearest_plus_nnn(grid, cfg.dispersion_c, cfg.dispersion_eta);
    throw ConfigError("unknown dispersion kind: " + cfg.dispersion_kind);
}

KineticParams make_params(const RunConfig& cfg, const Dispersion& disp) {
    KineticParams p;
    p.lambda = cfg.lambda;
    p.eps = cfg.eps.value_or(default_eps(disp.values()));
    p.eps_pv = cfg.eps_pv.value_or(-1.0);
    p.kernel = cfg.kernel == "gaussian" ? DeltaKernel::gaussian : DeltaKernel::lorentzian;
    p.conserve_energy = cfg.conserve_energy;
    return p;
}

RunParams make_run_params(const RunConfig& cfg) {
    RunParams p;
    p.dt = cfg.dt.value_or(0.1 / (cfg.lambda * cfg.lambda));
    p.t_end = cfg.t_end;
    p.record_every = cfg.record_every;
    p.stationary_tol = cfg.stationary_tol.value_or(1e-8 * cfg.lambda * cfg.lambda);
    return p;
}

json state_to_json(const RunConfig& cfg, const ScalarWigner& w) {
    json j;
    j["schema_version"] = schema_version;
    j["config"] = config_to_json(cfg);
    j["model"] = "spinless";
    j["grid"] = {{"d", w.grid->dim()}, {"n", w.grid->points_per_axis()}};
    json pts = json::array(), vals = json::array();
    for (std::int64_t i = 0; i < w.size(); ++i) {
        auto k = w.grid->wavenumber(i);
        json p = json::array();
        for (int nu = 0; nu < w.grid->dim(); ++nu) p.push_back(k[nu]);
        pts.push_back(p);
        vals.push_back(w[i]);
    }
    j["wavenumbers"] = pts;
    j["values"] = vals;
    return j;
}

json state_to_json(const RunConfig& cfg, const MatrixWigner& w) {
    json j;
    j["schema_version"] = schema_version;
    j["config"] = config_to_json(cfg);
    j["model"] = "hubbard";
    j["grid"] = {{"d", w.grid->dim()}, {"n", w.grid->points_per_axis()}};
    json pts = json::array(), vals = json::array();
    for (std::int64_t i = 0; i < w.size(); ++i) {
        auto k = w.grid->wavenumber(i);
        json p = json::array();
        for (int nu = 0; nu < w.grid->dim(); ++nu) p.push_back(k[nu]);
        pts.push_back(p);
        const Mat2& m = w[i];
        vals.push_back({{"d0", m(0, 0).real()},
                        {"d1", m(1, 1).real()},
                        {"off_re", m(0, 1).real()},
                        {"off_im", m(0, 1).imag()}});
    }
    j["wavenumbers"] = pts;
    j["values"] = vals;
    return j;
}

ScalarWigner scalar_state_from_json(const json& j, const KGrid& grid) {
    if (j.at("model") != "spinless") throw ConfigError("state file is not a spinless state");
    if (j.at("grid").at("d") != grid.dim() || j.at("grid").at("n") != grid.points_per_axis())
        throw ConfigError("state file grid does not match the configured grid");
    ScalarWigner w(grid);
    const auto& vals = j.at("values");
    if (vals.size() != static_cast<std::size_t>(grid.size())) throw ConfigError("state file size mismatch");
    for (std::int64_t i = 0; i < grid.size(); ++i) w[i] = vals[static_cast<std::size_t>(i)].get<double>();
    return w;
}

MatrixWigner matrix_state_from_json(const json& j, const KGrid& grid) {
    if (j.at("model") != "hubbard") throw ConfigError("state file is not a hubbard state");
    if (j.at("grid").at("d") != grid.dim() || j.at("grid").at("n") != grid.points_per_axis())
        throw ConfigError("state file grid does not match the configured grid");
    MatrixWigner w(grid);
    const auto& vals = j.at("values");
    if (vals.size() != static_cast<std::size_t>(grid.size())) throw ConfigError("state file size mismatch");
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const auto& v = vals[static_cast<std::size_t>(i)];
        Mat2 m;
        m(0, 0) = v.at("d0").get<double>();
        m(1, 1) = v.at("d1").get<double>();
        m(0, 1) = std::complex<double>(v.at("off_re").get<double>(), v.at("off_im").get<double>());
        m(1, 0) = std::conj(m(0, 1));
        w[i] = m;
    }
    return w;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

ScalarWigner build_scalar_initial(const RunConfig& cfg, const KGrid& grid, const Dispersion& disp) {
    const InitialSpec& ini = cfg.initial;
    if (ini.kind == "random") return random_scalar_wigner(grid, cfg.seed, ini.amplitude);
    if (ini.kind == "fermi_dirac") return fermi_dirac(disp, ini.beta, ini.mu);
    if (ini.kind == "file") return scalar_state_from_json(load_json_file(ini.path), grid);
    throw ConfigError("initial kind '" + ini.kind + "' not valid for a spinless run");
}

MatrixWigner build_matrix_initial(const RunConfig& cfg, const KGrid& grid, const Dispersion& disp) {
    const InitialSpec& ini = cfg.initial;
    if (ini.kind == "random") return random_matrix_wigner(grid, cfg.seed, ini.amplitude);
    if (ini.kind == "two_band") {
        MatrixWigner w(grid);
        const ScalarWigner gp = fermi_dirac(disp, ini.beta, ini.mu_plus);
        const ScalarWigner gm = fermi_dirac(disp, ini.beta, ini.mu_minus);
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            Mat2 m = Mat2::Zero();
            m(0, 0) = gp[i];
            m(1, 1) = gm[i];
            w[i] = m;
        }
        return w;
    }
    if (ini.kind == "band_empty" || ini.kind == "band_full") {
        MatrixWigner w(grid);
        const ScalarWigner f = fermi_dirac(disp, ini.beta, ini.mu);
        const int other = 1 - ini.band;
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            Mat2 m = Mat2::Zero();
            m(other, other) = f[i];
            m(ini.band, ini.band) = ini.kind == "band_full" ? 1.0 : 0.0;
            w[i] = m;
        }
        return w;
    }
    if (ini.kind == "degenerate")
        return d1_degenerate_family(grid, ini.beta, ini.mu_plus, ini.mu_minus,
                                    default_antisymmetric_profile(grid));
    if (ini.kind == "file") return matrix_state_from_json(load_json_file(ini.path), grid);
    throw ConfigError("initial kind '" + ini.kind + "' not valid for a hubbard run");
}

struct CsvWriter {
    std::ofstream out;
    CsvWriter(const std::filesystem::path& path, const RunConfig& cfg, const std::string& header) {
        out.open(path);
        if (!out) throw std::runtime_error("cannot open output file: " + path.string());
        out << "# fermikin schema_version=" << schema_version << "\n";
        out << "# config=" << config_to_json(cfg).dump() << "\n";
        out << header << "\n";
    }
    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << fmt(vals[i]);
        out << "\n";
    }
};

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << j.dump(2) << "\n";
}

json summary_skeleton(const RunConfig& cfg) {
    json s;
    s["schema_version"] = schema_version;
    s["config"] = config_to_json(cfg);
    s["scenario"] = cfg.scenario.empty() ? json(nullptr) : json(cfg.scenario);
    s["claim"] = cfg.claim;
    return s;
}

template <class Rec>
json entropy_summary(const Rec& rec) {
    double max_drop = 0.0;
    for (std::size_t i = 1; i < rec.rows.size(); ++i)
        max_drop = std::max(max_drop, rec.rows[i - 1].entropy - rec.rows[i].entropy);
    return {{"monotone", max_drop <= 1e-9}, {"max_step_decrease", max_drop}};
}

int run_spinless(const RunConfig& cfg) {
    const KGrid grid(cfg.grid_d, cfg.grid_n);
    const Dispersion disp = make_dispersion(cfg, grid);
    const PairPotential vhat = cosine_potential(grid);
    const KineticParams params = make_params(cfg, disp);
    const RunParams rp = make_run_params(cfg);

    const ScalarWigner w0 = build_scalar_initial(cfg, grid, disp);
    const ConservedPair c0 = conserved(w0, disp);

    bool have_fit = true;
    FdFit fit;
    ScalarWigner weq;
    try {
        fit = fit_fermi_dirac(c0, disp);
        weq = fermi_dirac_nu(disp, fit.beta, fit.nu);
    } catch (const InfeasibleTarget&) {
        have_fit = false;
    }

    auto rhs = [&](const ScalarWigner& w) { return rhs_spinless(w, disp, vhat, params); };
    auto diag = [&](const ScalarWigner& w) {
        DiagnosticsRow row;
        row.entropy = entropy(w);
        row.entropy_production = entropy_production(w, disp, vhat, params);
        const ConservedPair c = conserved(w, disp);
        row.density = c.density;
        row.energy = c.energy;
        row.distance_to_equilibrium = have_fit ? sup_distance(w, weq) : std::nan("");
        return row;
    };

    const auto rec = run(w0, rhs, diag, rp);

    std::filesystem::create_directories(cfg.out);
    CsvWriter csv(std::filesystem::path(cfg.out) / "trajectory.csv", cfg,
                  "time,entropy,entropy_production,density,energy,distance_to_equilibrium");
    for (const auto& r : rec.rows)
        csv.row({r.time, r.entropy, r.entropy_production, r.density, r.energy,
                 r.distance_to_equilibrium});

    write_json(std::filesystem::path(cfg.out) / "final_state.json",
               state_to_json(cfg, rec.states.back()));

    double drift_d = 0.0, drift_e = 0.0;
    for (const auto& r : rec.rows) {
        drift_d = std::max(drift_d, std::abs(r.density - c0.density));
        drift_e = std::max(drift_e, std::abs(r.energy - c0.energy));
    }
    json s = summary_skeleton(cfg);
    s["status"] = rec.status == RunStatus::converged ? "converged" : "finished";
    s["converged"] = rec.status == RunStatus::converged;
    s["t_reached"] = rec.t_reached;
    s["steps"] = rec.steps;
    s["eps"] = params.eps;
    s["conservation_drift"] = {{"density", drift_d}, {"energy", drift_e}};
    s["entropy"] = entropy_summary(rec);
    s["equilibrium_fit"] =
        have_fit ? json{{"beta", fit.beta}, {"mu", fit.mu}} : json(nullptr);
    s["final_distance"] =
        have_fit ? json(rec.rows.back().distance_to_equilibrium) : json(nullptr);
    write_json(std::filesystem::path(cfg.out) / "summary.json", s);
    return 0;
}

int run_hubbard(const RunConfig& cfg) {
    const KGrid grid(cfg.grid_d, cfg.grid_n);
    const Dispersion disp = make_dispersion(cfg, grid);
    const KineticParams params = make_params(cfg, disp);
    const RunParams rp = make_run_params(cfg);

    const MatrixWigner w0 = build_matrix_initial(cfg, grid, disp);
    const SpinMatrix sigma0 = spin_correlation(w0);
    const double e0 = total_energy(w0, disp);

    bool have_fit = true;
    TwoBandFit fit;
    MatrixWigner weq;
    try {
        fit = fit_two_band(sigma0, e0, disp);
        weq = two_band_state(fit, disp);
    } catch (const InfeasibleTarget&) {
        have_fit = false;
    }

    auto rhs = [&](const MatrixWigner& w) { return rhs_hubbard(w, disp, params); };
    auto diag = [&](const MatrixWigner& w) {
        DiagnosticsRow row;
        row.entropy = matrix_entropy(w);
        row.entropy_production = matrix_entropy_production(w, disp, params);
        const SpinMatrix s = spin_correlation(w);
        row.sigma = {s(0, 0).real(), s(0, 1).real(), s(0, 1).imag(), s(1, 1).real()};
        row.density = s.trace().real();
        row.energy = total_energy(w, disp);
        row.distance_to_equilibrium = have_fit ? sup_distance(w, weq) : std::nan("");
        return row;
    };

    const auto rec = run(w0, rhs, diag, rp);

    std::filesystem::create_directories(cfg.out);
    CsvWriter csv(std::filesystem::path(cfg.out) / "trajectory.csv", cfg,
                  "time,entropy,entropy_production,sigma_00,sigma_01_re,sigma_01_im,sigma_11,"
                  "energy,distance_to_equilibrium");
    for (const auto& r : rec.rows)
        csv.row({r.time, r.entropy, r.entropy_production, r.sigma[0], r.sigma[1], r.sigma[2],
                 r.sigma[3], r.energy, r.distance_to_equilibrium});

    write_json(std::filesystem::path(cfg.out) / "final_state.json",
               state_to_json(cfg, rec.states.back()));

    double drift_sigma = 0.0, drift_e = 0.0;
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        const auto& r = rec.rows[i];
        const double ds = std::max({std::abs(r.sigma[0] - sigma0(0, 0).real()),
                                    std::abs(r.sigma[1] - sigma0(0, 1).real()),
                                    std::abs(r.sigma[2] - sigma0(0, 1).imag()),
                                    std::abs(r.sigma[3] - sigma0(1, 1).real())});
        drift_sigma = std::max(drift_sigma, ds);
        drift_e = std::max(drift_e, std::abs(r.energy - e0));
    }

    const StationaryClass cls = classify_stationary(rec.states.back(), disp, params, 1e-3);

    json s = summary_skeleton(cfg);
    s["status"] = rec.status == RunStatus::converged ? "converged" : "finished";
    s["converged"] = rec.status == RunStatus::converged;
    s["t_reached"] = rec.t_reached;
    s["steps"] = rec.steps;
    s["eps"] = params.eps;
    s["conservation_drift"] = {{"sigma", drift_sigma}, {"energy", drift_e}};
    s["entropy"] = entropy_summary(rec);
    s["equilibrium_fit"] = have_fit
                               ? json{{"beta", fit.beta}, {"mu_plus", fit.mu_plus}, {"mu_minus", fit.mu_minus}}
                               : json(nullptr);
    s["final_distance"] =
        have_fit ? json(rec.rows.back().distance_to_equilibrium) : json(nullptr);
    s["stationary_class"] = {{"tag", to_string(cls.tag)}, {"residual", cls.residual}};

    // degeneracy scenarios report the collision-norm eps scaling explicitly
    if (cfg.scenario == "d1_degenerate" || cfg.scenario == "d1_nnn_lifted") {
        KineticParams half = params;
        half.eps = 0.5 * params.eps;
        const double cn = max_abs(collision_hubbard(w0, disp, params));
        const double cn_half = max_abs(collision_hubbard(w0, disp, half));
        json deg = {{"collision_norm", cn},
                    {"collision_norm_half_eps", cn_half},
                    {"eps_ratio", cn_half / cn}};
        if (cfg.scenario == "d1_nnn_lifted") {
            const Dispersion nn = nearest_neighbour(grid, cfg.dispersion_c);
            const double cn_nn = max_abs(collision_hubbard(w0, nn, params));
            deg["collision_norm_nn"] = cn_nn;
            deg["lift"] = cn / cn_nn;
        }
        s["degeneracy"] = deg;
    }
    write_json(std::filesystem::path(cfg.out) / "summary.json", s);
    return 0;
}

int run_oracle(const RunConfig& cfg) {
    const OracleSpec& o = cfg.oracle;

    // spinless probe state: smooth interior FD-like occupation
    const KGrid gs(1, o.sites_spinless);
    const Dispersion ds = nearest_neighbour(gs, 0.0);
    const PairPotential vs = cosine_potential(gs);
    std::vector<double> w0(static_cast<std::size_t>(gs.size()));
    for (std::int64_t i = 0; i < gs.size(); ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(1.3 * (ds[i] - 0.2)));
    const OracleSlopeReport rs =
        kinetic_consistency_spinless(ds, vs, w0, o.lambdas, o.t_probe_spinless);

    // hubbard probe state: spin structure not commuting with Sigma
    const KGrid gh(1, o.sites_hubbard);
    const Dispersion dh = nearest_neighbour(gh, 0.0);
    std::vector<Mat2> wh(static_cast<std::size_t>(gh.size()));
    for (std::int64_t i = 0; i < gh.size(); ++i) {
        const double k = gh.wavenumber(i)[0];
        const double c = std::cos(2.0 * std::numbers::pi * k);
        const double sn = std::sin(2.0 * std::numbers::pi * k);
        Mat2 m;
        m(0, 0) = 0.5 + 0.2 * c;
        m(1, 1) = 0.45 - 0.15 * c;
        m(0, 1) = std::complex<double>(0.12 + 0.1 * sn, 0.05 * c);
        m(1, 0) = std::conj(m(0, 1));
        wh[static_cast<std::size_t>(i)] = m;
    }
    const OracleSlopeReport rh = kinetic_consistency_hubbard(dh, wh, o.lambdas, o.t_probe_hubbard);

    std::filesystem::create_directories(cfg.out);
    CsvWriter csv(std::filesystem::path(cfg.out) / "trajectory.csv", cfg,
                  "lambda,spinless_derivative_norm,hubbard_derivative_norm,hubbard_residual_norm");
    for (std::size_t i = 0; i < o.lambdas.size(); ++i)
        csv.row({o.lambdas[i], rs.derivative_norms[i], rh.derivative_norms[i], rh.residual_norms[i]});

    json fs;
    fs["schema_version"] = schema_version;
    fs["config"] = config_to_json(cfg);
    fs["model"] = "oracle";
    fs["spinless_w0"] = w0;
    write_json(std::filesystem::path(cfg.out) / "final_state.json", fs);

    json s = summary_skeleton(cfg);
    s["status"] = "finished";
    s["spinless"] = {{"sites", o.sites_spinless},
                     {"t_probe", rs.t_probe},
                     {"slope", rs.slope_raw},
                     {"derivative_norms", rs.derivative_norms},
                     {"pass", rs.slope_raw >= 1.8 && rs.slope_raw <= 2.2}};
    s["hubbard"] = {{"sites", o.sites_hubbard},
                    {"t_probe", rh.t_probe},
                    {"slope_raw", rh.slope_raw},
                    {"slope_residual", rh.slope_residual},
                    {"residual_norms", rh.residual_norms},
                    {"pass", rh.slope_residual >= 1.8}};
    write_json(std::filesystem::path(cfg.out) / "summary.json", s);
    return 0;
}

int run_fd_scaling(const RunConfig& cfg) {
    struct Probe {
        int d, n;
        double eps;
    };
    const double base_eps = cfg.eps.value_or(0.15);
    const std::vector<Probe> probes{{1, 64, base_eps}, {2, 12, base_eps}};

    std::filesystem::create_directories(cfg.out);
    CsvWriter csv(std::filesystem::path(cfg.out) / "trajectory.csv", cfg,
                  "d,n,eps,collision_norm,collision_norm_half,ratio");
    json rows = json::array();
    bool all_first_order = true;
    for (const Probe& pr : probes) {
        const KGrid grid(pr.d, pr.n);
        const Dispersion disp = nearest_neighbour(grid, 0.0);
        const PairPotential vhat = cosine_potential(grid);
        const ScalarWigner w = fermi_dirac(disp, cfg.initial.beta, cfg.initial.mu);
        KineticParams p = make_params(cfg, disp);
        p.eps = pr.eps;
        KineticParams ph = p;
        ph.eps = 0.5 * pr.eps;
        const double c1 = max_abs(collision_bn(w, disp, vhat, p));
        const double c2 = max_abs(collision_bn(w, disp, vhat, ph));
        const double ratio = c2 / c1;
        all_first_order = all_first_order && ratio >= 0.35 && ratio <= 0.65;
        csv.row({static_cast<double>(pr.d), static_cast<double>(pr.n), pr.eps, c1, c2, ratio});
        rows.push_back({{"d", pr.d},
                        {"n", pr.n},
                        {"eps", pr.eps},
                        {"collision_norm", c1},
                        {"collision_norm_half", c2},
                        {"ratio", ratio}});
    }

    const KGrid g1(1, 64);
    const Dispersion d1 = nearest_neighbour(g1, 0.0);
    write_json(std::filesystem::path(cfg.out) / "final_state.json",
               state_to_json(cfg, fermi_dirac(d1, cfg.initial.beta, cfg.initial.mu)));

    json s = summary_skeleton(cfg);
    s["status"] = "finished";
    s["probes"] = rows;
    s["first_order_scaling"] = all_first_order;
    write_json(std::filesystem::path(cfg.out) / "summary.json", s);
    return 0;
}

} // namespace

ScalarWigner random_scalar_wigner(const KGrid& grid, std::uint64_t seed, double amplitude) {
    std::mt19937_64 rng(seed);
    const std::vector<double> f = harmonic_field(grid, rng);
    ScalarWigner w(grid);
    for (std::int64_t i = 0; i < grid.size(); ++i)
        w[i] = 0.5 + 0.45 * amplitude * f[static_cast<std::size_t>(i)];
    return w;
}

MatrixWigner random_matrix_wigner(const KGrid& grid, std::uint64_t seed, double amplitude) {
    std::mt19937_64 rng(seed);
    const std::vector<double> f0 = harmonic_field(grid, rng);
    const std::vector<double> fx = harmonic_field(grid, rng);
    const std::vector<double> fy = harmonic_field(grid, rng);
    const std::vector<double> fz = harmonic_field(grid, rng);
    MatrixWigner w(grid);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        const double a = 0.5 + 0.3 * amplitude * f0[s];
        const double bx = 0.127 * amplitude * fx[s];
        const double by = 0.127 * amplitude * fy[s];
        const double bz = 0.127 * amplitude * fz[s];
        Mat2 m;
        m(0, 0) = a + bz;
        m(1, 1) = a - bz;
        m(0, 1) = std::complex<double>(bx, -by);
        m(1, 0) = std::complex<double>(bx, by);
        w[i] = m;
    }
    return w;
}

std::vector<std::string> scenario_names() {
    return {"spinless_relax",  "hubbard_relax", "hubbard_empty_band", "hubbard_full_band",
            "d1_degenerate",   "d1_nnn_lifted", "oracle_consistency", "fd_fixed_point_scaling"};
}

RunConfig preset_config(const std::string& name) {
    RunConfig c;
    c.scenario = name;
    if (name == "spinless_relax") {
        c.model = ModelKind::spinless;
        c.grid_d = 1;
        c.grid_n = 32;
        c.lambda = 1.0;
        c.t_end = 400.0;
        c.record_every = 25;
        c.seed = 20250101;
        c.initial = {};
        c.initial.kind = "random";
        c.initial.amplitude = 0.35;
        c.out = "out/spinless_relax";
        c.claim = "H-theorem relaxation of the scalar equation: entropy grows monotonically, "
                  "density and energy are conserved, and the state converges to a stationary "
                  "solution of the regularized dynamics";
    } else if (name == "hubbard_relax") {
        c.model = ModelKind::hubbard;
        c.grid_d = 2;
        c.grid_n = 8;
        c.lambda = 1.0;
        c.t_end = 10.0;
        c.record_every = 10;
        c.seed = 7;
        c.initial.kind = "random";
        c.initial.amplitude = 0.5;
        c.out = "out/hubbard_relax";
        c.claim = "matrix-valued relaxation: the spin matrix Sigma and the energy are conserved "
                  "along the Hubbard-Boltzmann flow while the matrix entropy grows";
    } else if (name == "hubbard_empty_band") {
        c.model = ModelKind::hubbard;
        c.grid_d = 2;
        c.grid_n = 6;
        c.t_end = 10.0;
        c.record_every = 10;
        c.initial.kind = "band_empty";
        c.initial.band = 1;
        c.initial.beta = 1.2;
        c.initial.mu = 0.3;
        c.out = "out/hubbard_empty_band";
        c.claim = "an empty band freezes the dynamics: the collision operator vanishes "
                  "identically and occupations stay constant (no thermalization)";
    } else if (name == "hubbard_full_band") {
        c.model = ModelKind::hubbard;
        c.grid_d = 2;
        c.grid_n = 6;
        c.t_end = 10.0;
        c.record_every = 10;
        c.initial.kind = "band_full";
        c.initial.band = 1;
        c.initial.beta = 1.2;
        c.initial.mu = 0.3;
        c.out = "out/hubbard_full_band";
        c.claim = "a full band freezes the dynamics exactly as an empty one";
    } else if (name == "d1_degenerate") {
        c.model = ModelKind::hubbard;
        c.grid_d = 1;
        c.grid_n = 32;
        c.eps = 0.004;
        c.t_end = 2.0;
        c.record_every = 5;
        c.initial.kind = "degenerate";
        c.initial.beta = 1.0;
        c.initial.mu_plus = 0.2;
        c.initial.mu_minus = -0.3;
        c.out = "out/d1_degenerate";
        c.claim = "d=1 nearest-neighbour degeneracy: states built from an antisymmetric profile "
                  "f(1/2-k) = -f(k) are stationary up to the regularization width";
    } else if (name == "d1_nnn_lifted") {
        c.model = ModelKind::hubbard;
        c.grid_d = 1;
        c.grid_n = 32;
        c.dispersion_kind = "nearest_plus_nnn";
        c.dispersion_eta = 0.3;
        c.eps = 0.004;
        c.t_end = 2.0;
        c.record_every = 5;
        c.initial.kind = "degenerate";
        c.initial.beta = 1.0;
        c.initial.mu_plus = 0.2;
        c.initial.mu_minus = -0.3;
        c.out = "out/d1_nnn_lifted";
        c.claim = "adding a next-to-nearest-neighbour term lifts the d=1 degeneracy: the same "
                  "profile state acquires an order-of-magnitude larger collision norm";
    } else if (name == "oracle_consistency") {
        c.model = ModelKind::oracle;
        c.out = "out/oracle_consistency";
        c.claim = "exact small-lattice evolution reproduces the leading-order kinetic structure: "
                  "spinless dW/dt scales as lambda^2 and the Hubbard lambda-order term is the "
                  "spin commutator -i lambda [Sigma, W]";
    } else if (name == "fd_fixed_point_scaling") {
        c.model = ModelKind::fd_scaling;
        c.initial.kind = "fermi_dirac";
        c.initial.beta = 2.0;
        c.initial.mu = 0.3;
        c.eps = 0.15;
        c.out = "out/fd_fixed_point_scaling";
        c.claim = "Fermi-Dirac states are fixed points up to the regularization: the collision "
                  "norm vanishes first order in eps (halving ratio near 1/2)";
    } else {
        throw ConfigError("unknown scenario '" + name + "'; valid names: spinless_relax, "
                          "hubbard_relax, hubbard_empty_band, hubbard_full_band, d1_degenerate, "
                          "d1_nnn_lifted, oracle_consistency, fd_fixed_point_scaling");
    }
    return c;
}

std::string scenario_claim(const std::string& name) { return preset_config(name).claim; }

namespace {

const std::set<std::string> known_keys{
    "scenario", "model",  "grid",   "dispersion",     "potential",      "lambda",
    "eps",      "eps_pv", "kernel", "conserve_energy", "dt",            "t_end",
    "record_every", "stationary_tol", "seed", "initial", "oracle", "out"};

const std::set<std::string> initial_keys{"kind", "amplitude", "beta",     "mu", "mu_plus",
                                         "mu_minus", "band",  "path"};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

} // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    check_keys(j, known_keys, "config");

    RunConfig c = j.contains("scenario") ? preset_config(j.at("scenario").get<std::string>())
                                         : RunConfig{};

    if (j.contains("model")) {
        const std::string m = j.at("model").get<std::string>();
        if (m == "spinless")
            c.model = ModelKind::spinless;
        else if (m == "hubbard")
            c.model = ModelKind::hubbard;
        else if (m == "oracle")
            c.model = ModelKind::oracle;
        else if (m == "fd_scaling")
            c.model = ModelKind::fd_scaling;
        else
            throw ConfigError("unknown model '" + m + "'");
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        check_keys(g, {"d", "n"}, "grid");
        c.grid_d = g.at("d").get<int>();
        c.grid_n = g.at("n").get<int>();
    }
    if (j.contains("dispersion")) {
        const auto& d = j.at("dispersion");
        check_keys(d, {"kind", "c", "eta"}, "dispersion");
        if (d.contains("kind")) c.dispersion_kind = d.at("kind").get<std::string>();
        if (d.contains("c")) c.dispersion_c = d.at("c").get<double>();
        if (d.contains("eta")) c.dispersion_eta = d.at("eta").get<double>();
    }
    if (j.contains("potential")) c.potential = j.at("potential").get<std::string>();
    if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (j.contains("eps_pv")) c.eps_pv = j.at("eps_pv").get<double>();
    if (j.contains("kernel")) c.kernel = j.at("kernel").get<std::string>();
    if (j.contains("conserve_energy")) c.conserve_energy = j.at("conserve_energy").get<bool>();
    if (j.contains("dt")) c.dt = j.at("dt").get<double>();
    if (j.contains("t_end")) c.t_end = j.at("t_end").get<double>();
    if (j.contains("record_every")) c.record_every = j.at("record_every").get<int>();
    if (j.contains("stationary_tol")) c.stationary_tol = j.at("stationary_tol").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("initial")) {
        const auto& i = j.at("initial");
        check_keys(i, initial_keys, "initial");
        if (i.contains("kind")) c.initial.kind = i.at("kind").get<std::string>();
        if (i.contains("amplitude")) c.initial.amplitude = i.at("amplitude").get<double>();
        if (i.contains("beta")) c.initial.beta = i.at("beta").get<double>();
        if (i.contains("mu")) c.initial.mu = i.at("mu").get<double>();
        if (i.contains("mu_plus")) c.initial.mu_plus = i.at("mu_plus").get<double>();
        if (i.contains("mu_minus")) c.initial.mu_minus = i.at("mu_minus").get<double>();
        if (i.contains("band")) c.initial.band = i.at("band").get<int>();
        if (i.contains("path")) c.initial.path = i.at("path").get<std::string>();
    }
    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        check_keys(o, {"sites_spinless", "sites_hubbard", "lambda_list", "t_probe_spinless",
                       "t_probe_hubbard"},
                   "oracle");
        if (o.contains("sites_spinless")) c.oracle.sites_spinless = o.at("sites_spinless").get<int>();
        if (o.contains("sites_hubbard")) c.oracle.sites_hubbard = o.at("sites_hubbard").get<int>();
        if (o.contains("lambda_list"))
            c.oracle.lambdas = o.at("lambda_list").get<std::vector<double>>();
        if (o.contains("t_probe_spinless"))
            c.oracle.t_probe_spinless = o.at("t_probe_spinless").get<double>();
        if (o.contains("t_probe_hubbard"))
            c.oracle.t_probe_hubbard = o.at("t_probe_hubbard").get<double>();
    }
    if (j.contains("out")) c.out = j.at("out").get<std::string>();

    // range validation
    if (c.grid_d < 1 || c.grid_d > 3) throw ConfigError("grid.d must be 1, 2 or 3");
    if (c.grid_n < 4 || c.grid_n % 2 != 0) throw ConfigError("grid.n must be even and >= 4");
    if (c.lambda < 0.0) throw ConfigError("lambda must be nonnegative");
    if (c.eps && *c.eps <= 0.0) throw ConfigError("eps must be positive");
    if (c.eps_pv && *c.eps_pv <= 0.0) throw ConfigError("eps_pv must be positive");
    if (c.kernel != "lorentzian" && c.kernel != "gaussian")
        throw ConfigError("kernel must be 'lorentzian' or 'gaussian'");
    if (c.dt && *c.dt <= 0.0) throw ConfigError("dt must be positive");
    if (c.t_end <= 0.0) throw ConfigError("t_end must be positive");
    if (c.record_every < 1) throw ConfigError("record_every must be >= 1");
    if (c.potential != "cosine") throw ConfigError("potential must be 'cosine'");
    if (c.initial.amplitude <= 0.0 || c.initial.amplitude > 0.9)
        throw ConfigError("initial.amplitude must lie in (0, 0.9]");
    if (c.initial.band != 0 && c.initial.band != 1) throw ConfigError("initial.band must be 0 or 1");
    if (c.initial.kind == "file" && c.initial.path.empty())
        throw ConfigError("initial.kind 'file' requires initial.path");
    if (c.initial.kind == "file" && !std::filesystem::exists(c.initial.path))
        throw ConfigError("initial data file does not exist: " + c.initial.path);
    for (double l : c.oracle.lambdas)
        if (l <= 0.0) throw ConfigError("oracle.lambda_list entries must be positive");
    if (c.oracle.lambdas.size() < 2) throw ConfigError("oracle.lambda_list needs >= 2 values");
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    if (!c.scenario.empty()) j["scenario"] = c.scenario;
    switch (c.model) {
        case ModelKind::spinless: j["model"] = "spinless"; break;
        case ModelKind::hubbard: j["model"] = "hubbard"; break;
        case ModelKind::oracle: j["model"] = "oracle"; break;
        case ModelKind::fd_scaling: j["model"] = "fd_scaling"; break;
    }
    j["grid"] = {{"d", c.grid_d}, {"n", c.grid_n}};
    j["dispersion"] = {{"kind", c.dispersion_kind}, {"c", c.dispersion_c}, {"eta", c.dispersion_eta}};
    j["potential"] = c.potential;
    j["lambda"] = c.lambda;
    if (c.eps) j["eps"] = *c.eps;
    if (c.eps_pv) j["eps_pv"] = *c.eps_pv;
    j["kernel"] = c.kernel;
    j["conserve_energy"] = c.conserve_energy;
    if (c.dt) j["dt"] = *c.dt;
    j["t_end"] = c.t_end;
    j["record_every"] = c.record_every;
    if (c.stationary_tol) j["stationary_tol"] = *c.stationary_tol;
    j["seed"] = c.seed;
    json ini;
    ini["kind"] = c.initial.kind;
    ini["amplitude"] = c.initial.amplitude;
    ini["beta"] = c.initial.beta;
    ini["mu"] = c.initial.mu;
    ini["mu_plus"] = c.initial.mu_plus;
    ini["mu_minus"] = c.initial.mu_minus;
    ini["band"] = c.initial.band;
    if (!c.initial.path.empty()) ini["path"] = c.initial.path;
    j["initial"] = ini;
    if (c.model == ModelKind::oracle)
        j["oracle"] = {{"sites_spinless", c.oracle.sites_spinless},
                       {"sites_hubbard", c.oracle.sites_hubbard},
                       {"lambda_list", c.oracle.lambdas},
                       {"t_probe_spinless", c.oracle.t_probe_spinless},
                       {"t_probe_hubbard", c.oracle.t_probe_hubbard}};
    j["out"] = c.out;
    return j;
}

int run_scenario(const RunConfig& cfg) {
    switch (cfg.model) {
        case ModelKind::spinless: return run_spinless(cfg);
        case ModelKind::hubbard: return run_hubbard(cfg);
        case ModelKind::oracle: return run_oracle(cfg);
        case ModelKind::fd_scaling: return run_fd_scaling(cfg);
    }
    throw ConfigError("unhandled model kind");
}

} // namespace fermikin
