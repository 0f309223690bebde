// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria 1/2/4 share one seeded scalar relaxation run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "fermikin/fock.hpp"
#include "fermikin/hubbard.hpp"
#include "fermikin/integrator.hpp"
#include "fermikin/scenario.hpp"
#include "fermikin/spinless.hpp"
#include "../src/reference/reference_kernels.hpp"

using namespace fermikin;

namespace {

int failures = 0;

void report(int criterion, bool pass, const char* what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what,
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct ScalarRun {
    TrajectoryRecord<ScalarWigner> rec;
    ConservedPair c0;
    ScalarWigner weq;
    double elapsed;
};

// Seeded random interior data in the fast harmonic sector: zero mean and zero
// dispersion overlap by construction, and no component along the d=1
// antisymmetric-profile family. Generic d=1 data instead converges to a
// degenerate-family state (see the d1_degenerate scenario) and cannot reach
// the Fermi-Dirac point.
ScalarWigner relaxation_seed_wigner(const KGrid& g, std::uint64_t seed, double amp) {
    std::mt19937_64 rng(seed);
    auto coeff = [&] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
    std::vector<double> f(static_cast<std::size_t>(g.size()), 0.0);
    for (int m : {2, 4}) {
        const double a = coeff();
        for (std::int64_t i = 0; i < g.size(); ++i)
            f[static_cast<std::size_t>(i)] += a * std::cos(2 * std::numbers::pi * m * g.wavenumber(i)[0]);
    }
    for (int m : {1, 3, 5}) {
        const double a = coeff();
        for (std::int64_t i = 0; i < g.size(); ++i)
            f[static_cast<std::size_t>(i)] += a * std::sin(2 * std::numbers::pi * m * g.wavenumber(i)[0]);
    }
    double sup = 1e-300;
    for (double v : f) sup = std::max(sup, std::abs(v));
    ScalarWigner w(g);
    for (std::int64_t i = 0; i < g.size(); ++i) w[i] = 0.5 + 0.45 * amp * f[static_cast<std::size_t>(i)] / sup;
    return w;
}

ScalarRun scalar_relaxation_run() {
    const KGrid grid(1, 32);
    const Dispersion disp = nearest_neighbour(grid, 0.0);
    const PairPotential vhat = cosine_potential(grid);
    KineticParams p;
    p.lambda = 1.0;
    p.eps = 0.7;   // d=1 thermalizes through off-shell coupling; smaller widths
                   // leave the degenerate directions too slow for the t=50 window

    const ScalarWigner w0 = relaxation_seed_wigner(grid, 20250101, 0.2);
    const ConservedPair c0 = conserved(w0, disp);
    const FdFit fit = fit_fermi_dirac(c0, disp);
    const ScalarWigner weq = fermi_dirac_nu(disp, fit.beta, fit.nu);

    auto rhs = [&, p](const ScalarWigner& w) { return rhs_spinless(w, disp, vhat, p); };
    auto diag = [&, p](const ScalarWigner& w) {
        DiagnosticsRow row;
        row.entropy = entropy(w);
        row.entropy_production = entropy_production(w, disp, vhat, p);
        const ConservedPair c = conserved(w, disp);
        row.density = c.density;
        row.energy = c.energy;
        row.distance_to_equilibrium = sup_distance(w, weq);
        return row;
    };
    RunParams rp;
    rp.dt = 0.1;
    rp.t_end = 50.0;
    rp.record_every = 5;
    rp.stationary_tol = 0.0;   // run the full window

    const auto t0 = std::chrono::steady_clock::now();
    ScalarRun out{run(w0, rhs, diag, rp), c0, weq, 0.0};
    out.elapsed = seconds_since(t0);
    return out;
}

void criterion_1_2_4() {
    const ScalarRun r = scalar_relaxation_run();

    double max_drop = 0.0, min_sigma = 0.0;
    for (std::size_t i = 0; i < r.rec.rows.size() && r.rec.rows[i].time <= 10.0 + 1e-9; ++i) {
        if (i > 0) max_drop = std::max(max_drop, r.rec.rows[i - 1].entropy - r.rec.rows[i].entropy);
        min_sigma = std::min(min_sigma, r.rec.rows[i].entropy_production);
    }
    const bool c1 = max_drop <= 1e-9 && min_sigma >= -1e-12 && r.elapsed < 60.0;
    report(1, c1, "scalar H-theorem: entropy monotone, entropy production nonnegative",
           fmt("max entropy drop %.2e, min sigma %.2e, runtime %.1f s", max_drop, min_sigma,
               r.elapsed));

    double drift_d = 0.0, drift_e = 0.0;
    for (const auto& row : r.rec.rows) {
        if (row.time > 10.0 + 1e-9) break;
        drift_d = std::max(drift_d, std::abs(row.density - r.c0.density));
        drift_e = std::max(drift_e, std::abs(row.energy - r.c0.energy));
    }
    // the seeded state has zero energy by symmetry, so the drift is measured
    // against the natural energy scale (bandwidth times density)
    const double rel_d = drift_d / std::abs(r.c0.density);
    const double rel_e = drift_e / std::max(std::abs(r.c0.energy), r.c0.density);
    report(2, rel_d <= 1e-6 && rel_e <= 1e-6, "scalar conservation of density and energy",
           fmt("relative drift: density %.2e, energy %.2e", rel_d, rel_e));

    // criterion 4: distance to the fitted equilibrium, transient = first 20%
    bool monotone = true;
    double final_dist = r.rec.rows.back().distance_to_equilibrium;
    double prev = -1.0;
    for (const auto& row : r.rec.rows) {
        if (row.time < 10.0 - 1e-9) continue;
        if (prev >= 0.0 && row.distance_to_equilibrium > prev + 1e-9) monotone = false;
        prev = row.distance_to_equilibrium;
    }
    report(4, monotone && final_dist <= 1e-3,
           "relaxation to the fitted Fermi-Dirac state by t = 50",
           std::string(monotone ? "monotone after transient, " : "not monotone, ") +
               fmt("final distance %.2e", final_dist));
}

void criterion_3() {
    bool ok = true;
    std::string detail;
    for (auto [d, n] : {std::pair{1, 64}, std::pair{2, 12}}) {
        const KGrid grid(d, n);
        const Dispersion disp = nearest_neighbour(grid, 0.0);
        const PairPotential vhat = cosine_potential(grid);
        const ScalarWigner w = fermi_dirac(disp, 2.0, 0.3);
        KineticParams p;
        p.eps = 0.15;
        const double c1 = max_abs(collision_bn(w, disp, vhat, p));
        p.eps = 0.075;
        const double c2 = max_abs(collision_bn(w, disp, vhat, p));
        const double ratio = c2 / c1;
        ok = ok && ratio >= 0.35 && ratio <= 0.65;
        detail += fmt("d=%.0f n=%.0f ratio %.3f; ", d, n, ratio);
    }
    report(3, ok, "Fermi-Dirac fixed point, first-order eps scaling", detail);
}

void criterion_5() {
    const KGrid grid(2, 8);
    const Dispersion disp = nearest_neighbour(grid, 0.0);
    KineticParams p;
    p.eps = default_eps(disp.values());

    const MatrixWigner w0 = random_matrix_wigner(grid, 7, 0.5);
    const SpinMatrix s0 = spin_correlation(w0);
    const double e0 = total_energy(w0, disp);

    auto rhs = [&, p](const MatrixWigner& w) { return rhs_hubbard(w, disp, p); };
    MatrixWigner w = w0;
    double drift_sigma = 0.0, drift_e = 0.0;
    for (int s = 0; s < 100; ++s) {
        w = rk4_step(w, rhs, 0.1, 0.1 * s);
        drift_sigma = std::max(drift_sigma, (spin_correlation(w) - s0).cwiseAbs().maxCoeff());
        drift_e = std::max(drift_e, std::abs(total_energy(w, disp) - e0));
    }
    const double rel_e = drift_e / std::abs(e0);
    report(5, drift_sigma <= 1e-8 && rel_e <= 1e-6,
           "Hubbard run conserves the spin matrix and the energy",
           fmt("sigma drift %.2e, relative energy drift %.2e", drift_sigma, rel_e));
}

void criterion_6() {
    const KGrid grid(2, 6);
    const Dispersion disp = nearest_neighbour(grid, 0.0);
    KineticParams p;
    p.eps = default_eps(disp.values());

    bool ok = true;
    std::string detail;
    for (bool full : {false, true}) {
        MatrixWigner w0(grid);
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            Mat2 m = Mat2::Zero();
            m(0, 0) = 1.0 / (1.0 + std::exp(1.2 * (disp[i] - 0.3)));
            m(1, 1) = full ? 1.0 : 0.0;
            w0[i] = m;
        }
        const double cnorm = max_abs(collision_hubbard(w0, disp, p));
        auto rhs = [&, p](const MatrixWigner& w) { return rhs_hubbard(w, disp, p); };
        MatrixWigner w = w0;
        for (int s = 0; s < 100; ++s) w = rk4_step(w, rhs, 0.1, 0.1 * s);
        double occ_drift = 0.0;
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            occ_drift = std::max(occ_drift, std::abs((w[i](0, 0) - w0[i](0, 0)).real()));
            occ_drift = std::max(occ_drift, std::abs((w[i](1, 1) - w0[i](1, 1)).real()));
        }
        ok = ok && cnorm <= 1e-12 && occ_drift <= 1e-8;
        detail += fmt(full ? "full: |C| %.1e, drift %.1e; " : "empty: |C| %.1e, drift %.1e; ",
                      cnorm, occ_drift);
    }
    report(6, ok, "empty/full band freezing", detail);
}

void criterion_7() {
    const KGrid grid(1, 32);
    const Dispersion nn = nearest_neighbour(grid, 0.0);
    const Dispersion nnn = nearest_plus_nnn(grid, 0.0, 0.3);
    const MatrixWigner w =
        d1_degenerate_family(grid, 1.0, 0.2, -0.3, default_antisymmetric_profile(grid));
    KineticParams p;
    p.eps = 0.004;
    const double c_nn = max_abs(collision_hubbard(w, nn, p));
    const double c_nnn = max_abs(collision_hubbard(w, nnn, p));
    KineticParams ph = p;
    ph.eps = 0.002;
    const double c_nn_half = max_abs(collision_hubbard(w, nn, ph));
    const double ratio = c_nn_half / c_nn;
    const double lift = c_nnn / c_nn;
    report(7, ratio >= 0.35 && ratio <= 0.65 && lift >= 10.0,
           "d=1 degenerate family is eps-stationary; next-to-nearest term lifts it",
           fmt("eps ratio %.3f, lift %.1fx", ratio, lift));
}

void criterion_8() {
    // CAR identities, exhaustive at L=6
    const FockBasis b6(6, false);
    double car_err = 0.0;
    for (int x = 0; x < 6; ++x) {
        const MatX ax = car_operator(x, CarKind::annihilate, b6);
        car_err = std::max(car_err, (ax * ax).cwiseAbs().maxCoeff());
        for (int y = 0; y < 6; ++y) {
            const MatX ayd = car_operator(y, CarKind::create, b6);
            const MatX anti = ax * ayd + ayd * ax;
            const MatX want =
                x == y ? MatX(MatX::Identity(b6.dim, b6.dim)) : MatX(MatX::Zero(b6.dim, b6.dim));
            car_err = std::max(car_err, (anti - want).cwiseAbs().maxCoeff());
        }
    }

    // quasifree four-point truncation at L=4
    const KGrid g4(1, 4);
    const Dispersion d4 = nearest_neighbour(g4, 0.0);
    const FockBasis b4(4, false);
    std::vector<double> w0(4);
    for (std::int64_t i = 0; i < 4; ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(1.3 * (d4[i] - 0.2)));
    const GaussianStateSpec spec = prepare_quasifree(one_particle_from_wigner(w0, b4), b4);
    double t4 = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const std::array<CarLabel, 4> ops{{{i, CarKind::create},
                                                       {j, CarKind::create},
                                                       {k, CarKind::annihilate},
                                                       {l, CarKind::annihilate}}};
                    t4 = std::max(t4, std::abs(truncated_four_point(spec.rho, ops, b4)));
                }

    // one-particle spectrum of H0 equals the dispersion, L=8
    const KGrid g8(1, 8);
    const Dispersion d8 = nearest_neighbour(g8, 0.0);
    const FockBasis b8(8, false);
    const MatX h0 = build_h0(b8, hopping_profile(d8));
    std::vector<std::int64_t> onep;
    for (int x = 0; x < 8; ++x) onep.push_back(std::int64_t{1} << x);
    MatX hs(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) hs(i, j) = h0(onep[i], onep[j]);
    Eigen::SelfAdjointEigenSolver<MatX> es(hs);
    std::vector<double> want;
    for (std::int64_t i = 0; i < g8.size(); ++i) want.push_back(d8[i]);
    std::sort(want.begin(), want.end());
    double spec_err = 0.0;
    for (int i = 0; i < 8; ++i) spec_err = std::max(spec_err, std::abs(es.eigenvalues()(i) - want[i]));

    // free evolution leaves the measured Wigner function constant, L=6
    const KGrid g6(1, 6);
    const Dispersion d6 = nearest_neighbour(g6, 0.0);
    std::vector<double> w6(6);
    for (std::int64_t i = 0; i < 6; ++i)
        w6[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(1.1 * (d6[i] + 0.1)));
    const GaussianStateSpec s6 = prepare_quasifree(one_particle_from_wigner(w6, b6), b6);
    const MatX h06 = build_h0(b6, hopping_profile(d6));
    const auto w_t = measure_wigner_spinless(evolve(s6.rho, h06, 1.7), b6);
    double free_err = 0.0;
    for (std::size_t i = 0; i < 6; ++i) free_err = std::max(free_err, std::abs(w_t[i] - w6[i]));

    report(8, car_err == 0.0 && t4 <= 1e-10 && spec_err <= 1e-12 && free_err <= 1e-10,
           "microscopic oracle structure",
           fmt("CAR err %.1e, T4 %.1e, spectrum err %.1e", car_err, t4, spec_err) +
               fmt(", free-evolution err %.1e", free_err));
}

void criterion_9() {
    const auto t0 = std::chrono::steady_clock::now();

    const KGrid gs(1, 8);
    const Dispersion ds = nearest_neighbour(gs, 0.0);
    const PairPotential vs = cosine_potential(gs);
    std::vector<double> w0(8);
    for (std::int64_t i = 0; i < 8; ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(1.3 * (ds[i] - 0.2)));
    const auto rs = kinetic_consistency_spinless(ds, vs, w0, {0.05, 0.1, 0.2}, 1.0);

    const KGrid gh(1, 4);
    const Dispersion dh = nearest_neighbour(gh, 0.0);
    std::vector<Mat2> wh(4);
    for (std::int64_t i = 0; i < 4; ++i) {
        const double k = gh.wavenumber(i)[0];
        const double c = std::cos(2 * std::numbers::pi * k);
        const double sn = std::sin(2 * std::numbers::pi * k);
        Mat2 m;
        m(0, 0) = 0.5 + 0.2 * c;
        m(1, 1) = 0.45 - 0.15 * c;
        m(0, 1) = std::complex<double>(0.12 + 0.1 * sn, 0.05 * c);
        m(1, 0) = std::conj(m(0, 1));
        wh[static_cast<std::size_t>(i)] = m;
    }
    const auto rh = kinetic_consistency_hubbard(dh, wh, {0.05, 0.1, 0.2}, 0.5);

    const double elapsed = seconds_since(t0);
    const bool ok = rs.slope_raw >= 1.8 && rs.slope_raw <= 2.2 && rh.slope_residual >= 1.8 &&
                    elapsed < 300.0;
    report(9, ok, "microscopic oracle kinetic structure",
           fmt("spinless slope %.3f, hubbard residual slope %.3f, runtime %.1f s", rs.slope_raw,
               rh.slope_residual, elapsed));
}

void criterion_10() {
    const KGrid grid(1, 4);
    const Dispersion disp = nearest_neighbour(grid, 0.0);
    const PairPotential vhat = cosine_potential(grid);
    double worst = 0.0;

    for (DeltaKernel kernel : {DeltaKernel::lorentzian, DeltaKernel::gaussian}) {
        KineticParams p;
        p.eps = 0.2;
        p.kernel = kernel;

        const ScalarWigner w = random_scalar_wigner(grid, 100, 0.6);
        const auto a = collision_bn(w, disp, vhat, p);
        const auto b = reference::collision_bn(w, disp, vhat, p);
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
        worst = std::max(worst, std::abs(entropy_production(w, disp, vhat, p) -
                                         reference::entropy_production(w, disp, vhat, p)));

        const MatrixWigner m = random_matrix_wigner(grid, 101, 0.6);
        const auto ca = collision_hubbard(m, disp, p);
        const auto cb = reference::collision_hubbard(m, disp, p);
        const auto ha = effective_hamiltonian(m, disp, p);
        const auto hb = reference::effective_hamiltonian(m, disp, p);
        for (std::size_t i = 0; i < ca.size(); ++i) {
            worst = std::max(worst, (ca[i] - cb[i]).cwiseAbs().maxCoeff());
            worst = std::max(worst, (ha[i] - hb[i]).cwiseAbs().maxCoeff());
        }
        worst = std::max(worst, std::abs(matrix_entropy_production(m, disp, p) -
                                         reference::matrix_entropy_production(m, disp, p)));
    }
    report(10, worst <= 1e-12, "cross-implementation equivalence against the serial reference",
           fmt("max deviation %.2e", worst));
}

} // namespace

int main() {
    std::printf("fermikin acceptance suite\n");
    criterion_1_2_4();
    criterion_3();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
