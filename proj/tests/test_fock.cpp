#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

#include "fermikin/fock.hpp"

using namespace fermikin;

namespace {

MatX identity_like(const FockBasis& b) { return MatX::Identity(b.dim, b.dim); }

MatX number_operator(const FockBasis& b) {
    MatX n = MatX::Zero(b.dim, b.dim);
    for (std::int64_t s = 0; s < b.dim; ++s)
        n(s, s) = static_cast<double>(std::popcount(static_cast<std::uint64_t>(s)));
    return n;
}

} // namespace

TEST_CASE("canonical anticommutation relations, exhaustive at L=4") {
    const FockBasis b(4, false);
    for (int x = 0; x < b.modes; ++x) {
        const MatX ax = car_operator(x, CarKind::annihilate, b);
        CHECK((ax * ax).cwiseAbs().maxCoeff() == 0.0);   // a^2 = 0
        for (int y = 0; y < b.modes; ++y) {
            const MatX ay = car_operator(y, CarKind::annihilate, b);
            const MatX ayd = car_operator(y, CarKind::create, b);
            CHECK((ax * ay + ay * ax).cwiseAbs().maxCoeff() == 0.0);
            const MatX anti = ax * ayd + ayd * ax;
            const MatX want = x == y ? identity_like(b) : MatX::Zero(b.dim, b.dim);
            CHECK((anti - want).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("adjoint relation between create and annihilate") {
    const FockBasis b(4, false);
    for (int x = 0; x < b.modes; ++x) {
        const MatX a = car_operator(x, CarKind::annihilate, b);
        const MatX ad = car_operator(x, CarKind::create, b);
        CHECK((ad - a.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("one-particle sector of H0 reproduces the dispersion") {
    const KGrid g(1, 6);
    const Dispersion disp = nearest_neighbour(g, 0.3);
    const FockBasis b(6, false);
    const MatX h0 = build_h0(b, hopping_profile(disp));

    std::vector<std::int64_t> onep;
    for (int x = 0; x < 6; ++x) onep.push_back(std::int64_t{1} << x);
    MatX hs(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) hs(i, j) = h0(onep[i], onep[j]);
    Eigen::SelfAdjointEigenSolver<MatX> es(hs);

    std::vector<double> want;
    for (std::int64_t i = 0; i < g.size(); ++i) want.push_back(disp[i]);
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 6; ++i) CHECK(std::abs(es.eigenvalues()(i) - want[i]) < 1e-12);
}

TEST_CASE("hubbard interaction counts doubly occupied sites") {
    const FockBasis b(2, true);
    const MatX v = build_v_hubbard(b);
    // |up and down on site 0> = bits 0 and 1
    const std::int64_t both = 0b0011;
    CHECK(v(both, both) == std::complex<double>(1.0));
    const std::int64_t split = 0b0110;   // down on site 0, up on site 1
    CHECK(v(split, split) == std::complex<double>(0.0));
    for (std::int64_t s : {std::int64_t{0b0001}, std::int64_t{0b0100}})
        CHECK(v(s, s) == std::complex<double>(0.0));
}

TEST_CASE("hamiltonian commutes with particle number") {
    const KGrid g(1, 4);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const PairPotential vhat = cosine_potential(g);
    const FockBasis b(4, false);
    const MatX h = build_hamiltonian_spinless(b, disp, vhat, 0.7);
    const MatX n = number_operator(b);
    CHECK((h * n - n * h).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    const KGrid gh(1, 4);
    const FockBasis bh4(4, true);
    const MatX hh = build_hamiltonian_hubbard(bh4, nearest_neighbour(gh, 0.0), 0.7);
    const MatX nh = number_operator(bh4);
    CHECK((hh * nh - nh * hh).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quasifree state at half filling is the maximally mixed state") {
    const FockBasis b(4, false);
    const MatX target = 0.5 * MatX::Identity(4, 4);
    const GaussianStateSpec spec = prepare_quasifree(target, b);
    const MatX want = MatX::Identity(b.dim, b.dim) / static_cast<double>(b.dim);
    CHECK((spec.rho - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quasifree states have vanishing truncated four-point functions") {
    const KGrid g(1, 4);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const FockBasis b(4, false);
    std::vector<double> w0(4);
    for (std::int64_t i = 0; i < 4; ++i) w0[static_cast<std::size_t>(i)] =
        1.0 / (1.0 + std::exp(1.1 * (disp[i] - 0.2)));
    const GaussianStateSpec spec = prepare_quasifree(one_particle_from_wigner(w0, b), b);

    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const std::array<CarLabel, 4> ops{{{i, CarKind::create},
                                                       {j, CarKind::create},
                                                       {k, CarKind::annihilate},
                                                       {l, CarKind::annihilate}}};
                    worst = std::max(worst, std::abs(truncated_four_point(spec.rho, ops, b)));
                }
    CHECK(worst <= 1e-10);
}

TEST_CASE("quasifree preparation rejects boundary targets") {
    const FockBasis b(4, false);
    MatX target = 0.5 * MatX::Identity(4, 4);
    target(0, 0) = 1.0 - 1e-9;
    CHECK_THROWS(prepare_quasifree(target, b));
}

TEST_CASE("truncated four-point function is antisymmetric in adjacent arguments") {
    const KGrid g(1, 4);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const PairPotential vhat = cosine_potential(g);
    const FockBasis b(4, false);
    std::vector<double> w0(4);
    for (std::int64_t i = 0; i < 4; ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(disp[i] - 0.3));
    const GaussianStateSpec spec = prepare_quasifree(one_particle_from_wigner(w0, b), b);
    // evolve to break quasifreeness so the four-point values are nonzero
    const MatX h = build_hamiltonian_spinless(b, disp, vhat, 0.4);
    const MatX rho = evolve(spec.rho, h, 0.8);

    // pick the largest nonzero quadruple (some are suppressed by symmetry)
    std::array<CarLabel, 4> ops{};
    std::complex<double> base = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const std::array<CarLabel, 4> cand{{{i, CarKind::create},
                                                        {j, CarKind::create},
                                                        {k, CarKind::annihilate},
                                                        {l, CarKind::annihilate}}};
                    const auto v = truncated_four_point(rho, cand, b);
                    if (std::abs(v) > std::abs(base)) {
                        base = v;
                        ops = cand;
                    }
                }
    CHECK(std::abs(base) > 1e-8);
    for (int swap_at : {0, 1, 2}) {
        auto swapped = ops;
        std::swap(swapped[static_cast<std::size_t>(swap_at)],
                  swapped[static_cast<std::size_t>(swap_at) + 1]);
        const auto flipped = truncated_four_point(rho, swapped, b);
        CHECK(std::abs(flipped + base) < 1e-12);
    }
}

TEST_CASE("four-point growth is first order in lambda") {
    const KGrid g(1, 4);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const PairPotential vhat = cosine_potential(g);
    const FockBasis b(4, false);
    std::vector<double> w0(4);
    for (std::int64_t i = 0; i < 4; ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(1.2 * (disp[i] - 0.25)));
    const GaussianStateSpec spec = prepare_quasifree(one_particle_from_wigner(w0, b), b);
    const MatX h0 = build_h0(b, hopping_profile(disp));
    const MatX v = build_v_spinless(b, potential_profile(vhat));

    std::vector<double> lams{0.05, 0.1, 0.2}, mags;
    for (double lam : lams) {
        const MatX rho = evolve(spec.rho, MatX(h0 + lam * v), 0.5);
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                const std::array<CarLabel, 4> ops{{{i, CarKind::create},
                                                   {j, CarKind::create},
                                                   {j, CarKind::annihilate},
                                                   {i, CarKind::annihilate}}};
                worst = std::max(worst, std::abs(truncated_four_point(rho, ops, b)));
            }
        mags.push_back(worst);
        CHECK(worst > 1e-12);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double lx = std::log(lams[i]), ly = std::log(mags[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    CHECK(slope > 0.9);
    CHECK(slope < 1.1);
}

TEST_CASE("evolution: identity at t=0, unitary at later times") {
    const KGrid g(1, 4);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const PairPotential vhat = cosine_potential(g);
    const FockBasis b(4, false);
    std::vector<double> w0(4);
    for (std::int64_t i = 0; i < 4; ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(disp[i]));
    const GaussianStateSpec spec = prepare_quasifree(one_particle_from_wigner(w0, b), b);
    const MatX h = build_hamiltonian_spinless(b, disp, vhat, 0.5);

    CHECK((evolve(spec.rho, h, 0.0) - spec.rho).cwiseAbs().maxCoeff() < 1e-13);
    const MatX rho_t = evolve(spec.rho, h, 1.7);
    CHECK(std::abs(rho_t.trace().real() - 1.0) < 1e-12);
    // energy is conserved along the evolution
    CHECK(std::abs((rho_t * h).trace().real() - (spec.rho * h).trace().real()) < 1e-10);
}

TEST_CASE("free evolution leaves the measured occupation invariant") {
    const KGrid g(1, 6);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const FockBasis b(6, false);
    std::vector<double> w0(6);
    for (std::int64_t i = 0; i < 6; ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(1.3 * (disp[i] - 0.2)));
    const GaussianStateSpec spec = prepare_quasifree(one_particle_from_wigner(w0, b), b);
    const MatX h0 = build_h0(b, hopping_profile(disp));
    const auto w_t = measure_wigner_spinless(evolve(spec.rho, h0, 2.3), b);
    for (std::size_t i = 0; i < w_t.size(); ++i) CHECK(std::abs(w_t[i] - w0[i]) < 1e-10);
}

TEST_CASE("vacuum and filled states measure to 0 and 1") {
    const FockBasis b(4, false);
    const MatX vac = slater_state(b, {});
    for (double v : measure_wigner_spinless(vac, b)) CHECK(std::abs(v) < 1e-14);

    std::vector<VecX> orbitals;
    for (int x = 0; x < 4; ++x) {
        VecX e = VecX::Zero(4);
        e(x) = 1.0;
        orbitals.push_back(e);
    }
    const MatX full = slater_state(b, orbitals);
    for (double v : measure_wigner_spinless(full, b)) CHECK(std::abs(v - 1.0) < 1e-14);
}

TEST_CASE("wigner measurement round trip, spinless and hubbard") {
    const KGrid g(1, 4);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const FockBasis b(4, false);
    std::vector<double> w0(4);
    for (std::int64_t i = 0; i < 4; ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(0.9 * (disp[i] + 0.1)));
    const GaussianStateSpec spec = prepare_quasifree(one_particle_from_wigner(w0, b), b);
    const auto wm = measure_wigner_spinless(spec.rho, b);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(wm[i] - w0[i]) < 1e-10);

    const FockBasis bh(4, true);
    std::vector<Mat2> wh(4);
    for (std::int64_t i = 0; i < 4; ++i) {
        const double k = g.wavenumber(i)[0];
        Mat2 m;
        m(0, 0) = 0.5 + 0.2 * std::cos(2 * std::numbers::pi * k);
        m(1, 1) = 0.45 - 0.15 * std::cos(2 * std::numbers::pi * k);
        m(0, 1) = std::complex<double>(0.1 + 0.08 * std::sin(2 * std::numbers::pi * k),
                                       0.05 * std::cos(2 * std::numbers::pi * k));
        m(1, 0) = std::conj(m(0, 1));
        wh[static_cast<std::size_t>(i)] = m;
    }
    const GaussianStateSpec sh = prepare_quasifree(one_particle_from_wigner(wh, bh), bh);
    const auto whm = measure_wigner_hubbard(sh.rho, bh);
    double err = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        err = std::max(err, (whm[i] - wh[i]).cwiseAbs().maxCoeff());
    CHECK(err < 1e-10);

    // microscopic spin matrix equals the k-average
    Mat2 sigma = Mat2::Zero();
    for (const Mat2& m : wh) sigma += 0.25 * m;
    CHECK((microscopic_spin_matrix(sh.rho, bh) - sigma).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("measurement rejects non translation invariant states") {
    const FockBasis b(4, false);
    // a localized particle: a*(0) Omega
    VecX e0 = VecX::Zero(4);
    e0(0) = 1.0;
    const MatX rho = slater_state(b, {e0});
    CHECK_THROWS(measure_wigner_spinless(rho, b));
}

TEST_CASE("hubbard microscopic spin matrix is conserved") {
    const KGrid g(1, 4);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const FockBasis b(4, true);
    std::vector<Mat2> wh(4);
    for (std::int64_t i = 0; i < 4; ++i) {
        const double k = g.wavenumber(i)[0];
        Mat2 m;
        m(0, 0) = 0.5 + 0.2 * std::cos(2 * std::numbers::pi * k);
        m(1, 1) = 0.45 - 0.15 * std::cos(2 * std::numbers::pi * k);
        m(0, 1) = std::complex<double>(0.12, 0.05 * std::cos(2 * std::numbers::pi * k));
        m(1, 0) = std::conj(m(0, 1));
        wh[static_cast<std::size_t>(i)] = m;
    }
    const GaussianStateSpec spec = prepare_quasifree(one_particle_from_wigner(wh, b), b);
    const MatX h = build_hamiltonian_hubbard(b, disp, 0.3);
    const Mat2 s0 = microscopic_spin_matrix(spec.rho, b);
    const Mat2 s1 = microscopic_spin_matrix(evolve(spec.rho, h, 1.9), b);
    CHECK((s1 - s0).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("kinetic consistency: spinless derivative scales as lambda^2") {
    const KGrid g(1, 6);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    const PairPotential vhat = cosine_potential(g);
    std::vector<double> w0(6);
    for (std::int64_t i = 0; i < 6; ++i)
        w0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(1.3 * (disp[i] - 0.2)));
    const auto rep = kinetic_consistency_spinless(disp, vhat, w0, {0.05, 0.1, 0.2}, 1.0);
    CHECK(rep.slope_raw > 1.8);
    CHECK(rep.slope_raw < 2.2);
}

TEST_CASE("kinetic consistency: hubbard commutator prediction") {
    const KGrid g(1, 4);
    const Dispersion disp = nearest_neighbour(g, 0.0);
    std::vector<Mat2> w0(4);
    for (std::int64_t i = 0; i < 4; ++i) {
        const double k = g.wavenumber(i)[0];
        const double c = std::cos(2 * std::numbers::pi * k);
        const double sn = std::sin(2 * std::numbers::pi * k);
        Mat2 m;
        m(0, 0) = 0.5 + 0.2 * c;
        m(1, 1) = 0.45 - 0.15 * c;
        m(0, 1) = std::complex<double>(0.12 + 0.1 * sn, 0.05 * c);
        m(1, 0) = std::conj(m(0, 1));
        w0[static_cast<std::size_t>(i)] = m;
    }
    const auto rep = kinetic_consistency_hubbard(disp, w0, {0.05, 0.1, 0.2}, 0.5);
    // the derivative itself is dominated by the lambda^1 commutator
    CHECK(rep.slope_raw > 0.8);
    CHECK(rep.slope_raw < 1.2);
    // subtracting -i lambda [Sigma, W0] leaves a second-order remainder
    CHECK(rep.slope_residual >= 1.8);

    // a diagonal field commutes with Sigma: the lambda^1 term is absent
    std::vector<Mat2> wd = w0;
    for (Mat2& m : wd) {
        m(0, 1) = 0.0;
        m(1, 0) = 0.0;
    }
    const auto rep_d = kinetic_consistency_hubbard(disp, wd, {0.05, 0.1, 0.2}, 0.5);
    CHECK(rep_d.slope_raw > 1.8);
    CHECK(rep_d.slope_raw < 2.2);
}
