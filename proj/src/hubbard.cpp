#include "fermikin/hubbard.hpp"

#include <cmath>
#include <numbers>

namespace fermikin {

namespace {

void require_admissible(const MatrixWigner& w) {
    if (!admissible(w, 1e-9))
        throw std::domain_error("hubbard: Wigner eigenvalues outside [0,1] beyond tolerance");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double fd_value(double beta, double f, double nu) {
    const double x = beta * f - nu;
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

} // namespace

SpinMatrix spin_correlation(const MatrixWigner& w) {
    Mat2 s = Mat2::Zero();
    for (const Mat2& m : w.values) s += m;
    return w.grid->cell_weight() * s;
}

std::vector<Mat2> collision_hubbard(const MatrixWigner& w, const Dispersion& disp,
                                    const KineticParams& params) {
    require_admissible(w);
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const Mat2* W = w.values.data();
    const double* om = disp.values().data();
    const double pref = std::numbers::pi * params.lambda * params.lambda * g.cell_weight() * g.cell_weight();
    const double eps = params.eps;
    const DeltaKernel kernel = params.kernel;

    std::vector<Mat2> wt(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) wt[static_cast<std::size_t>(i)] = Mat2::Identity() - W[i];
    const Mat2* Wt = wt.data();

    std::vector<Mat2> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::int64_t i0 = 0; i0 < n; ++i0) {
        Mat2 acc = Mat2::Zero();
        for (std::int64_t i1 = 0; i1 < n; ++i1) {
            const std::int64_t i01 = g.add(i0, i1);
            const double om01 = om[i0] + om[i1];
            for (std::int64_t i2 = 0; i2 < n; ++i2) {
                const std::int64_t i3 = g.sub(i01, i2);
                const double d = energy_delta(om01 - om[i2] - om[i3], eps, kernel);
                // gain - loss; the written form plus its adjoint
                const Mat2 t = Wt[i0] * W[i2] * j_map(Wt[i1] * W[i3]) - W[i0] * Wt[i2] * j_map(W[i1] * Wt[i3]);
                acc += d * (t + t.adjoint());
            }
        }
        out[static_cast<std::size_t>(i0)] = pref * acc;
    }
    return out;
}

std::vector<Mat2> effective_hamiltonian(const MatrixWigner& w, const Dispersion& disp,
                                        const KineticParams& params) {
    require_admissible(w);
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const Mat2* W = w.values.data();
    const double* om = disp.values().data();
    const Mat2 lam_sigma = params.lambda * spin_correlation(w);
    const double pref = params.lambda * params.lambda * g.cell_weight() * g.cell_weight();
    const double eps = params.pv_eps();

    std::vector<Mat2> wt(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) wt[static_cast<std::size_t>(i)] = Mat2::Identity() - W[i];
    const Mat2* Wt = wt.data();

    std::vector<Mat2> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::int64_t i0 = 0; i0 < n; ++i0) {
        Mat2 acc = Mat2::Zero();
        for (std::int64_t i1 = 0; i1 < n; ++i1) {
            const std::int64_t i01 = g.add(i0, i1);
            const double om01 = om[i0] + om[i1];
            for (std::int64_t i2 = 0; i2 < n; ++i2) {
                const std::int64_t i3 = g.sub(i01, i2);
                const double pv = mollified_pv(om01 - om[i2] - om[i3], eps);
                acc += pv * (Wt[i2] * j_map(W[i1] * Wt[i3]) + W[i2] * j_map(Wt[i1] * W[i3]));
            }
        }
        out[static_cast<std::size_t>(i0)] = lam_sigma + pref * acc;
    }
    return out;
}

std::vector<Mat2> rhs_hubbard(const MatrixWigner& w, const Dispersion& disp,
                              const KineticParams& params) {
    std::vector<Mat2> c = collision_hubbard(w, disp, params);
    std::vector<Mat2> h = effective_hamiltonian(w, disp, params);
    const std::complex<double> minus_i(0.0, -1.0);
    for (std::int64_t i = 0; i < w.size(); ++i) {
        const Mat2& hw = h[static_cast<std::size_t>(i)];
        const Mat2& ww = w[i];
        c[static_cast<std::size_t>(i)] += minus_i * (hw * ww - ww * hw);
    }
    if (!params.conserve_energy) return c;

    const KGrid& g = *w.grid;
    const double wt = g.cell_weight();
    double m1 = 0.0, om_bar = 0.0, om_sq = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const double om = disp[i];
        m1 += wt * om * c[static_cast<std::size_t>(i)].trace().real();
        om_bar += wt * om;
        om_sq += wt * om * om;
    }
    const double var = om_sq - om_bar * om_bar;
    const double b = var > 0.0 ? m1 / (2.0 * var) : 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i)
        c[static_cast<std::size_t>(i)] -= b * (disp[i] - om_bar) * Mat2::Identity();
    return c;
}

double matrix_entropy(const MatrixWigner& w) {
    const double wt = w.grid->cell_weight();
    double s = 0.0;
    for (const Mat2& m : w.values) {
        const auto ev = eigvals_herm2(m);
        for (double lam : ev) s -= wt * (xlogx(lam) + xlogx(1.0 - lam));
    }
    return s;
}

double total_energy(const MatrixWigner& w, const Dispersion& disp) {
    const double wt = w.grid->cell_weight();
    double e = 0.0;
    for (std::int64_t i = 0; i < w.size(); ++i) e += wt * disp[i] * w[i].trace().real();
    return e;
}

double matrix_entropy_production(const MatrixWigner& w, const Dispersion& disp,
                                 const KineticParams& params) {
    require_admissible(w);
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const double* om = disp.values().data();
    const double wt = g.cell_weight();
    const double pref = 0.25 * std::numbers::pi * params.lambda * params.lambda * wt * wt * wt;
    const double eps = params.eps;
    const DeltaKernel kernel = params.kernel;

    std::vector<EigenSystem2> es(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) es[static_cast<std::size_t>(i)] = eig_herm2(w[i]);

    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::int64_t i0 = 0; i0 < n; ++i0) {
        const EigenSystem2& e0 = es[static_cast<std::size_t>(i0)];
        double acc = 0.0;
        for (std::int64_t i1 = 0; i1 < n; ++i1) {
            const EigenSystem2& e1 = es[static_cast<std::size_t>(i1)];
            const std::int64_t i01 = g.add(i0, i1);
            const double om01 = om[i0] + om[i1];
            for (std::int64_t i2 = 0; i2 < n; ++i2) {
                const std::int64_t i3 = g.sub(i01, i2);
                const double d = energy_delta(om01 - om[i2] - om[i3], eps, kernel);
                const EigenSystem2& e2 = es[static_cast<std::size_t>(i2)];
                const EigenSystem2& e3 = es[static_cast<std::size_t>(i3)];
                // band-overlap inner products for this momentum tuple
                const Mat2 s02 = e0.vectors.adjoint() * e2.vectors;
                const Mat2 s13 = e1.vectors.adjoint() * e3.vectors;
                const Mat2 s03 = e0.vectors.adjoint() * e3.vectors;
                const Mat2 s12 = e1.vectors.adjoint() * e2.vectors;
                for (int a0 = 0; a0 < 2; ++a0)
                    for (int a1 = 0; a1 < 2; ++a1)
                        for (int a2 = 0; a2 < 2; ++a2)
                            for (int a3 = 0; a3 < 2; ++a3) {
                                const double l0 = e0.eigenvalues[a0], l1 = e1.eigenvalues[a1];
                                const double l2 = e2.eigenvalues[a2], l3 = e3.eigenvalues[a3];
                                const double x = std::max((1.0 - l0) * (1.0 - l1) * l2 * l3, 1e-300);
                                const double y = std::max(l0 * l1 * (1.0 - l2) * (1.0 - l3), 1e-300);
                                if (x == y) continue;
                                const std::complex<double> ovl =
                                    s02(a0, a2) * s13(a1, a3) - s03(a0, a3) * s12(a1, a2);
                                acc += d * (x - y) * std::log(x / y) * std::norm(ovl);
                            }
            }
        }
        total += acc;
    }
    return pref * total;
}

namespace {

struct BandMoments {
    double dens_p, dens_m, energy;
    double ddens_p_beta, ddens_p_nu;
    double ddens_m_beta, ddens_m_nu;
    double de_beta, de_nup, de_num;
};

BandMoments band_moments(const Dispersion& disp, double beta, double nu_p, double nu_m) {
    const double wt = disp.grid().cell_weight();
    BandMoments m{};
    for (std::int64_t i = 0; i < disp.grid().size(); ++i) {
        const double om = disp[i];
        const double fp = fd_value(beta, om, nu_p);
        const double fm = fd_value(beta, om, nu_m);
        const double gp = fp * (1.0 - fp), gm = fm * (1.0 - fm);
        m.dens_p += wt * fp;
        m.dens_m += wt * fm;
        m.energy += wt * om * (fp + fm);
        m.ddens_p_beta += -wt * om * gp;
        m.ddens_p_nu += wt * gp;
        m.ddens_m_beta += -wt * om * gm;
        m.ddens_m_nu += wt * gm;
        m.de_beta += -wt * om * om * (gp + gm);
        m.de_nup += wt * om * gp;
        m.de_num += wt * om * gm;
    }
    return m;
}

double solve_nu_band(const Dispersion& disp, double beta, double rho) {
    double lo = -800.0, hi = 800.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        double dens = 0.0;
        const double wt = disp.grid().cell_weight();
        for (std::int64_t i = 0; i < disp.grid().size(); ++i) dens += wt * fd_value(beta, disp[i], mid);
        if (dens < rho)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TwoBandFit fit_two_band(const SpinMatrix& sigma, double energy, const Dispersion& disp) {
    const EigenSystem2 es = eig_herm2(sigma);
    const double s_minus = es.eigenvalues[0];
    const double s_plus = es.eigenvalues[1];
    for (double s : {s_minus, s_plus})
        if (!(s > 0.0 && s < 1.0))
            throw InfeasibleTarget("fit_two_band: band occupation outside (0,1)");
    auto [lo_p, hi_p] = energy_bounds(disp, s_plus);
    auto [lo_m, hi_m] = energy_bounds(disp, s_minus);
    if (!(energy > lo_p + lo_m && energy < hi_p + hi_m))
        throw InfeasibleTarget("fit_two_band: energy outside bathtub bounds");

    double beta = 0.0;
    double nu_p = std::log(s_plus / (1.0 - s_plus));
    double nu_m = std::log(s_minus / (1.0 - s_minus));
    TwoBandFit fit;
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
        const BandMoments m = band_moments(disp, beta, nu_p, nu_m);
        const double f1 = m.dens_p - s_plus;
        const double f2 = m.dens_m - s_minus;
        const double f3 = m.energy - energy;
        fit.iterations = it + 1;
        if (std::abs(f1) < 1e-13 && std::abs(f2) < 1e-13 && std::abs(f3) < 1e-13) {
            ok = true;
            break;
        }
        Eigen::Matrix3d jac;
        jac << m.ddens_p_beta, m.ddens_p_nu, 0.0,
               m.ddens_m_beta, 0.0, m.ddens_m_nu,
               m.de_beta, m.de_nup, m.de_num;
        Eigen::Vector3d rhs(-f1, -f2, -f3);
        Eigen::Vector3d stepv = jac.fullPivLu().solve(rhs);
        if (!stepv.allFinite()) break;
        double step = 1.0;
        const double r0 = std::abs(f1) + std::abs(f2) + std::abs(f3);
        for (int bt = 0; bt < 40; ++bt) {
            const BandMoments mt =
                band_moments(disp, beta + step * stepv(0), nu_p + step * stepv(1), nu_m + step * stepv(2));
            if (std::abs(mt.dens_p - s_plus) + std::abs(mt.dens_m - s_minus) + std::abs(mt.energy - energy) < r0)
                break;
            step *= 0.5;
        }
        beta += step * stepv(0);
        nu_p += step * stepv(1);
        nu_m += step * stepv(2);
    }

    if (!ok) {
        double lo = -1e6, hi = 1e6;
        for (int it = 0; it < 400; ++it) {
            beta = 0.5 * (lo + hi);
            nu_p = solve_nu_band(disp, beta, s_plus);
            nu_m = solve_nu_band(disp, beta, s_minus);
            if (band_moments(disp, beta, nu_p, nu_m).energy > energy)
                lo = beta;
            else
                hi = beta;
        }
        const BandMoments m = band_moments(disp, beta, nu_p, nu_m);
        if (std::abs(m.dens_p - s_plus) + std::abs(m.dens_m - s_minus) > 1e-10 ||
            std::abs(m.energy - energy) > 1e-10)
            throw FitFailure("fit_two_band: no convergence after Newton and bisection");
    }

    fit.beta = beta;
    fit.nu_plus = nu_p;
    fit.nu_minus = nu_m;
    fit.mu_plus = beta != 0.0 ? nu_p / beta : 0.0;
    fit.mu_minus = beta != 0.0 ? nu_m / beta : 0.0;
    fit.basis = es.vectors;
    return fit;
}

MatrixWigner two_band_state(const TwoBandFit& fit, const Dispersion& disp) {
    MatrixWigner w(disp.grid());
    for (std::int64_t i = 0; i < w.size(); ++i) {
        const double om = disp[i];
        Mat2 d = Mat2::Zero();
        d(0, 0) = fd_value(fit.beta, om, fit.nu_minus);
        d(1, 1) = fd_value(fit.beta, om, fit.nu_plus);
        w[i] = fit.basis * d * fit.basis.adjoint();
    }
    return w;
}

const char* to_string(StationaryTag tag) {
    switch (tag) {
        case StationaryTag::two_band_fd: return "two_band_fd";
        case StationaryTag::empty_band: return "empty_band";
        case StationaryTag::full_band: return "full_band";
        case StationaryTag::d1_degenerate: return "d1_degenerate";
        case StationaryTag::not_stationary: return "not_stationary";
    }
    return "unknown";
}

StationaryClass classify_stationary(const MatrixWigner& w, const Dispersion& disp,
                                    const KineticParams& params, double tol) {
    const EigenSystem2 es = eig_herm2(spin_correlation(w));
    StationaryClass out;
    out.basis = es.vectors;

    double max_off = 0.0;
    std::array<double, 2> max_diag{0.0, 0.0};
    std::array<double, 2> min_diag{1.0, 1.0};
    for (const Mat2& m : w.values) {
        const Mat2 d = es.vectors.adjoint() * m * es.vectors;
        max_off = std::max(max_off, std::abs(d(0, 1)));
        for (int a = 0; a < 2; ++a) {
            max_diag[a] = std::max(max_diag[a], d(a, a).real());
            min_diag[a] = std::min(min_diag[a], d(a, a).real());
        }
    }

    if (max_off <= tol) {
        for (int a = 0; a < 2; ++a) {
            if (max_diag[a] <= tol) {
                out.tag = StationaryTag::empty_band;
                out.band_index = a;
                out.residual = std::max(max_diag[a], max_off);
                return out;
            }
        }
        for (int a = 0; a < 2; ++a) {
            if (1.0 - min_diag[a] <= tol) {
                out.tag = StationaryTag::full_band;
                out.band_index = a;
                out.residual = std::max(1.0 - min_diag[a], max_off);
                return out;
            }
        }
    }

    bool fd_ok = false;
    try {
        const TwoBandFit fit = fit_two_band(spin_correlation(w), total_energy(w, disp), disp);
        const MatrixWigner eq = two_band_state(fit, disp);
        const double resid = sup_distance(w, eq);
        out.residual = resid;   // informative even when the fit is rejected
        if (resid <= tol) {
            out.tag = StationaryTag::two_band_fd;
            out.beta = fit.beta;
            out.mu_plus = fit.mu_plus;
            out.mu_minus = fit.mu_minus;
            fd_ok = true;
        }
    } catch (const std::exception&) {
        fd_ok = false;
    }
    if (fd_ok) return out;

    if (w.grid->dim() == 1) {
        const double cnorm = max_abs(collision_hubbard(w, disp, params));
        if (cnorm <= tol) {
            out.tag = StationaryTag::d1_degenerate;
            out.residual = cnorm;
            return out;
        }
    }
    out.tag = StationaryTag::not_stationary;
    return out;
}

MatrixWigner d1_degenerate_family(const KGrid& grid, double beta, double mu_plus,
                                  double mu_minus, const std::vector<double>& f_profile) {
    if (grid.dim() != 1)
        throw std::invalid_argument("d1_degenerate_family: grid must be one-dimensional");
    if (f_profile.size() != static_cast<std::size_t>(grid.size()))
        throw std::invalid_argument("d1_degenerate_family: profile size does not match grid");
    const std::int64_t half = grid.size() / 2;   // flat index of k = 1/2
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const std::int64_t tau = grid.sub(half, i);
        if (std::abs(f_profile[static_cast<std::size_t>(tau)] + f_profile[static_cast<std::size_t>(i)]) > 1e-12)
            throw std::invalid_argument("d1_degenerate_family: profile violates f(1/2 - k) = -f(k)");
    }
    MatrixWigner w(grid);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const double f = f_profile[static_cast<std::size_t>(i)];
        Mat2 m = Mat2::Zero();
        m(0, 0) = fd_value(beta, f, beta * mu_plus);
        m(1, 1) = fd_value(beta, f, beta * mu_minus);
        w[i] = m;
    }
    return w;
}

std::vector<double> default_antisymmetric_profile(const KGrid& grid) {
    std::vector<double> f(static_cast<std::size_t>(grid.size()));
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const double k = grid.wavenumber(i)[0];
        f[static_cast<std::size_t>(i)] =
            std::cos(2.0 * std::numbers::pi * k) + 0.4 * std::sin(4.0 * std::numbers::pi * k);
    }
    return f;
}

double sup_distance(const MatrixWigner& a, const MatrixWigner& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        d = std::max(d, (a.values[i] - b.values[i]).cwiseAbs().maxCoeff());
    return d;
}

} // namespace fermikin
