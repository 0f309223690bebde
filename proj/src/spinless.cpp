#include "fermikin/spinless.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fermikin {

namespace {

void require_admissible(const ScalarWigner& w) {
    if (!admissible(w, 1e-9))
        throw std::domain_error("spinless: Wigner function outside [0,1] beyond tolerance");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// G(x, y) = (x - y) ln(x/y), arguments clamped away from zero.
double g_pair(double x, double y) {
    x = std::max(x, 1e-300);
    y = std::max(y, 1e-300);
    return (x - y) * std::log(x / y);
}

} // namespace

std::vector<double> collision_bn(const ScalarWigner& w, const Dispersion& disp,
                                 const PairPotential& vhat, const KineticParams& params) {
    require_admissible(w);
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const double* W = w.values.data();
    const double* om = disp.values().data();
    const double* V = vhat.values().data();
    const double pref = std::numbers::pi * params.lambda * params.lambda * g.cell_weight() * g.cell_weight();
    const double eps = params.eps;
    const DeltaKernel kernel = params.kernel;

    std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::int64_t i0 = 0; i0 < n; ++i0) {
        const double w0 = W[i0], wt0 = 1.0 - W[i0];
        double acc = 0.0;
        for (std::int64_t i1 = 0; i1 < n; ++i1) {
            const std::int64_t i01 = g.add(i0, i1);
            const double om01 = om[i0] + om[i1];
            const double w1 = W[i1], wt1 = 1.0 - W[i1];
            for (std::int64_t i2 = 0; i2 < n; ++i2) {
                const std::int64_t i3 = g.sub(i01, i2);
                const double dw = om01 - om[i2] - om[i3];
                const double vd = V[g.sub(i1, i2)] - V[g.sub(i1, i3)];
                const double bracket = wt0 * wt1 * W[i2] * W[i3] - w0 * w1 * (1.0 - W[i2]) * (1.0 - W[i3]);
                acc += vd * vd * energy_delta(dw, eps, kernel) * bracket;
            }
        }
        out[static_cast<std::size_t>(i0)] = pref * acc;
    }
    return out;
}

std::vector<double> rhs_spinless(const ScalarWigner& w, const Dispersion& disp,
                                 const PairPotential& vhat, const KineticParams& params) {
    std::vector<double> c = collision_bn(w, disp, vhat, params);
    if (!params.conserve_energy) return c;

    const KGrid& g = *w.grid;
    const double wt = g.cell_weight();
    double m1 = 0.0, om_bar = 0.0, om_sq = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const double om = disp[i];
        m1 += wt * om * c[static_cast<std::size_t>(i)];
        om_bar += wt * om;
        om_sq += wt * om * om;
    }
    const double var = om_sq - om_bar * om_bar;
    const double b = var > 0.0 ? m1 / var : 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i)
        c[static_cast<std::size_t>(i)] -= b * (disp[i] - om_bar);
    return c;
}

ConservedPair conserved(const ScalarWigner& w, const Dispersion& disp) {
    const double wt = w.grid->cell_weight();
    ConservedPair out;
    for (std::int64_t i = 0; i < w.size(); ++i) {
        out.density += wt * w[i];
        out.energy += wt * disp[i] * w[i];
    }
    return out;
}

double entropy(const ScalarWigner& w) {
    const double wt = w.grid->cell_weight();
    double s = 0.0;
    for (double v : w.values) s -= wt * (xlogx(v) + xlogx(1.0 - v));
    return s;
}

double entropy_production(const ScalarWigner& w, const Dispersion& disp,
                          const PairPotential& vhat, const KineticParams& params) {
    require_admissible(w);
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const double* W = w.values.data();
    const double* om = disp.values().data();
    const double* V = vhat.values().data();
    const double wt = g.cell_weight();
    // 1/4 from symmetrizing integral(C ln(Wt/W)) over the collision tuple group
    const double pref = 0.25 * std::numbers::pi * params.lambda * params.lambda * wt * wt * wt;
    const double eps = params.eps;
    const DeltaKernel kernel = params.kernel;

    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::int64_t i0 = 0; i0 < n; ++i0) {
        const double w0 = W[i0], wt0 = 1.0 - W[i0];
        double acc = 0.0;
        for (std::int64_t i1 = 0; i1 < n; ++i1) {
            const std::int64_t i01 = g.add(i0, i1);
            const double om01 = om[i0] + om[i1];
            const double w1 = W[i1], wt1 = 1.0 - W[i1];
            for (std::int64_t i2 = 0; i2 < n; ++i2) {
                const std::int64_t i3 = g.sub(i01, i2);
                const double dw = om01 - om[i2] - om[i3];
                const double vd = V[g.sub(i1, i2)] - V[g.sub(i1, i3)];
                const double x = wt0 * wt1 * W[i2] * W[i3];
                const double y = w0 * w1 * (1.0 - W[i2]) * (1.0 - W[i3]);
                acc += vd * vd * energy_delta(dw, eps, kernel) * g_pair(x, y);
            }
        }
        total += acc;
    }
    return pref * total;
}

ScalarWigner fermi_dirac(const Dispersion& disp, double beta, double mu) {
    return fermi_dirac_nu(disp, beta, beta * mu);
}

ScalarWigner fermi_dirac_nu(const Dispersion& disp, double beta, double nu) {
    ScalarWigner w(disp.grid());
    for (std::int64_t i = 0; i < w.size(); ++i) {
        const double x = beta * disp[i] - nu;
        if (x >= 0.0) {
            const double e = std::exp(-x);
            w[i] = e / (1.0 + e);
        } else {
            w[i] = 1.0 / (1.0 + std::exp(x));
        }
    }
    return w;
}

std::pair<double, double> energy_bounds(const Dispersion& disp, double density) {
    const KGrid& g = disp.grid();
    std::vector<double> om = disp.values();
    std::sort(om.begin(), om.end());
    const double wt = g.cell_weight();
    double mass = density;
    double lo = 0.0;
    for (double e : om) {
        const double take = std::min(wt, mass);
        lo += take * e;
        mass -= take;
        if (mass <= 0.0) break;
    }
    mass = density;
    double hi = 0.0;
    for (auto it = om.rbegin(); it != om.rend(); ++it) {
        const double take = std::min(wt, mass);
        hi += take * *it;
        mass -= take;
        if (mass <= 0.0) break;
    }
    return {lo, hi};
}

namespace {

struct Moments {
    double density, energy, d_beta_density, d_nu_density, d_beta_energy, d_nu_energy;
};

Moments fd_moments(const Dispersion& disp, double beta, double nu) {
    const double wt = disp.grid().cell_weight();
    Moments m{};
    for (std::int64_t i = 0; i < disp.grid().size(); ++i) {
        const double om = disp[i];
        const double x = beta * om - nu;
        double f;
        if (x >= 0.0) {
            const double e = std::exp(-x);
            f = e / (1.0 + e);
        } else {
            f = 1.0 / (1.0 + std::exp(x));
        }
        const double ff = f * (1.0 - f);
        m.density += wt * f;
        m.energy += wt * om * f;
        m.d_beta_density += -wt * om * ff;
        m.d_nu_density += wt * ff;
        m.d_beta_energy += -wt * om * om * ff;
        m.d_nu_energy += wt * om * ff;
    }
    return m;
}

// inner solve: nu such that density(beta, nu) = rho (monotone in nu)
double solve_nu(const Dispersion& disp, double beta, double rho) {
    double lo = -800.0, hi = 800.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fd_moments(disp, beta, mid).density < rho)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

FdFit fit_fermi_dirac(const ConservedPair& target, const Dispersion& disp) {
    if (!(target.density > 0.0 && target.density < 1.0))
        throw InfeasibleTarget("fit_fermi_dirac: density outside (0,1)");
    auto [e_lo, e_hi] = energy_bounds(disp, target.density);
    if (!(target.energy > e_lo && target.energy < e_hi)) {
        if (target.energy == e_lo || target.energy == e_hi)
            throw InfeasibleTarget("fit_fermi_dirac: target on the bathtub boundary (beta = +-inf)");
        throw InfeasibleTarget("fit_fermi_dirac: energy outside bathtub bounds");
    }

    double beta = 0.0;
    double nu = std::log(target.density / (1.0 - target.density));
    FdFit fit;
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
        const Moments m = fd_moments(disp, beta, nu);
        const double f1 = m.density - target.density;
        const double f2 = m.energy - target.energy;
        fit.iterations = it + 1;
        if (std::abs(f1) < 1e-13 && std::abs(f2) < 1e-13) {
            ok = true;
            break;
        }
        const double det = m.d_beta_density * m.d_nu_energy - m.d_nu_density * m.d_beta_energy;
        if (std::abs(det) < 1e-300) break;
        double db = (-f1 * m.d_nu_energy + f2 * m.d_nu_density) / det;
        double dn = (-m.d_beta_density * f2 + m.d_beta_energy * f1) / det;
        double step = 1.0;
        const double r0 = std::abs(f1) + std::abs(f2);
        for (int bt = 0; bt < 40; ++bt) {
            const Moments mt = fd_moments(disp, beta + step * db, nu + step * dn);
            if (std::abs(mt.density - target.density) + std::abs(mt.energy - target.energy) < r0) break;
            step *= 0.5;
        }
        beta += step * db;
        nu += step * dn;
    }

    if (!ok) {
        // bisection on beta; energy(beta, nu(beta)) is monotone decreasing
        double lo = -1e6, hi = 1e6;
        for (int it = 0; it < 400; ++it) {
            beta = 0.5 * (lo + hi);
            nu = solve_nu(disp, beta, target.density);
            if (fd_moments(disp, beta, nu).energy > target.energy)
                lo = beta;
            else
                hi = beta;
        }
        nu = solve_nu(disp, beta, target.density);
        const Moments m = fd_moments(disp, beta, nu);
        if (std::abs(m.density - target.density) > 1e-10 || std::abs(m.energy - target.energy) > 1e-10)
            throw FitFailure("fit_fermi_dirac: no convergence after Newton and bisection");
    }

    const Moments m = fd_moments(disp, beta, nu);
    fit.beta = beta;
    fit.nu = nu;
    fit.mu = beta != 0.0 ? nu / beta : 0.0;
    fit.residual_density = m.density - target.density;
    fit.residual_energy = m.energy - target.energy;
    return fit;
}

double sup_distance(const ScalarWigner& a, const ScalarWigner& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

} // namespace fermikin
