#include "fermikin/fock.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace fermikin {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int jw_sign(std::uint64_t mask, int mode) {
    const std::uint64_t below = mask & ((std::uint64_t{1} << mode) - 1);
    return std::popcount(below) % 2 == 0 ? 1 : -1;
}

// apply one CAR operator to a basis state; returns false if annihilated
bool apply_car(const CarLabel& op, std::uint64_t& mask, int& sign) {
    const std::uint64_t bit = std::uint64_t{1} << op.mode;
    if (op.kind == CarKind::annihilate) {
        if (!(mask & bit)) return false;
        sign *= jw_sign(mask, op.mode);
        mask ^= bit;
    } else {
        if (mask & bit) return false;
        sign *= jw_sign(mask, op.mode);
        mask |= bit;
    }
    return true;
}

// least-squares slope of ln(y) vs ln(x)
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

FockBasis::FockBasis(int L, bool with_spin) : sites(L), spin(with_spin) {
    modes = with_spin ? 2 * L : L;
    const int max_modes = with_spin ? 12 : 12;   // dim <= 4096
    if (L < 2 || modes > max_modes)
        throw std::invalid_argument("FockBasis: lattice too large for the dense oracle (dim > 4096)");
    dim = std::int64_t{1} << modes;
}

MatX car_operator(int mode, CarKind kind, const FockBasis& basis) {
    if (mode < 0 || mode >= basis.modes) throw std::invalid_argument("car_operator: mode out of range");
    MatX out = MatX::Zero(basis.dim, basis.dim);
    for (std::int64_t s = 0; s < basis.dim; ++s) {
        std::uint64_t mask = static_cast<std::uint64_t>(s);
        int sign = 1;
        if (apply_car({mode, kind}, mask, sign))
            out(static_cast<std::int64_t>(mask), s) = sign;
    }
    return out;
}

std::vector<double> hopping_profile(const Dispersion& disp) {
    const KGrid& g = disp.grid();
    if (g.dim() != 1) throw std::invalid_argument("hopping_profile: oracle grids are one-dimensional");
    const int L = g.points_per_axis();
    std::vector<double> alpha(static_cast<std::size_t>(L), 0.0);
    for (int x = 0; x < L; ++x) {
        std::complex<double> s = 0.0;
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const double k = g.wavenumber(i)[0];
            s += std::exp(std::complex<double>(0.0, two_pi * k * x)) * disp[i];
        }
        s /= static_cast<double>(L);
        if (std::abs(s.imag()) > 1e-12)
            throw std::runtime_error("hopping_profile: dispersion not symmetric");
        alpha[static_cast<std::size_t>(x)] = s.real();
    }
    return alpha;
}

std::vector<double> potential_profile(const PairPotential& vhat) {
    const KGrid& g = vhat.grid();
    if (g.dim() != 1) throw std::invalid_argument("potential_profile: oracle grids are one-dimensional");
    const int L = g.points_per_axis();
    std::vector<double> v(static_cast<std::size_t>(L), 0.0);
    for (int x = 0; x < L; ++x) {
        std::complex<double> s = 0.0;
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const double k = g.wavenumber(i)[0];
            s += std::exp(std::complex<double>(0.0, two_pi * k * x)) * vhat[i];
        }
        v[static_cast<std::size_t>(x)] = (s / static_cast<double>(L)).real();
    }
    return v;
}

MatX build_h0(const FockBasis& basis, const std::vector<double>& alpha) {
    const int L = basis.sites;
    if (alpha.size() != static_cast<std::size_t>(L))
        throw std::invalid_argument("build_h0: profile size mismatch");
    MatX h = MatX::Zero(basis.dim, basis.dim);
    const int n_spin = basis.spin ? 2 : 1;
    for (std::int64_t s = 0; s < basis.dim; ++s) {
        for (int y = 0; y < L; ++y)
            for (int sp = 0; sp < n_spin; ++sp) {
                const int my = basis.mode(y, sp);
                if (!(s & (std::int64_t{1} << my))) continue;
                for (int x = 0; x < L; ++x) {
                    const int mx = basis.mode(x, sp);
                    std::uint64_t mask = static_cast<std::uint64_t>(s);
                    int sign = 1;
                    if (!apply_car({my, CarKind::annihilate}, mask, sign)) continue;
                    if (!apply_car({mx, CarKind::create}, mask, sign)) continue;
                    h(static_cast<std::int64_t>(mask), s) += sign * alpha[static_cast<std::size_t>((x - y + L) % L)];
                }
            }
    }
    return h;
}

MatX build_v_spinless(const FockBasis& basis, const std::vector<double>& v_profile) {
    if (basis.spin) throw std::invalid_argument("build_v_spinless: spinless basis required");
    const int L = basis.sites;
    MatX v = MatX::Zero(basis.dim, basis.dim);
    for (std::int64_t s = 0; s < basis.dim; ++s) {
        double e = 0.0;
        for (int x = 0; x < L; ++x) {
            if (!(s & (std::int64_t{1} << x))) continue;
            for (int y = 0; y < L; ++y) {
                if (y == x || !(s & (std::int64_t{1} << y))) continue;
                e += 0.5 * v_profile[static_cast<std::size_t>((x - y + L) % L)];
            }
        }
        v(s, s) = e;
    }
    return v;
}

MatX build_v_hubbard(const FockBasis& basis) {
    if (!basis.spin) throw std::invalid_argument("build_v_hubbard: spin basis required");
    MatX v = MatX::Zero(basis.dim, basis.dim);
    for (std::int64_t s = 0; s < basis.dim; ++s) {
        int doubly = 0;
        for (int x = 0; x < basis.sites; ++x) {
            const std::int64_t up = std::int64_t{1} << basis.mode(x, 0);
            const std::int64_t dn = std::int64_t{1} << basis.mode(x, 1);
            if ((s & up) && (s & dn)) ++doubly;
        }
        v(s, s) = doubly;
    }
    return v;
}

MatX build_hamiltonian_spinless(const FockBasis& basis, const Dispersion& disp,
                                const PairPotential& vhat, double lambda) {
    return build_h0(basis, hopping_profile(disp)) +
           lambda * build_v_spinless(basis, potential_profile(vhat));
}

MatX build_hamiltonian_hubbard(const FockBasis& basis, const Dispersion& disp, double lambda) {
    return build_h0(basis, hopping_profile(disp)) + lambda * build_v_hubbard(basis);
}

HamiltonianEigen::HamiltonianEigen(const MatX& h) {
    Eigen::SelfAdjointEigenSolver<MatX> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("HamiltonianEigen: eigensolver failed");
    eigenvalues = es.eigenvalues();
    eigenvectors = es.eigenvectors();
}

MatX HamiltonianEigen::evolve(const MatX& rho, double t) const {
    VecX phase(eigenvalues.size());
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        phase(i) = std::exp(std::complex<double>(0.0, -eigenvalues(i) * t));
    const MatX u = eigenvectors * phase.asDiagonal() * eigenvectors.adjoint();
    return u * rho * u.adjoint();
}

MatX evolve(const MatX& rho, const MatX& h, double t) { return HamiltonianEigen(h).evolve(rho, t); }

std::complex<double> expectation(const MatX& rho, const std::vector<CarLabel>& ops,
                                 const FockBasis& basis) {
    std::complex<double> acc = 0.0;
    for (std::int64_t s = 0; s < basis.dim; ++s) {
        std::uint64_t mask = static_cast<std::uint64_t>(s);
        int sign = 1;
        bool alive = true;
        for (auto it = ops.rbegin(); it != ops.rend(); ++it)
            if (!apply_car(*it, mask, sign)) {
                alive = false;
                break;
            }
        if (alive) acc += static_cast<double>(sign) * rho(s, static_cast<std::int64_t>(mask));
    }
    return acc;
}

std::complex<double> truncated_four_point(const MatX& rho, const std::array<CarLabel, 4>& ops,
                                          const FockBasis& basis) {
    auto pair = [&](int i, int j) {
        return expectation(rho, {ops[static_cast<std::size_t>(i)], ops[static_cast<std::size_t>(j)]}, basis);
    };
    const std::complex<double> full =
        expectation(rho, {ops[0], ops[1], ops[2], ops[3]}, basis);
    return full - pair(0, 1) * pair(2, 3) + pair(0, 2) * pair(1, 3) - pair(0, 3) * pair(1, 2);
}

GaussianStateSpec prepare_quasifree(const MatX& target, const FockBasis& basis) {
    if (target.rows() != basis.modes || target.cols() != basis.modes)
        throw std::invalid_argument("prepare_quasifree: target size mismatch");
    if ((target - target.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("prepare_quasifree: target not Hermitian");
    Eigen::SelfAdjointEigenSolver<MatX> es(target);
    const double delta = 1e-6;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double r = es.eigenvalues()(i);
        if (!(r > delta && r < 1.0 - delta))
            throw std::invalid_argument(
                "prepare_quasifree: target occupation not strictly interior; use slater_state");
    }
    VecX logr(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double r = es.eigenvalues()(i);
        logr(i) = std::log((1.0 - r) / r);
    }
    const MatX h = es.eigenvectors() * logr.asDiagonal() * es.eigenvectors().adjoint();

    // dGamma(h) = sum h_ij a*_i a_j on the Fock space
    MatX k = MatX::Zero(basis.dim, basis.dim);
    for (std::int64_t s = 0; s < basis.dim; ++s)
        for (int j = 0; j < basis.modes; ++j) {
            if (!(s & (std::int64_t{1} << j))) continue;
            for (int i = 0; i < basis.modes; ++i) {
                std::uint64_t mask = static_cast<std::uint64_t>(s);
                int sign = 1;
                if (!apply_car({j, CarKind::annihilate}, mask, sign)) continue;
                if (!apply_car({i, CarKind::create}, mask, sign)) continue;
                k(static_cast<std::int64_t>(mask), s) += static_cast<double>(sign) * h(i, j);
            }
        }

    Eigen::SelfAdjointEigenSolver<MatX> ek(k);
    const double w0 = ek.eigenvalues().minCoeff();   // shift before exponentiating
    VecX boltz(ek.eigenvalues().size());
    for (Eigen::Index i = 0; i < ek.eigenvalues().size(); ++i)
        boltz(i) = std::exp(-(ek.eigenvalues()(i) - w0));
    MatX rho = ek.eigenvectors() * boltz.asDiagonal() * ek.eigenvectors().adjoint();
    rho /= rho.trace().real();

    GaussianStateSpec spec{target, std::move(rho)};
    const MatX realized = measure_one_particle(spec.rho, basis);
    if ((realized - target).cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("prepare_quasifree: realized reduced density matrix off target");
    return spec;
}

MatX slater_state(const FockBasis& basis, const std::vector<VecX>& orbitals) {
    VecX psi = VecX::Zero(basis.dim);
    psi(0) = 1.0;
    for (const VecX& g : orbitals) {
        if (g.size() != basis.modes) throw std::invalid_argument("slater_state: orbital size mismatch");
        VecX next = VecX::Zero(basis.dim);
        for (std::int64_t s = 0; s < basis.dim; ++s) {
            if (psi(s) == std::complex<double>(0.0)) continue;
            for (int m = 0; m < basis.modes; ++m) {
                if (g(m) == std::complex<double>(0.0)) continue;
                std::uint64_t mask = static_cast<std::uint64_t>(s);
                int sign = 1;
                if (!apply_car({m, CarKind::create}, mask, sign)) continue;
                next(static_cast<std::int64_t>(mask)) += static_cast<double>(sign) * g(m) * psi(s);
            }
        }
        psi = next;
    }
    const double norm = psi.norm();
    if (norm < 1e-12) throw std::invalid_argument("slater_state: orbitals linearly dependent");
    psi /= norm;
    return psi * psi.adjoint();
}

MatX measure_one_particle(const MatX& rho, const FockBasis& basis) {
    MatX r(basis.modes, basis.modes);
    for (int i = 0; i < basis.modes; ++i)
        for (int j = 0; j < basis.modes; ++j)
            r(i, j) = expectation(rho, {{j, CarKind::create}, {i, CarKind::annihilate}}, basis);
    return r;
}

double translation_invariance_violation(const MatX& r1, const FockBasis& basis) {
    const int L = basis.sites;
    const int n_spin = basis.spin ? 2 : 1;
    double v = 0.0;
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            for (int s = 0; s < n_spin; ++s)
                for (int sp = 0; sp < n_spin; ++sp) {
                    const auto a = r1(basis.mode(x, s), basis.mode(y, sp));
                    const auto b = r1(basis.mode((x + 1) % L, s), basis.mode((y + 1) % L, sp));
                    v = std::max(v, std::abs(a - b));
                }
    return v;
}

namespace {

// F_{s' s}(y) = avg_x <a*(x+y, s') a(x, s)>; W_{s' s}(k) = sum_y e^{-i 2 pi k y} F(y)
std::complex<double> wigner_component(const MatX& r1, const FockBasis& basis, double k, int sp, int s) {
    const int L = basis.sites;
    std::complex<double> acc = 0.0;
    for (int y = 0; y < L; ++y) {
        std::complex<double> f = 0.0;
        for (int x = 0; x < L; ++x) f += r1(basis.mode(x, s), basis.mode((x + y) % L, sp));
        f /= static_cast<double>(L);
        acc += std::exp(std::complex<double>(0.0, -two_pi * k * y)) * f;
    }
    return acc;
}

void require_translation_invariant(const MatX& r1, const FockBasis& basis) {
    const double v = translation_invariance_violation(r1, basis);
    if (v > 1e-10)
        throw std::runtime_error("measure_wigner: state not translation invariant, violation " +
                                 std::to_string(v));
}

} // namespace

std::vector<double> measure_wigner_spinless(const MatX& rho, const FockBasis& basis) {
    const MatX r1 = measure_one_particle(rho, basis);
    require_translation_invariant(r1, basis);
    const KGrid g(1, basis.sites);
    std::vector<double> w(static_cast<std::size_t>(g.size()));
    for (std::int64_t i = 0; i < g.size(); ++i)
        w[static_cast<std::size_t>(i)] = wigner_component(r1, basis, g.wavenumber(i)[0], 0, 0).real();
    return w;
}

std::vector<Mat2> measure_wigner_hubbard(const MatX& rho, const FockBasis& basis) {
    const MatX r1 = measure_one_particle(rho, basis);
    require_translation_invariant(r1, basis);
    const KGrid g(1, basis.sites);
    std::vector<Mat2> w(static_cast<std::size_t>(g.size()));
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const double k = g.wavenumber(i)[0];
        Mat2 m;
        for (int sp = 0; sp < 2; ++sp)
            for (int s = 0; s < 2; ++s) m(sp, s) = wigner_component(r1, basis, k, sp, s);
        w[static_cast<std::size_t>(i)] = 0.5 * (m + m.adjoint().eval());
    }
    return w;
}

MatX one_particle_from_wigner(const std::vector<double>& w, const FockBasis& basis) {
    const int L = basis.sites;
    const KGrid g(1, L);
    MatX r = MatX::Zero(basis.modes, basis.modes);
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y) {
            std::complex<double> f = 0.0;
            for (std::int64_t i = 0; i < g.size(); ++i) {
                const double k = g.wavenumber(i)[0];
                f += std::exp(std::complex<double>(0.0, two_pi * k * (y - x))) *
                     w[static_cast<std::size_t>(i)];
            }
            r(x, y) = f / static_cast<double>(L);
        }
    return r;
}

MatX one_particle_from_wigner(const std::vector<Mat2>& w, const FockBasis& basis) {
    const int L = basis.sites;
    const KGrid g(1, L);
    MatX r = MatX::Zero(basis.modes, basis.modes);
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            for (int s = 0; s < 2; ++s)
                for (int sp = 0; sp < 2; ++sp) {
                    std::complex<double> f = 0.0;
                    for (std::int64_t i = 0; i < g.size(); ++i) {
                        const double k = g.wavenumber(i)[0];
                        f += std::exp(std::complex<double>(0.0, two_pi * k * (y - x))) *
                             w[static_cast<std::size_t>(i)](sp, s);
                    }
                    r(basis.mode(x, s), basis.mode(y, sp)) = f / static_cast<double>(L);
                }
    return r;
}

Mat2 microscopic_spin_matrix(const MatX& rho, const FockBasis& basis) {
    const MatX r1 = measure_one_particle(rho, basis);
    Mat2 sigma = Mat2::Zero();
    for (int x = 0; x < basis.sites; ++x)
        for (int sp = 0; sp < 2; ++sp)
            for (int s = 0; s < 2; ++s) sigma(sp, s) += r1(basis.mode(x, s), basis.mode(x, sp));
    return sigma / static_cast<double>(basis.sites);
}

OracleSlopeReport kinetic_consistency_spinless(const Dispersion& disp, const PairPotential& vhat,
                                               const std::vector<double>& w0,
                                               const std::vector<double>& lambdas, double t_probe) {
    const int L = disp.grid().points_per_axis();
    const FockBasis basis(L, false);
    const GaussianStateSpec state = prepare_quasifree(one_particle_from_wigner(w0, basis), basis);
    const MatX h0 = build_h0(basis, hopping_profile(disp));
    const MatX v = build_v_spinless(basis, potential_profile(vhat));

    OracleSlopeReport rep;
    rep.t_probe = t_probe;
    for (double lam : lambdas) {
        const HamiltonianEigen eig(h0 + lam * v);
        const double h = 1e-4 / lam;
        const auto wp = measure_wigner_spinless(eig.evolve(state.rho, t_probe + h), basis);
        const auto wm = measure_wigner_spinless(eig.evolve(state.rho, t_probe - h), basis);
        double norm = 0.0;
        for (std::size_t i = 0; i < wp.size(); ++i)
            norm = std::max(norm, std::abs(wp[i] - wm[i]) / (2.0 * h));
        rep.lambdas.push_back(lam);
        rep.derivative_norms.push_back(norm);
    }
    rep.slope_raw = loglog_slope(rep.lambdas, rep.derivative_norms);
    return rep;
}

OracleSlopeReport kinetic_consistency_hubbard(const Dispersion& disp, const std::vector<Mat2>& w0,
                                              const std::vector<double>& lambdas, double t_probe) {
    const int L = disp.grid().points_per_axis();
    const FockBasis basis(L, true);
    const GaussianStateSpec state = prepare_quasifree(one_particle_from_wigner(w0, basis), basis);
    const MatX h0 = build_h0(basis, hopping_profile(disp));
    const MatX v = build_v_hubbard(basis);

    Mat2 sigma = Mat2::Zero();
    for (const Mat2& m : w0) sigma += m;
    sigma /= static_cast<double>(w0.size());

    OracleSlopeReport rep;
    rep.t_probe = t_probe;
    for (double lam : lambdas) {
        const HamiltonianEigen eig(h0 + lam * v);
        const double h = 1e-4 / lam;
        const auto wp = measure_wigner_hubbard(eig.evolve(state.rho, t_probe + h), basis);
        const auto wm = measure_wigner_hubbard(eig.evolve(state.rho, t_probe - h), basis);
        double norm = 0.0, resid = 0.0;
        for (std::size_t i = 0; i < wp.size(); ++i) {
            const Mat2 dw = (wp[i] - wm[i]) / (2.0 * h);
            const Mat2 pred = std::complex<double>(0.0, -lam) * (sigma * w0[i] - w0[i] * sigma);
            norm = std::max(norm, dw.cwiseAbs().maxCoeff());
            resid = std::max(resid, (dw - pred).cwiseAbs().maxCoeff());
        }
        rep.lambdas.push_back(lam);
        rep.derivative_norms.push_back(norm);
        rep.residual_norms.push_back(resid);
    }
    rep.slope_raw = loglog_slope(rep.lambdas, rep.derivative_norms);
    rep.slope_residual = loglog_slope(rep.lambdas, rep.residual_norms);
    return rep;
}

} // namespace fermikin
