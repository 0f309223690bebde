#include "reference_kernels.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace fermikin::reference {

namespace {

// J[A] as the explicit 2x2 adjugate: [[a,b],[c,d]] -> [[d,-b],[-c,a]]
Mat2 adjugate(const Mat2& a) {
    Mat2 out;
    out(0, 0) = a(1, 1);
    out(0, 1) = -a(0, 1);
    out(1, 0) = -a(1, 0);
    out(1, 1) = a(0, 0);
    return out;
}

} // namespace

std::vector<double> collision_bn(const ScalarWigner& w, const Dispersion& disp,
                                 const PairPotential& vhat, const KineticParams& params) {
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const double cw = g.cell_weight();
    // integral over three momenta with the discrete momentum delta
    // |Lambda| 1[k0+k1-k2-k3 = 0]: weight cw^3 * n per admitted triple
    const double pref = std::numbers::pi * params.lambda * params.lambda * cw * cw * cw * static_cast<double>(n);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i0 = 0; i0 < n; ++i0) {
        double acc = 0.0;
        for (std::int64_t i1 = 0; i1 < n; ++i1)
            for (std::int64_t i2 = 0; i2 < n; ++i2)
                for (std::int64_t i3 = 0; i3 < n; ++i3) {
                    if (g.sub(g.add(i0, i1), g.add(i2, i3)) != 0) continue;
                    const double dw = disp[i0] + disp[i1] - disp[i2] - disp[i3];
                    const double vd = vhat[g.sub(i1, i2)] - vhat[g.sub(i1, i3)];
                    const double w0 = w[i0], w1 = w[i1], w2 = w[i2], w3 = w[i3];
                    // four-term bracket as derived, before the symmetric rewrite
                    const double bracket =
                        (1.0 - w1) * w2 * w3 - w0 * w2 * w3 - w0 * w1 * (1.0 - w2) + w0 * w1 * w3;
                    acc += vd * vd * energy_delta(dw, params.eps, params.kernel) * bracket;
                }
        out[static_cast<std::size_t>(i0)] = pref * acc;
    }
    return out;
}

double entropy_production(const ScalarWigner& w, const Dispersion& disp,
                          const PairPotential& vhat, const KineticParams& params) {
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const double cw = g.cell_weight();
    const double pref = 0.25 * std::numbers::pi * params.lambda * params.lambda * cw * cw * cw * cw *
                        static_cast<double>(n);
    double acc = 0.0;
    for (std::int64_t i1 = 0; i1 < n; ++i1)
        for (std::int64_t i2 = 0; i2 < n; ++i2)
            for (std::int64_t i3 = 0; i3 < n; ++i3)
                for (std::int64_t i4 = 0; i4 < n; ++i4) {
                    if (g.sub(g.add(i1, i2), g.add(i3, i4)) != 0) continue;
                    const double dw = disp[i1] + disp[i2] - disp[i3] - disp[i4];
                    const double vd = vhat[g.sub(i2, i3)] - vhat[g.sub(i2, i4)];
                    const double x =
                        std::max((1.0 - w[i1]) * (1.0 - w[i2]) * w[i3] * w[i4], 1e-300);
                    const double y =
                        std::max(w[i1] * w[i2] * (1.0 - w[i3]) * (1.0 - w[i4]), 1e-300);
                    acc += vd * vd * energy_delta(dw, params.eps, params.kernel) * (x - y) * std::log(x / y);
                }
    return pref * acc;
}

std::vector<Mat2> collision_hubbard(const MatrixWigner& w, const Dispersion& disp,
                                    const KineticParams& params) {
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const double cw = g.cell_weight();
    const double pref = std::numbers::pi * params.lambda * params.lambda * cw * cw * cw * static_cast<double>(n);
    std::vector<Mat2> out(static_cast<std::size_t>(n), Mat2::Zero());
    const Mat2 one = Mat2::Identity();
    for (std::int64_t i0 = 0; i0 < n; ++i0) {
        Mat2 acc = Mat2::Zero();
        for (std::int64_t i1 = 0; i1 < n; ++i1)
            for (std::int64_t i2 = 0; i2 < n; ++i2)
                for (std::int64_t i3 = 0; i3 < n; ++i3) {
                    if (g.sub(g.add(i0, i1), g.add(i2, i3)) != 0) continue;
                    const double dw = disp[i0] + disp[i1] - disp[i2] - disp[i3];
                    const double d = energy_delta(dw, params.eps, params.kernel);
                    const Mat2 W0 = w[i0], W1 = w[i1], W2 = w[i2], W3 = w[i3];
                    const Mat2 Wt0 = one - W0, Wt1 = one - W1, Wt2 = one - W2, Wt3 = one - W3;
                    acc += d * (Wt0 * W2 * adjugate(Wt1 * W3) + adjugate(W3 * Wt1) * W2 * Wt0 -
                                W0 * Wt2 * adjugate(W1 * Wt3) - adjugate(Wt3 * W1) * Wt2 * W0);
                }
        out[static_cast<std::size_t>(i0)] = pref * acc;
    }
    return out;
}

std::vector<Mat2> effective_hamiltonian(const MatrixWigner& w, const Dispersion& disp,
                                        const KineticParams& params) {
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const double cw = g.cell_weight();
    const double pref = params.lambda * params.lambda * cw * cw * cw * static_cast<double>(n);
    const Mat2 one = Mat2::Identity();
    Mat2 sigma = Mat2::Zero();
    for (const Mat2& m : w.values) sigma += cw * m;
    std::vector<Mat2> out(static_cast<std::size_t>(n), Mat2::Zero());
    for (std::int64_t i0 = 0; i0 < n; ++i0) {
        Mat2 acc = Mat2::Zero();
        for (std::int64_t i1 = 0; i1 < n; ++i1)
            for (std::int64_t i2 = 0; i2 < n; ++i2)
                for (std::int64_t i3 = 0; i3 < n; ++i3) {
                    if (g.sub(g.add(i0, i1), g.add(i2, i3)) != 0) continue;
                    const double dw = disp[i0] + disp[i1] - disp[i2] - disp[i3];
                    const double pv = mollified_pv(dw, params.pv_eps());
                    const Mat2 W1 = w[i1], W2 = w[i2], W3 = w[i3];
                    const Mat2 Wt1 = one - W1, Wt2 = one - W2, Wt3 = one - W3;
                    acc += pv * (Wt2 * adjugate(W1 * Wt3) + W2 * adjugate(Wt1 * W3));
                }
        out[static_cast<std::size_t>(i0)] = params.lambda * sigma + pref * acc;
    }
    return out;
}

double matrix_entropy_production(const MatrixWigner& w, const Dispersion& disp,
                                 const KineticParams& params) {
    const KGrid& g = *w.grid;
    const std::int64_t n = g.size();
    const double cw = g.cell_weight();
    const double pref = 0.25 * std::numbers::pi * params.lambda * params.lambda * cw * cw * cw * cw *
                        static_cast<double>(n);
    std::vector<Eigen::Vector2d> lam(static_cast<std::size_t>(n));
    std::vector<Mat2> psi(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Eigen::SelfAdjointEigenSolver<Mat2> es(w[i]);
        lam[static_cast<std::size_t>(i)] = es.eigenvalues();
        psi[static_cast<std::size_t>(i)] = es.eigenvectors();
    }
    double acc = 0.0;
    for (std::int64_t i1 = 0; i1 < n; ++i1)
        for (std::int64_t i2 = 0; i2 < n; ++i2)
            for (std::int64_t i3 = 0; i3 < n; ++i3)
                for (std::int64_t i4 = 0; i4 < n; ++i4) {
                    if (g.sub(g.add(i1, i2), g.add(i3, i4)) != 0) continue;
                    const double dw = disp[i1] + disp[i2] - disp[i3] - disp[i4];
                    const double d = energy_delta(dw, params.eps, params.kernel);
                    for (int a1 = 0; a1 < 2; ++a1)
                        for (int a2 = 0; a2 < 2; ++a2)
                            for (int a3 = 0; a3 < 2; ++a3)
                                for (int a4 = 0; a4 < 2; ++a4) {
                                    const double l1 = lam[i1](a1), l2 = lam[i2](a2);
                                    const double l3 = lam[i3](a3), l4 = lam[i4](a4);
                                    const double x = std::max((1 - l1) * (1 - l2) * l3 * l4, 1e-300);
                                    const double y = std::max(l1 * l2 * (1 - l3) * (1 - l4), 1e-300);
                                    if (x == y) continue;
                                    const std::complex<double> ovl =
                                        psi[i1].col(a1).dot(psi[i3].col(a3)) * psi[i2].col(a2).dot(psi[i4].col(a4)) -
                                        psi[i1].col(a1).dot(psi[i4].col(a4)) * psi[i2].col(a2).dot(psi[i3].col(a3));
                                    acc += d * (x - y) * std::log(x / y) * std::norm(ovl);
                                }
                }
    return pref * acc;
}

SpinMatrix spin_correlation(const MatrixWigner& w) {
    Mat2 s = Mat2::Zero();
    for (const Mat2& m : w.values) s += m;
    return w.grid->cell_weight() * s;
}

} // namespace fermikin::reference
