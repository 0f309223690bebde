#include "fermikin/wigner.hpp"

#include <cmath>

namespace fermikin {

EigenSystem2 eig_herm2(const Mat2& w, double degeneracy_tol) {
    double a = w(0, 0).real();
    double d = w(1, 1).real();
    std::complex<double> b = w(0, 1);
    double half_tr = 0.5 * (a + d);
    double disc = std::hypot(0.5 * (a - d), std::abs(b));

    EigenSystem2 out;
    out.eigenvalues = {half_tr - disc, half_tr + disc};
    if (2.0 * disc < degeneracy_tol) {
        out.vectors = Mat2::Identity();
        return out;
    }
    // eigenvector for the larger eigenvalue; pick the better-conditioned column
    double lam = out.eigenvalues[1];
    Vec2 vp;
    if (std::abs(lam - a) >= std::abs(lam - d))
        vp << b, std::complex<double>(lam - a, 0.0);
    else
        vp << std::complex<double>(lam - d, 0.0), std::conj(b);
    vp.normalize();
    Vec2 vm;
    vm << -std::conj(vp(1)), std::conj(vp(0));
    out.vectors.col(0) = vm;
    out.vectors.col(1) = vp;
    return out;
}

std::array<double, 2> eigvals_herm2(const Mat2& w) {
    double a = w(0, 0).real();
    double d = w(1, 1).real();
    double half_tr = 0.5 * (a + d);
    double disc = std::hypot(0.5 * (a - d), std::abs(w(0, 1)));
    return {half_tr - disc, half_tr + disc};
}

bool admissible(const ScalarWigner& w, double tol) {
    for (double v : w.values)
        if (!(v >= -tol && v <= 1.0 + tol)) return false;
    return true;
}

bool admissible(const MatrixWigner& w, double tol) {
    for (const Mat2& m : w.values) {
        auto ev = eigvals_herm2(m);
        if (!(ev[0] >= -tol && ev[1] <= 1.0 + tol)) return false;
    }
    return true;
}

double hermiticity_error(const MatrixWigner& w) {
    double err = 0.0;
    for (const Mat2& m : w.values) err = std::max(err, (m - m.adjoint().eval()).cwiseAbs().maxCoeff());
    return err;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const std::vector<Mat2>& v) {
    double m = 0.0;
    for (const Mat2& x : v) m = std::max(m, x.cwiseAbs().maxCoeff());
    return m;
}

} // namespace fermikin
