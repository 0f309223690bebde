#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fermikin/grid.hpp"
#include "fermikin/mollifier.hpp"

namespace fermikin {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

/// Scalar occupation field W(k) in [0, 1] on a momentum grid.
struct ScalarWigner {
    const KGrid* grid = nullptr;
    std::vector<double> values;

    ScalarWigner() = default;
    ScalarWigner(const KGrid& g, double fill = 0.0)
        : grid(&g), values(static_cast<std::size_t>(g.size()), fill) {}

    double& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return grid->size(); }
};

/// Hermitian 2x2 occupation matrix field with eigenvalues in [0, 1].
struct MatrixWigner {
    const KGrid* grid = nullptr;
    std::vector<Mat2> values;

    MatrixWigner() = default;
    explicit MatrixWigner(const KGrid& g)
        : grid(&g), values(static_cast<std::size_t>(g.size()), Mat2::Zero()) {}

    Mat2& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
    const Mat2& operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return grid->size(); }
};

/// Conserved k-averages of the matrix field (the spin correlation matrix).
using SpinMatrix = Mat2;

struct ConservedPair {
    double density = 0.0;
    double energy = 0.0;
};

/// Shared kernel/regularization parameters of the kinetic operators.
struct KineticParams {
    double lambda = 1.0;
    double eps = 0.1;                              ///< width of the energy delta
    double eps_pv = -1.0;                          ///< principal-value width; <0 couples it to eps
    DeltaKernel kernel = DeltaKernel::lorentzian;  ///< see decisions in mollifier.hpp
    bool conserve_energy = true;                   ///< counterterm in rhs_* evaluations

    double pv_eps() const { return eps_pv > 0.0 ? eps_pv : eps; }
};

/// Closed-form eigensystem of a Hermitian 2x2 matrix.
/// Columns of `vectors` are orthonormal eigenvectors; eigenvalues ascending.
/// Below the degeneracy guard any orthonormal basis is acceptable; the
/// standard basis is returned.
struct EigenSystem2 {
    std::array<double, 2> eigenvalues;
    Mat2 vectors;
};
EigenSystem2 eig_herm2(const Mat2& w, double degeneracy_tol = 1e-12);

/// Eigenvalue bounds of a Hermitian 2x2 matrix without the eigenvectors.
std::array<double, 2> eigvals_herm2(const Mat2& w);

/// J[A] = tr(A) 1 - A; for 2x2 this is the adjugate, so the components can
/// be moved without any arithmetic and the involution J[J[A]] = A is exact.
inline Mat2 j_map(const Mat2& a) {
    Mat2 out;
    out(0, 0) = a(1, 1);
    out(0, 1) = -a(0, 1);
    out(1, 0) = -a(1, 0);
    out(1, 1) = a(0, 0);
    return out;
}

/// Admissibility: scalar values within [-tol, 1+tol], matrix eigenvalues likewise.
bool admissible(const ScalarWigner& w, double tol = 1e-9);
bool admissible(const MatrixWigner& w, double tol = 1e-9);

/// Largest deviation from Hermiticity over the field.
double hermiticity_error(const MatrixWigner& w);

double max_abs(const std::vector<double>& v);
double max_abs(const std::vector<Mat2>& v);

} // namespace fermikin
