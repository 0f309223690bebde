#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fermikin/dispersion.hpp"
#include "fermikin/wigner.hpp"

namespace fermikin {

using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

/// Occupation-bitmask basis over L sites (d=1), spinless or spin-1/2.
/// Mode ordering is site-major, spin-minor: mode(x, s) = 2x + s for the spin
/// case with s = 0 for spin +1 (up) and s = 1 for spin -1 (down); mode 0 is
/// the least significant bit. Basis states are bitmasks in increasing order.
struct FockBasis {
    int sites = 0;
    bool spin = false;
    int modes = 0;
    std::int64_t dim = 0;

    FockBasis(int L, bool with_spin);
    int mode(int x, int s = 0) const { return spin ? 2 * x + s : x; }
};

enum class CarKind { annihilate, create };

struct CarLabel {
    int mode;
    CarKind kind;
};

/// Dense matrix of a(mode) or a*(mode) with Jordan-Wigner signs.
MatX car_operator(int mode, CarKind kind, const FockBasis& basis);

/// Hopping profile alpha(x; L) from the inverse Fourier transform of the
/// dispersion restricted to the L-point dual lattice. Always real.
std::vector<double> hopping_profile(const Dispersion& disp);

/// Real-space pair potential V(x; L) from a PairPotential on the L-grid.
std::vector<double> potential_profile(const PairPotential& vhat);

/// H0 = sum alpha(x-y) a*(x,s) a(y,s); Hermitian dense matrix.
MatX build_h0(const FockBasis& basis, const std::vector<double>& alpha);

/// Spinless V = (1/2) sum V(x-y) a*(x) a*(y) a(y) a(x); diagonal.
MatX build_v_spinless(const FockBasis& basis, const std::vector<double>& v_profile);

/// Hubbard V = sum_x a*(x,+) a*(x,-) a(x,-) a(x,+); diagonal.
MatX build_v_hubbard(const FockBasis& basis);

MatX build_hamiltonian_spinless(const FockBasis& basis, const Dispersion& disp,
                                const PairPotential& vhat, double lambda);
MatX build_hamiltonian_hubbard(const FockBasis& basis, const Dispersion& disp, double lambda);

/// Cached eigendecomposition of a Hermitian many-body operator.
struct HamiltonianEigen {
    Eigen::VectorXd eigenvalues;
    MatX eigenvectors;
    explicit HamiltonianEigen(const MatX& h);
    MatX evolve(const MatX& rho, double t) const;   ///< U_t rho U_t*
};

MatX evolve(const MatX& rho, const MatX& h, double t);

/// Expectation of an ordered product of creation/annihilation operators.
std::complex<double> expectation(const MatX& rho, const std::vector<CarLabel>& ops,
                                 const FockBasis& basis);

/// rho[a1 a2 a3 a4] - rho[a1 a2] rho[a3 a4] + rho[a1 a3] rho[a2 a4]
/// - rho[a1 a4] rho[a2 a3].
std::complex<double> truncated_four_point(const MatX& rho, const std::array<CarLabel, 4>& ops,
                                          const FockBasis& basis);

struct GaussianStateSpec {
    MatX target;   ///< one-particle reduced density matrix, R_ij = <a*_j a_i>
    MatX rho;      ///< realized many-body density matrix
};

/// Quasifree state with one-particle reduced density matrix `target`
/// (Hermitian, eigenvalues in (1e-6, 1-1e-6)); verified to 1e-10.
GaussianStateSpec prepare_quasifree(const MatX& target, const FockBasis& basis);

/// Pure Slater determinant a*(g_1)...a*(g_n) Omega as a density matrix;
/// covers boundary occupations 0/1.
MatX slater_state(const FockBasis& basis, const std::vector<VecX>& orbitals);

/// Full one-particle reduced density matrix R_ij = <a*_j a_i>.
MatX measure_one_particle(const MatX& rho, const FockBasis& basis);

/// Largest violation of translation invariance of the two-point function.
double translation_invariance_violation(const MatX& r1, const FockBasis& basis);

/// Wigner function from the position-space two-point function; requires a
/// translation-invariant state (throws with the measured violation if not).
std::vector<double> measure_wigner_spinless(const MatX& rho, const FockBasis& basis);
std::vector<Mat2> measure_wigner_hubbard(const MatX& rho, const FockBasis& basis);

/// One-particle reduced density matrix of the target Wigner field (used to
/// prepare translation-invariant quasifree states).
MatX one_particle_from_wigner(const std::vector<double>& w, const FockBasis& basis);
MatX one_particle_from_wigner(const std::vector<Mat2>& w, const FockBasis& basis);

/// Microscopic spin-correlation matrix (k-average of the matrix Wigner fn).
Mat2 microscopic_spin_matrix(const MatX& rho, const FockBasis& basis);

struct OracleSlopeReport {
    std::vector<double> lambdas;
    std::vector<double> derivative_norms;   ///< ||dW/dt||_inf at t_probe
    std::vector<double> residual_norms;     ///< Hubbard: after subtracting -i lambda [Sigma, W0]
    double slope_raw = 0.0;
    double slope_residual = 0.0;
    double t_probe = 0.0;
};

/// Exact-evolution probe of the weak-coupling structure: evolve a quasifree
/// state to t_probe and measure dW/dt by a symmetric difference of step
/// 1e-4/lambda. Spinless: the derivative itself scales as lambda^2. Hubbard:
/// dW/dt = -i lambda [Sigma, W] + O(lambda^2).
OracleSlopeReport kinetic_consistency_spinless(const Dispersion& disp, const PairPotential& vhat,
                                               const std::vector<double>& w0,
                                               const std::vector<double>& lambdas, double t_probe);
OracleSlopeReport kinetic_consistency_hubbard(const Dispersion& disp, const std::vector<Mat2>& w0,
                                              const std::vector<double>& lambdas, double t_probe);

} // namespace fermikin
