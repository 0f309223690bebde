#pragma once

#include "fermikin/dispersion.hpp"
#include "fermikin/spinless.hpp"
#include "fermikin/wigner.hpp"

namespace fermikin {

/// k-average of the matrix Wigner function; conserved by the Hubbard flow.
SpinMatrix spin_correlation(const MatrixWigner& w);

/// Hubbard-Boltzmann collision operator (onsite interaction, vhat == 1
/// absorbed into lambda). Hermitian at every k.
std::vector<Mat2> collision_hubbard(const MatrixWigner& w, const Dispersion& disp,
                                    const KineticParams& params);

/// Effective Hamiltonian: lambda Sigma plus the second-order principal-value
/// term. Hermitian at every k.
std::vector<Mat2> effective_hamiltonian(const MatrixWigner& w, const Dispersion& disp,
                                        const KineticParams& params);

/// Full right-hand side C[W] - i [H_eff[W], W], with the exact-energy
/// counterterm when params.conserve_energy is set.
std::vector<Mat2> rhs_hubbard(const MatrixWigner& w, const Dispersion& disp,
                              const KineticParams& params);

/// -sum_k weight [tr(W ln W) + tr((1-W) ln(1-W))] via eigenvalues, 0 ln 0 = 0.
double matrix_entropy(const MatrixWigner& w);

/// Eigensystem entropy production; >= 0, equals dS/dt along collision-only flow.
double matrix_entropy_production(const MatrixWigner& w, const Dispersion& disp,
                                 const KineticParams& params);

double total_energy(const MatrixWigner& w, const Dispersion& disp);

struct TwoBandFit {
    double beta = 0.0;
    double mu_plus = 0.0;   ///< chemical potential of the larger-occupation band
    double mu_minus = 0.0;
    double nu_plus = 0.0;
    double nu_minus = 0.0;
    Mat2 basis = Mat2::Identity();   ///< columns diagonalize Sigma (band -, band +)
    int iterations = 0;
};

/// Fit grand-canonical (beta, mu+, mu-) to the Sigma eigenvalues and total
/// energy. Band +/- refer to the Sigma eigenbasis (column 1 / column 0).
TwoBandFit fit_two_band(const SpinMatrix& sigma, double energy, const Dispersion& disp);

/// Equilibrium field of a two-band fit: U diag(g-, g+) U*.
MatrixWigner two_band_state(const TwoBandFit& fit, const Dispersion& disp);

enum class StationaryTag { two_band_fd, empty_band, full_band, d1_degenerate, not_stationary };

struct StationaryClass {
    StationaryTag tag = StationaryTag::not_stationary;
    double beta = 0.0;
    double mu_plus = 0.0;
    double mu_minus = 0.0;
    Mat2 basis = Mat2::Identity();
    int band_index = -1;     ///< empty/full band index in the Sigma eigenbasis
    double residual = 0.0;   ///< fit residual or collision norm backing the tag
};

const char* to_string(StationaryTag tag);

/// Classify a candidate stationary state; precedence empty -> full ->
/// two-band FD -> d=1 degenerate -> not stationary.
StationaryClass classify_stationary(const MatrixWigner& w, const Dispersion& disp,
                                    const KineticParams& params, double tol);

/// d=1 family diag(1/(1+e^{beta(f-mu+)}), 1/(1+e^{beta(f-mu-)})) for a real
/// periodic profile with f(1/2 - k) = -f(k) on the grid (checked).
MatrixWigner d1_degenerate_family(const KGrid& grid, double beta, double mu_plus,
                                  double mu_minus, const std::vector<double>& f_profile);

/// Shipped antisymmetric profile cos(2 pi k) + 0.4 sin(4 pi k) (d=1).
std::vector<double> default_antisymmetric_profile(const KGrid& grid);

double sup_distance(const MatrixWigner& a, const MatrixWigner& b);

} // namespace fermikin
