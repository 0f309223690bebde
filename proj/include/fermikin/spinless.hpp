#pragma once

#include <stdexcept>

#include "fermikin/dispersion.hpp"
#include "fermikin/wigner.hpp"

namespace fermikin {

/// Target (density, energy) outside or on the boundary of the admissible region.
struct InfeasibleTarget : std::domain_error {
    using std::domain_error::domain_error;
};

/// Equilibrium fit did not converge.
struct FitFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fermionic Boltzmann-Nordheim collision operator on the grid.
/// Momentum conservation is resolved exactly by index arithmetic
/// (k3 = k0 + k1 - k2), the energy delta is mollified at params.eps.
std::vector<double> collision_bn(const ScalarWigner& w, const Dispersion& disp,
                                 const PairPotential& vhat, const KineticParams& params);

/// Collision plus the exact-energy-conservation counterterm (if enabled).
std::vector<double> rhs_spinless(const ScalarWigner& w, const Dispersion& disp,
                                 const PairPotential& vhat, const KineticParams& params);

ConservedPair conserved(const ScalarWigner& w, const Dispersion& disp);

/// -sum_k weight [W ln W + (1-W) ln(1-W)], with 0 ln 0 = 0.
double entropy(const ScalarWigner& w);

/// Entropy production sigma[W] >= 0; equals dS/dt along the collision flow.
double entropy_production(const ScalarWigner& w, const Dispersion& disp,
                          const PairPotential& vhat, const KineticParams& params);

/// W(k) = 1/(exp(beta (omega - mu)) + 1), overflow-safe.
ScalarWigner fermi_dirac(const Dispersion& disp, double beta, double mu);

/// Same family in the (beta, nu = beta*mu) parametrization, regular through beta = 0.
ScalarWigner fermi_dirac_nu(const Dispersion& disp, double beta, double nu);

struct FdFit {
    double beta = 0.0;
    double mu = 0.0;
    double nu = 0.0;   ///< beta*mu; use fermi_dirac_nu for loss-free evaluation
    double residual_density = 0.0;
    double residual_energy = 0.0;
    int iterations = 0;
};

/// Admissible energy range for a given density (bathtub bounds: fill the
/// lowest/highest dispersion cells).
std::pair<double, double> energy_bounds(const Dispersion& disp, double density);

/// Two-parameter Newton fit of (beta, mu) to conserved (density, energy),
/// with a beta-bisection fallback. Throws InfeasibleTarget / FitFailure.
FdFit fit_fermi_dirac(const ConservedPair& target, const Dispersion& disp);

double sup_distance(const ScalarWigner& a, const ScalarWigner& b);

} // namespace fermikin
