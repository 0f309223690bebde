#pragma once

// Serial reference implementations, coded independently of the production
// kernels: momentum conservation resolved by an indicator over a full
// (k1,k2,k3) loop, the four-term collision bracket, component-shuffle J,
// and Eigen's eigensolver instead of the closed 2x2 form. Used by the test
// suites for cross-implementation equivalence and by the benchmark as the
// serial baseline.

#include "fermikin/dispersion.hpp"
#include "fermikin/hubbard.hpp"
#include "fermikin/spinless.hpp"
#include "fermikin/wigner.hpp"

namespace fermikin::reference {

std::vector<double> collision_bn(const ScalarWigner& w, const Dispersion& disp,
                                 const PairPotential& vhat, const KineticParams& params);

double entropy_production(const ScalarWigner& w, const Dispersion& disp,
                          const PairPotential& vhat, const KineticParams& params);

std::vector<Mat2> collision_hubbard(const MatrixWigner& w, const Dispersion& disp,
                                    const KineticParams& params);

std::vector<Mat2> effective_hamiltonian(const MatrixWigner& w, const Dispersion& disp,
                                        const KineticParams& params);

double matrix_entropy_production(const MatrixWigner& w, const Dispersion& disp,
                                 const KineticParams& params);

SpinMatrix spin_correlation(const MatrixWigner& w);

} // namespace fermikin::reference
