#pragma once

#include <vector>

namespace fermikin {

/// Gaussian approximation of the energy delta; integrates to 1 over the line.
double mollified_delta(double x, double eps);

/// Lorentzian approximation of the energy delta, the real part of
/// (1/pi) * i/(x + i eps). Pairs exactly with mollified_pv at the same eps.
double lorentzian_delta(double x, double eps);

/// Regularized Cauchy principal value kernel x/(x^2 + eps^2); odd in x.
double mollified_pv(double x, double eps);

enum class DeltaKernel { lorentzian, gaussian };

inline double energy_delta(double x, double eps, DeltaKernel kernel) {
    return kernel == DeltaKernel::lorentzian ? lorentzian_delta(x, eps) : mollified_delta(x, eps);
}

/// Default regularization width for a set of dispersion values:
/// max(2 * median nearest-neighbour spacing of the sorted distinct values, 0.05).
double default_eps(const std::vector<double>& dispersion_values);

} // namespace fermikin
