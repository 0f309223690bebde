#pragma once

#include <array>
#include <string>
#include <vector>

#include "fermikin/grid.hpp"

namespace fermikin {

enum class DispersionKind { nearest_neighbour, nearest_plus_nnn };

/// Single-particle dispersion relation, cached on a grid.
///
/// nearest_neighbour:  omega(k) = c - sum_nu cos(2 pi k_nu)
/// nearest_plus_nnn:   omega(k) = c - sum_nu cos(2 pi k_nu) - eta sum_nu cos(4 pi k_nu)
class Dispersion {
  public:
    Dispersion(const KGrid& grid, DispersionKind kind, double c, double eta = 0.0);

    DispersionKind kind() const { return kind_; }
    double c() const { return c_; }
    double eta() const { return eta_; }
    const KGrid& grid() const { return *grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }

    /// Evaluate at an arbitrary torus point (not necessarily on the grid).
    double eval(const std::array<double, 3>& k) const;

    double min_value() const { return min_; }
    double max_value() const { return max_; }

  private:
    const KGrid* grid_;
    DispersionKind kind_;
    double c_;
    double eta_;
    std::vector<double> values_;
    double min_;
    double max_;
};

inline Dispersion nearest_neighbour(const KGrid& g, double c) {
    return Dispersion(g, DispersionKind::nearest_neighbour, c);
}
inline Dispersion nearest_plus_nnn(const KGrid& g, double c, double eta) {
    return Dispersion(g, DispersionKind::nearest_plus_nnn, c, eta);
}

/// Real symmetric pair-potential Fourier transform cached on the grid.
/// Constant potentials are rejected (they make the collision operator vanish).
class PairPotential {
  public:
    PairPotential(const KGrid& grid, std::vector<double> values);

    const KGrid& grid() const { return *grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }

  private:
    const KGrid* grid_;
    std::vector<double> values_;
};

/// Default potential: vhat(k) = sum_nu cos(2 pi k_nu).
PairPotential cosine_potential(const KGrid& grid);

} // namespace fermikin
