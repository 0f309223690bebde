#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace fermikin {

/// Discretized Brillouin torus: n points per axis on (-1/2, 1/2]^d, even n.
///
/// Points are stored as flat indices in FFT order per axis (axis index
/// a in [0, n) maps to the integer numerator r = a for a <= n/2 and
/// r = a - n otherwise, wavenumber k = r/n). All torus arithmetic is done
/// on integer indices, so wrap-around is exact.
class KGrid {
  public:
    KGrid(int dim, int points_per_axis);

    int dim() const { return dim_; }
    int points_per_axis() const { return n_; }
    std::int64_t size() const { return size_; }
    double cell_weight() const { return cell_weight_; }

    /// Torus sum/difference/negation of flat indices (exact).
    std::int64_t add(std::int64_t i, std::int64_t j) const;
    std::int64_t sub(std::int64_t i, std::int64_t j) const;
    std::int64_t neg(std::int64_t i) const;

    /// Wavenumber components of a flat index; unused axes are 0.
    std::array<double, 3> wavenumber(std::int64_t i) const;

    /// Flat index from per-axis numerators r_nu in (-n/2, n/2].
    std::int64_t index_from_numerators(const std::array<int, 3>& r) const;

    /// All wavenumbers in flat-index order.
    std::vector<std::array<double, 3>> points() const;

  private:
    int axis_of(std::int64_t i, int nu) const;

    int dim_;
    int n_;
    std::int64_t size_;
    double cell_weight_;
    std::array<std::int64_t, 3> stride_;
};

/// Wrap a real torus coordinate into (-1/2, 1/2].
double wrap_coordinate(double x);

inline KGrid build_grid(int dim, int points_per_axis) { return KGrid(dim, points_per_axis); }

} // namespace fermikin
