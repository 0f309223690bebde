#include "fermikin/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fermikin {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

Dispersion::Dispersion(const KGrid& grid, DispersionKind kind, double c, double eta)
    : grid_(&grid), kind_(kind), c_(c), eta_(eta) {
    values_.resize(static_cast<std::size_t>(grid.size()));
    for (std::int64_t i = 0; i < grid.size(); ++i)
        values_[static_cast<std::size_t>(i)] = eval(grid.wavenumber(i));
    auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    min_ = *lo;
    max_ = *hi;
}

double Dispersion::eval(const std::array<double, 3>& k) const {
    double s = c_;
    for (int nu = 0; nu < grid_->dim(); ++nu) {
        s -= std::cos(two_pi * k[nu]);
        if (kind_ == DispersionKind::nearest_plus_nnn) s -= eta_ * std::cos(2.0 * two_pi * k[nu]);
    }
    return s;
}

PairPotential::PairPotential(const KGrid& grid, std::vector<double> values)
    : grid_(&grid), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid.size()))
        throw std::invalid_argument("PairPotential: value count does not match grid");
    auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    if (*hi - *lo < 1e-12)
        throw std::invalid_argument("PairPotential: constant potential rejected");
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        double a = values_[static_cast<std::size_t>(i)];
        double b = values_[static_cast<std::size_t>(grid.neg(i))];
        if (std::abs(a - b) > 1e-12)
            throw std::invalid_argument("PairPotential: values not symmetric under k -> -k");
    }
}

PairPotential cosine_potential(const KGrid& grid) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        auto k = grid.wavenumber(i);
        double s = 0.0;
        for (int nu = 0; nu < grid.dim(); ++nu) s += std::cos(two_pi * k[nu]);
        v[static_cast<std::size_t>(i)] = s;
    }
    return PairPotential(grid, std::move(v));
}

} // namespace fermikin
