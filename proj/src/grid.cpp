#include "fermikin/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fermikin {

KGrid::KGrid(int dim, int points_per_axis) : dim_(dim), n_(points_per_axis) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("KGrid: dimension must be 1, 2 or 3");
    if (n_ < 4 || n_ % 2 != 0) throw std::invalid_argument("KGrid: points per axis must be even and >= 4");
    size_ = 1;
    for (int nu = 0; nu < dim_; ++nu) size_ *= n_;
    cell_weight_ = 1.0 / static_cast<double>(size_);
    stride_ = {1, 0, 0};
    for (int nu = 1; nu < 3; ++nu) stride_[nu] = nu < dim_ ? stride_[nu - 1] * n_ : 0;
}

int KGrid::axis_of(std::int64_t i, int nu) const {
    return static_cast<int>((i / stride_[nu]) % n_);
}

std::int64_t KGrid::add(std::int64_t i, std::int64_t j) const {
    std::int64_t out = 0;
    for (int nu = 0; nu < dim_; ++nu)
        out += static_cast<std::int64_t>((axis_of(i, nu) + axis_of(j, nu)) % n_) * stride_[nu];
    return out;
}

std::int64_t KGrid::sub(std::int64_t i, std::int64_t j) const {
    std::int64_t out = 0;
    for (int nu = 0; nu < dim_; ++nu)
        out += static_cast<std::int64_t>((axis_of(i, nu) - axis_of(j, nu) + n_) % n_) * stride_[nu];
    return out;
}

std::int64_t KGrid::neg(std::int64_t i) const {
    std::int64_t out = 0;
    for (int nu = 0; nu < dim_; ++nu)
        out += static_cast<std::int64_t>((n_ - axis_of(i, nu)) % n_) * stride_[nu];
    return out;
}

std::array<double, 3> KGrid::wavenumber(std::int64_t i) const {
    std::array<double, 3> k{0.0, 0.0, 0.0};
    for (int nu = 0; nu < dim_; ++nu) {
        int a = axis_of(i, nu);
        int r = a <= n_ / 2 ? a : a - n_;
        k[nu] = static_cast<double>(r) / n_;
    }
    return k;
}

std::int64_t KGrid::index_from_numerators(const std::array<int, 3>& r) const {
    std::int64_t out = 0;
    for (int nu = 0; nu < dim_; ++nu) {
        if (r[nu] <= -n_ / 2 || r[nu] > n_ / 2) throw std::invalid_argument("KGrid: numerator out of range");
        int a = (r[nu] % n_ + n_) % n_;
        out += static_cast<std::int64_t>(a) * stride_[nu];
    }
    return out;
}

std::vector<std::array<double, 3>> KGrid::points() const {
    std::vector<std::array<double, 3>> pts(static_cast<std::size_t>(size_));
    for (std::int64_t i = 0; i < size_; ++i) pts[static_cast<std::size_t>(i)] = wavenumber(i);
    return pts;
}

double wrap_coordinate(double x) {
    double y = x - std::floor(x);     // [0, 1)
    if (y > 0.5) y -= 1.0;            // (-1/2, 1/2]
    if (y == -0.5) y = 0.5;
    return y;
}

} // namespace fermikin
