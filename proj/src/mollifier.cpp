#include "fermikin/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fermikin {

double mollified_delta(double x, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("mollified_delta: eps must be positive");
    double u = x / eps;
    return std::exp(-0.5 * u * u) / (eps * std::sqrt(2.0 * std::numbers::pi));
}

double lorentzian_delta(double x, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("lorentzian_delta: eps must be positive");
    return eps / (std::numbers::pi * (x * x + eps * eps));
}

double mollified_pv(double x, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("mollified_pv: eps must be positive");
    return x / (x * x + eps * eps);
}

double default_eps(const std::vector<double>& dispersion_values) {
    std::vector<double> v = dispersion_values;
    std::sort(v.begin(), v.end());
    std::vector<double> gaps;
    for (std::size_t i = 1; i < v.size(); ++i) {
        double g = v[i] - v[i - 1];
        if (g > 1e-12) gaps.push_back(g);   // duplicates carry no spacing information
    }
    if (gaps.empty()) return 0.05;
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    double h = gaps[gaps.size() / 2];
    return std::max(2.0 * h, 0.05);
}

} // namespace fermikin
