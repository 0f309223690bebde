// Timing comparison of the OpenMP kernels against the serial reference
// implementations, with a max-difference column as a correctness spot check.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fermikin/dispersion.hpp"
#include "fermikin/hubbard.hpp"
#include "fermikin/scenario.hpp"
#include "fermikin/spinless.hpp"
#include "../src/reference/reference_kernels.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_ms(const F& f, int reps) {
    f();   // warm up
    const auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_diff(const std::vector<fermikin::Mat2>& a, const std::vector<fermikin::Mat2>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).cwiseAbs().maxCoeff());
    return m;
}

// The reference resolves the momentum constraint by exhaustive search over a
// full extra momentum loop, so part of the ratio is algorithmic, not threading.
void row(const char* name, int d, int n, double serial_ms, double parallel_ms, double diff) {
    std::printf(
        "%-24s d=%d n=%-3d  reference(serial) %9.2f ms   kernel(openmp) %9.2f ms   ratio %6.2fx   "
        "maxdiff %.2e\n",
        name, d, n, serial_ms, parallel_ms, serial_ms / parallel_ms, diff);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    using namespace fermikin;

    {
        const KGrid grid(1, 64);
        const Dispersion disp = nearest_neighbour(grid, 0.0);
        const PairPotential vhat = cosine_potential(grid);
        KineticParams p;
        p.eps = 0.1;
        const ScalarWigner w = random_scalar_wigner(grid, 11, 0.4);
        std::vector<double> cp, cs;
        const double tp = time_ms([&] { cp = collision_bn(w, disp, vhat, p); }, 3);
        const double ts = time_ms([&] { cs = reference::collision_bn(w, disp, vhat, p); }, 1);
        row("collision_bn", 1, 64, ts, tp, max_diff(cp, cs));
    }
    {
        const KGrid grid(2, 12);
        const Dispersion disp = nearest_neighbour(grid, 0.0);
        const PairPotential vhat = cosine_potential(grid);
        KineticParams p;
        p.eps = 0.15;
        const ScalarWigner w = random_scalar_wigner(grid, 12, 0.4);
        std::vector<double> cp, cs;
        const double tp = time_ms([&] { cp = collision_bn(w, disp, vhat, p); }, 3);
        const double ts = time_ms([&] { cs = reference::collision_bn(w, disp, vhat, p); }, 1);
        row("collision_bn", 2, 12, ts, tp, max_diff(cp, cs));
    }
    {
        const KGrid grid(1, 24);
        const Dispersion disp = nearest_neighbour(grid, 0.0);
        KineticParams p;
        p.eps = 0.1;
        const MatrixWigner w = random_matrix_wigner(grid, 13, 0.5);
        std::vector<Mat2> cp, cs;
        double tp = time_ms([&] { cp = collision_hubbard(w, disp, p); }, 3);
        double ts = time_ms([&] { cs = reference::collision_hubbard(w, disp, p); }, 1);
        row("collision_hubbard", 1, 24, ts, tp, max_diff(cp, cs));
        tp = time_ms([&] { cp = effective_hamiltonian(w, disp, p); }, 3);
        ts = time_ms([&] { cs = reference::effective_hamiltonian(w, disp, p); }, 1);
        row("effective_hamiltonian", 1, 24, ts, tp, max_diff(cp, cs));
        double sp = 0, ss = 0;
        tp = time_ms([&] { sp = matrix_entropy_production(w, disp, p); }, 3);
        ts = time_ms([&] { ss = reference::matrix_entropy_production(w, disp, p); }, 1);
        row("matrix_entropy_prod", 1, 24, ts, tp, std::abs(sp - ss));
    }
    {
        const KGrid grid(2, 8);
        const Dispersion disp = nearest_neighbour(grid, 0.0);
        KineticParams p;
        p.eps = 0.15;
        const MatrixWigner w = random_matrix_wigner(grid, 14, 0.5);
        std::vector<Mat2> cp, cs;
        const double tp = time_ms([&] { cp = collision_hubbard(w, disp, p); }, 3);
        const double ts = time_ms([&] { cs = reference::collision_hubbard(w, disp, p); }, 1);
        row("collision_hubbard", 2, 8, ts, tp, max_diff(cp, cs));
    }
    return 0;
}
