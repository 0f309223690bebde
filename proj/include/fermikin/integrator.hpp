#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermikin/wigner.hpp"

namespace fermikin {

/// Step rejected 20 times in a row; usually an eps/grid misconfiguration.
struct StepFailure : std::runtime_error {
    explicit StepFailure(double t)
        : std::runtime_error("integrator: step rejected after 20 halvings at t = " + std::to_string(t)),
          time_reached(t) {}
    double time_reached;
};

namespace detail {

inline void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}
inline void axpy(std::vector<Mat2>& y, double a, const std::vector<Mat2>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline ScalarWigner with_values(const ScalarWigner& w, std::vector<double> v) {
    ScalarWigner out = w;
    out.values = std::move(v);
    return out;
}
inline MatrixWigner with_values(const MatrixWigner& w, std::vector<Mat2> v) {
    MatrixWigner out = w;
    out.values = std::move(v);
    return out;
}

} // namespace detail

/// One classical RK4 update of size dt. An inadmissible result, or a stage
/// state rejected by the right-hand side, rejects the step; the interval is
/// then retried as two half steps, recursing at most `depth` times.
template <class State, class Rhs>
State rk4_step(const State& w, const Rhs& rhs, double dt, double t, int depth = 20) {
    bool accepted = false;
    State out = w;
    try {
        auto k1 = rhs(w);
        auto y = w.values;
        detail::axpy(y, 0.5 * dt, k1);
        auto k2 = rhs(detail::with_values(w, y));
        y = w.values;
        detail::axpy(y, 0.5 * dt, k2);
        auto k3 = rhs(detail::with_values(w, y));
        y = w.values;
        detail::axpy(y, dt, k3);
        auto k4 = rhs(detail::with_values(w, y));

        y = w.values;
        detail::axpy(y, dt / 6.0, k1);
        detail::axpy(y, dt / 3.0, k2);
        detail::axpy(y, dt / 3.0, k3);
        detail::axpy(y, dt / 6.0, k4);
        out = detail::with_values(w, std::move(y));
        accepted = admissible(out, 1e-9);
    } catch (const std::domain_error&) {
        accepted = false;   // a stage left the admissible set
    }
    if (accepted) return out;

    if (depth <= 0) throw StepFailure(t);
    State half = rk4_step(w, rhs, 0.5 * dt, t, depth - 1);
    return rk4_step(half, rhs, 0.5 * dt, t + 0.5 * dt, depth - 1);
}

struct DiagnosticsRow {
    double time = 0.0;
    double entropy = 0.0;
    double entropy_production = 0.0;
    double density = 0.0;
    double energy = 0.0;
    double distance_to_equilibrium = 0.0;
    std::array<double, 4> sigma{0.0, 0.0, 0.0, 0.0};   ///< matrix runs: re00, re01, im01, re11
};

enum class RunStatus { finished, converged };

template <class State>
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<DiagnosticsRow> rows;
    RunStatus status = RunStatus::finished;
    double t_reached = 0.0;
    std::int64_t steps = 0;
};

struct RunParams {
    double dt = 0.1;
    double t_end = 10.0;
    int record_every = 1;            ///< in macro steps
    double stationary_tol = 1e-8;    ///< early termination on ||rhs||_inf, checked at record times
};

/// Fixed-macro-step driver with per-record diagnostics and early termination
/// once the right-hand side drops below stationary_tol.
template <class State, class Rhs, class Diag>
TrajectoryRecord<State> run(const State& w0, const Rhs& rhs, const Diag& diag, const RunParams& p) {
    if (!admissible(w0, 1e-9)) throw std::domain_error("run: inadmissible initial state");
    TrajectoryRecord<State> rec;
    State w = w0;
    double t = 0.0;
    std::int64_t step_index = 0;

    auto record = [&](const State& s, double time) {
        rec.times.push_back(time);
        rec.states.push_back(s);
        DiagnosticsRow row = diag(s);
        row.time = time;
        rec.rows.push_back(row);
        return max_abs(rhs(s));
    };
    if (record(w, 0.0) <= p.stationary_tol) rec.status = RunStatus::converged;

    const std::int64_t n_steps = static_cast<std::int64_t>(std::ceil(p.t_end / p.dt - 1e-12));
    while (step_index < n_steps && rec.status != RunStatus::converged) {
        const double dt = std::min(p.dt, p.t_end - t);
        w = rk4_step(w, rhs, dt, t);
        t += dt;
        ++step_index;
        if (step_index % p.record_every == 0 || step_index == n_steps) {
            if (record(w, t) <= p.stationary_tol) rec.status = RunStatus::converged;
        }
    }
    rec.t_reached = t;
    rec.steps = step_index;
    return rec;
}

} // namespace fermikin
