#include "casim/dynamics/flow.hpp"

#include <cmath>

#include "casim/common/errors.hpp"

namespace casim::dynamics {

namespace {

bool finite(const State& x) {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

/// One integration routine backs the plain flow and both perturbation
/// operators; null perturbation pointers leave the float operation sequence
/// of integrate_flow untouched.
Trajectory integrate_core(const DynamicalSystem& system, const State& x0,
                          double horizon, double dt, double t0,
                          const StatePerturbation* sp, const DynamicsPerturbation* dp) {
    if (dt <= 0.0) throw Error("integration step must be positive");
    if (horizon < 0.0) throw Error("integration horizon must be non-negative");
    if (static_cast<int>(x0.size()) != system.dimension) {
        throw Error("initial state dimension mismatch");
    }
    if (!finite(x0)) throw Error("initial state must be finite");

    const int n = system.dimension;
    State x = x0;
    State k1(n), k2(n), k3(n), k4(n), tmp(n);

    auto eval = [&](const State& y, double t, State& out) {
        double beta = system.environment.at(t);
        if (dp) beta = beta + dp->lambda(y, beta);
        system.field(y, beta, out);
        if (!finite(out)) throw DivergenceError(t, x);
    };

    Trajectory traj;
    traj.dt = dt;

    const double end = t0 + horizon;
    long long step = 0;
    double t = t0;

    auto record = [&](double time, const State& s) {
        traj.times.push_back(time);
        traj.states.push_back(s);
    };

    if (sp && sp->applies_at(0)) {
        State offset = sp->gamma(x);
        for (int i = 0; i < n; ++i) x[i] = x[i] + offset[i];
    }
    record(t, x);

    while (t < end - 1e-12 * (1.0 + std::abs(end))) {
        const double h = std::min(dt, end - t);
        eval(x, t, k1);
        for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
        eval(tmp, t + 0.5 * h, k2);
        for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
        eval(tmp, t + 0.5 * h, k3);
        for (int i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
        eval(tmp, t + h, k4);
        for (int i = 0; i < n; ++i) {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        ++step;
        if (!finite(x)) throw DivergenceError(t, traj.states.back());
        if (sp && sp->applies_at(step)) {
            State offset = sp->gamma(x);
            for (int i = 0; i < n; ++i) x[i] = x[i] + offset[i];
        }
        record(t, x);
    }
    return traj;
}

}  // namespace

Trajectory integrate_flow(const DynamicalSystem& system, const State& x0,
                          double horizon, double dt, double t0) {
    return integrate_core(system, x0, horizon, dt, t0, nullptr, nullptr);
}

Trajectory apply_state_perturbation(const DynamicalSystem& system, const State& x0,
                                    const StatePerturbation& pert, double horizon,
                                    double dt, double t0) {
    return integrate_core(system, x0, horizon, dt, t0, &pert, nullptr);
}

Trajectory apply_dynamics_perturbation(const DynamicalSystem& system, const State& x0,
                                       const DynamicsPerturbation& pert, double horizon,
                                       double dt, double t0) {
    return integrate_core(system, x0, horizon, dt, t0, nullptr, &pert);
}

namespace {

/// Finite-difference derivative samples: central in the interior, one-sided
/// at the ends.
std::vector<State> derivative_samples(const Trajectory& traj) {
    const std::size_t m = traj.states.size();
    const std::size_t n = traj.states.empty() ? 0 : traj.states[0].size();
    std::vector<State> out(m, State(n, 0.0));
    if (m < 2) return out;
    const double dt = traj.dt;
    for (std::size_t i = 0; i < n; ++i) {
        out[0][i] = (traj.states[1][i] - traj.states[0][i]) / dt;
        out[m - 1][i] = (traj.states[m - 1][i] - traj.states[m - 2][i]) / dt;
    }
    for (std::size_t k = 1; k + 1 < m; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            out[k][i] = (traj.states[k + 1][i] - traj.states[k - 1][i]) / (2.0 * dt);
        }
    }
    return out;
}

}  // namespace

double trajectory_deviation(const Trajectory& a, const Trajectory& b) {
    if (a.dt != b.dt || a.states.size() != b.states.size()) {
        throw ResamplingError("trajectories need resampling: dt or length differ");
    }
    auto da = derivative_samples(a);
    auto db = derivative_samples(b);
    double worst = 0.0;
    for (std::size_t k = 0; k < da.size(); ++k) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < da[k].size(); ++i) {
            const double d = da[k][i] - db[k][i];
            d2 += d * d;
        }
        worst = std::max(worst, std::sqrt(d2));
    }
    return worst;
}

}  // namespace casim::dynamics
