#pragma once

#include "casim/dynamics/system.hpp"

namespace casim::dynamics {

/// Integrate dx/dt = f(x, beta(t)) from x0 over [t0, t0 + horizon] with
/// classic fixed-step 4th-order Runge-Kutta. The last state realizes the
/// Time-T flow of x0 up to integration error.
///
/// Throws DivergenceError when a non-finite derivative or state appears,
/// carrying the last valid state and time.
Trajectory integrate_flow(const DynamicalSystem& system, const State& x0,
                          double horizon, double dt, double t0 = 0.0);

/// As integrate_flow, but on each scheduled step the state is replaced by
/// x + gamma(x) before the step is taken. Recorded states are the
/// post-perturbation ones.
Trajectory apply_state_perturbation(const DynamicalSystem& system, const State& x0,
                                    const StatePerturbation& pert, double horizon,
                                    double dt, double t0 = 0.0);

/// As integrate_flow with beta(t) replaced by beta(t) + lambda(x, beta(t))
/// pointwise in every field evaluation.
Trajectory apply_dynamics_perturbation(const DynamicalSystem& system, const State& x0,
                                       const DynamicsPerturbation& pert, double horizon,
                                       double dt, double t0 = 0.0);

/// Max over timesteps of the Euclidean distance between the finite-difference
/// derivatives of the two trajectories (central differences, one-sided at the
/// ends). Requires equal dt and equal length; throws ResamplingError otherwise.
double trajectory_deviation(const Trajectory& a, const Trajectory& b);

/// Attack-success predicate: deviation below the caller-supplied threshold.
inline bool attack_succeeds(const Trajectory& a, const Trajectory& b, double epsilon) {
    return trajectory_deviation(a, b) < epsilon;
}

}  // namespace casim::dynamics
