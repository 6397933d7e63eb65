#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "casim/common/errors.hpp"
#include "casim/dynamics/basins.hpp"
#include "casim/dynamics/flow.hpp"

using namespace casim;
using namespace casim::dynamics;

namespace {

DynamicalSystem linear_decay(int n = 1) {
    return DynamicalSystem(n, [](const State& x, double, State& dx) {
        for (std::size_t i = 0; i < x.size(); ++i) dx[i] = -x[i];
    });
}

DynamicalSystem double_well(int n = 1) {
    return DynamicalSystem(n, [](const State& x, double, State& dx) {
        for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] - x[i] * x[i] * x[i];
    });
}

DynamicalSystem linear_with_env() {
    return DynamicalSystem(1, [](const State& x, double beta, State& dx) {
        dx[0] = -x[0] + beta;
    });
}

bool bitwise_equal(const Trajectory& a, const Trajectory& b) {
    if (a.states.size() != b.states.size()) return false;
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        if (std::memcmp(a.states[k].data(), b.states[k].data(),
                        a.states[k].size() * sizeof(double)) != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("integrate_flow: exponential decay, zero field, double well") {
    auto traj = integrate_flow(linear_decay(), {1.0}, 1.0, 1e-3);
    CHECK(std::abs(traj.last()[0] - 0.36788) < 1e-5);
    CHECK(traj.states.size() == 1001);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0));

    DynamicalSystem still(2, [](const State&, double, State& dx) {
        dx[0] = 0.0;
        dx[1] = 0.0;
    });
    auto frozen = integrate_flow(still, {3.5, -2.25}, 5.0, 0.01);
    CHECK(frozen.last()[0] == 3.5);
    CHECK(frozen.last()[1] == -2.25);

    auto well = integrate_flow(double_well(), {0.1}, 20.0, 1e-3);
    CHECK(std::abs(well.last()[0] - 1.0) < 1e-4);
}

TEST_CASE("integrate_flow: preconditions and divergence error") {
    CHECK_THROWS_AS(integrate_flow(linear_decay(), {1.0}, 1.0, 0.0), Error);
    CHECK_THROWS_AS(integrate_flow(linear_decay(), {1.0, 2.0}, 1.0, 0.1), Error);

    DynamicalSystem bad(1, [](const State& x, double, State& dx) {
        dx[0] = x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    });
    try {
        integrate_flow(bad, {0.0}, 10.0, 0.01);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.time() >= 0.0);
        CHECK(e.last_state().size() == 1);
        CHECK(std::isfinite(e.last_state()[0]));
    }
}

TEST_CASE("flow semigroup property") {
    auto sys = double_well();
    auto full = integrate_flow(sys, {0.3}, 3.0, 1e-3);
    auto first = integrate_flow(sys, {0.3}, 1.0, 1e-3);
    auto second = integrate_flow(sys, first.last(), 2.0, 1e-3, /*t0=*/1.0);
    CHECK(second.last()[0] == doctest::Approx(full.last()[0]).epsilon(1e-12));
}

TEST_CASE("RK4 order: halving dt shrinks the error ~16x") {
    const double exact = std::exp(-1.0);
    auto err = [&](double dt) {
        return std::abs(integrate_flow(linear_decay(), {1.0}, 1.0, dt).last()[0] - exact);
    };
    const double ratio = err(0.1) / err(0.05);
    CHECK(ratio > 16.0 * 0.8);
    CHECK(ratio < 16.0 * 1.2);
}

TEST_CASE("state perturbation: null, basin kick, persistent drift") {
    auto sys = double_well();
    StatePerturbation null_pert;
    null_pert.gamma = [](const State& x) { return State(x.size(), 0.0); };
    auto plain = integrate_flow(sys, {0.5}, 5.0, 1e-3);
    auto nulled = apply_state_perturbation(sys, {0.5}, null_pert, 5.0, 1e-3);
    CHECK(bitwise_equal(plain, nulled));

    StatePerturbation kick;
    kick.gamma = [](const State& x) { return State(x.size(), -1.2); };
    kick.steps = std::set<long long>{0};
    auto settled = integrate_flow(sys, {0.5}, 20.0, 1e-3);
    auto kicked = apply_state_perturbation(sys, {0.5}, kick, 20.0, 1e-3);
    CHECK(settled.last()[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(kicked.last()[0] == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(kicked.states.front()[0] == doctest::Approx(-0.7));  // post-perturbation state

    const double dt = 1e-3;
    const double c = 0.8;
    StatePerturbation drift;
    drift.gamma = [c, dt](const State& x) { return State(x.size(), c * dt); };
    auto drifted = apply_state_perturbation(linear_decay(), {0.0}, drift, 10.0, dt);
    CHECK(std::abs(drifted.last()[0] - c) < 1e-3);
}

TEST_CASE("dynamics perturbation: null, constant offset, basin escape") {
    auto sys = linear_with_env();
    DynamicsPerturbation null_pert{[](const State&, double) { return 0.0; }};
    auto plain = integrate_flow(sys, {0.7}, 4.0, 1e-3);
    auto nulled = apply_dynamics_perturbation(sys, {0.7}, null_pert, 4.0, 1e-3);
    CHECK(bitwise_equal(plain, nulled));

    DynamicsPerturbation unit{[](const State&, double) { return 1.0; }};
    auto steady = apply_dynamics_perturbation(sys, {0.0}, unit, 20.0, 1e-3);
    CHECK(steady.last()[0] == doctest::Approx(1.0).epsilon(1e-6));

    DynamicalSystem well_env(1, [](const State& x, double beta, State& dx) {
        dx[0] = x[0] - x[0] * x[0] * x[0] + beta;
    });
    DynamicsPerturbation push{[](const State&, double) { return -2.0; }};
    auto escaped = apply_dynamics_perturbation(well_env, {1.0}, push, 20.0, 1e-3);
    CHECK(escaped.last()[0] < -1.0);
}

TEST_CASE("trajectory deviation: identical, derivative gap, linear ramp") {
    auto a = integrate_flow(linear_decay(), {0.4}, 2.0, 1e-3);
    CHECK(trajectory_deviation(a, a) == doctest::Approx(0.0));

    // f = -x vs f = -x + 1 from x0 = 0: derivative gap is exactly 1
    auto zero = integrate_flow(linear_decay(), {0.0}, 1e-5, 1e-6);
    DynamicsPerturbation unit{[](const State&, double) { return 1.0; }};
    auto pushed =
        apply_dynamics_perturbation(linear_with_env(), {0.0}, unit, 1e-5, 1e-6);
    CHECK(trajectory_deviation(zero, pushed) == doctest::Approx(1.0).epsilon(1e-6));

    Trajectory constant;
    constant.dt = 0.5;
    Trajectory ramp;
    ramp.dt = 0.5;
    for (int k = 0; k <= 6; ++k) {
        constant.times.push_back(0.5 * k);
        constant.states.push_back({2.0});
        ramp.times.push_back(0.5 * k);
        ramp.states.push_back({1.0 * k});  // slope 2 per time unit
    }
    CHECK(trajectory_deviation(constant, ramp) == doctest::Approx(2.0));

    Trajectory other = ramp;
    other.dt = 0.25;
    CHECK_THROWS_AS(trajectory_deviation(constant, other), ResamplingError);

    CHECK(trajectory_deviation(ramp, constant) ==
          doctest::Approx(trajectory_deviation(constant, ramp)));
    CHECK(attack_succeeds(constant, ramp, 2.5));
    CHECK_FALSE(attack_succeeds(constant, ramp, 2.0));
}

TEST_CASE("basins: single attractor, double well, 2-D quadrants") {
    auto single = estimate_basins(linear_decay(), {{-2.0, 2.0}}, {41}, 20.0, 1e-4);
    REQUIRE(single.attractors.size() == 1);
    CHECK(std::abs(single.attractors[0][0]) < 1e-3);
    CHECK(single.boundary_cells.empty());
    for (std::size_t c = 0; c < single.cell_count(); ++c) {
        CHECK(single.labels[c] == 0);
    }

    auto well = estimate_basins(double_well(), {{-2.0, 2.0}}, {81}, 50.0, 1e-4);
    REQUIRE(well.attractors.size() == 2);
    CHECK(std::abs(std::abs(well.attractors[0][0]) - 1.0) < 1e-3);
    CHECK(std::abs(std::abs(well.attractors[1][0]) - 1.0) < 1e-3);
    const int negative_label = well.attractors[0][0] < 0 ? 0 : 1;
    for (std::size_t c = 0; c < well.cell_count(); ++c) {
        const double center = well.cell_center(c)[0];
        if (center < -1e-9) CHECK(well.labels[c] == negative_label);
        if (center > 1e-9) CHECK(well.labels[c] == 1 - negative_label);
    }
    // boundary straddles 0 within one grid cell
    REQUIRE_FALSE(well.boundary_cells.empty());
    const double width = 4.0 / 81.0;
    for (std::size_t c : well.boundary_cells) {
        CHECK(std::abs(well.cell_center(c)[0]) <= width);
    }

    auto quad = estimate_basins(double_well(2), {{-2.0, 2.0}, {-2.0, 2.0}}, {21, 21},
                                50.0, 1e-4);
    CHECK(quad.attractors.size() == 4);
}

TEST_CASE("basins: labels partition; divergent cells unresolved") {
    auto well = estimate_basins(double_well(), {{-2.0, 2.0}}, {81}, 50.0, 1e-4);
    std::size_t basin_cells = 0, boundary = 0, unresolved = 0;
    for (std::size_t c = 0; c < well.cell_count(); ++c) {
        const auto label = well.labels[c];
        if (label >= 0) ++basin_cells;
        else if (label == BasinMap::kBoundary) ++boundary;
        else ++unresolved;
    }
    CHECK(basin_cells + boundary + unresolved == well.cell_count());
    CHECK(boundary == well.boundary_cells.size());

    DynamicalSystem exploding(1, [](const State& x, double, State& dx) {
        dx[0] = x[0] * x[0] * x[0] + 1.0;
    });
    auto blown = estimate_basins(exploding, {{-1.0, 1.0}}, {11}, 50.0, 1e-6);
    CHECK(blown.attractors.empty());
    for (std::size_t c = 0; c < blown.cell_count(); ++c) {
        CHECK(blown.labels[c] == BasinMap::kUnresolved);
    }
}

TEST_CASE("basins: preconditions") {
    CHECK_THROWS_AS(
        estimate_basins(linear_decay(4), std::vector<std::array<double, 2>>(4, {{-1.0, 1.0}}),
                        {3, 3, 3, 3}, 1.0, 1e-4),
        Error);
    CHECK_THROWS_AS(estimate_basins(linear_decay(), {{-1.0, 1.0}}, {1}, 1.0, 1e-4), Error);
}

TEST_CASE("environment schedule: piecewise constant and beta coupling") {
    EnvironmentSchedule env({{0.0, 1.0}, {2.0, -1.0}});
    CHECK(env.at(0.0) == 1.0);
    CHECK(env.at(1.999) == 1.0);
    CHECK(env.at(2.0) == -1.0);
    CHECK(env.at(100.0) == -1.0);
    CHECK(EnvironmentSchedule().at(5.0) == 0.0);

    DynamicalSystem sys(
        1, [](const State& x, double beta, State& dx) { dx[0] = -x[0] + beta; },
        EnvironmentSchedule::constant(2.0));
    CHECK(integrate_flow(sys, {0.0}, 20.0, 1e-3).last()[0] ==
          doctest::Approx(2.0).epsilon(1e-6));
}
