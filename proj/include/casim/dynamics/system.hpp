#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace casim::dynamics {

using State = std::vector<double>;

/// Vector field: writes dx/dt for state x under environment signal beta.
using VectorField = std::function<void(const State& x, double beta, State& dxdt)>;

/// Piecewise-constant environment signal. Each entry (t, value) holds from
/// time t until the next entry; before the first entry the value is 0.
class EnvironmentSchedule {
public:
    EnvironmentSchedule() = default;
    explicit EnvironmentSchedule(std::vector<std::pair<double, double>> steps)
        : steps_(std::move(steps)) {}

    double at(double t) const {
        double v = 0.0;
        for (const auto& [time, value] : steps_) {
            if (t >= time) v = value;
            else break;
        }
        return v;
    }

    static EnvironmentSchedule constant(double value) {
        return EnvironmentSchedule({{0.0, value}});
    }

private:
    std::vector<std::pair<double, double>> steps_;
};

/// Continuous-state model dx/dt = f(x, beta).
struct DynamicalSystem {
    int dimension = 1;
    VectorField field;
    EnvironmentSchedule environment;

    DynamicalSystem(int n, VectorField f,
                    EnvironmentSchedule env = EnvironmentSchedule())
        : dimension(n), field(std::move(f)), environment(std::move(env)) {}
};

/// Fixed-step solution samples of a system.
struct Trajectory {
    double dt = 0.0;
    std::vector<double> times;   // strictly increasing
    std::vector<State> states;   // one per timestamp, each of system dimension

    const State& last() const { return states.back(); }
    std::size_t size() const { return states.size(); }
};

/// Additive state offset gamma(x), applied on the scheduled steps (all
/// steps when `steps` is empty).
struct StatePerturbation {
    std::function<State(const State&)> gamma;
    std::optional<std::set<long long>> steps;  // nullopt = every step

    bool applies_at(long long step) const {
        return !steps.has_value() || steps->count(step) > 0;
    }
};

/// Additive environment offset lambda(x, beta).
struct DynamicsPerturbation {
    std::function<double(const State&, double)> lambda;
};

}  // namespace casim::dynamics
