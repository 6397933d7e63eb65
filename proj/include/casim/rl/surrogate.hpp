#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casim/common/rng.hpp"

namespace casim::rl {

/// One real interaction with the target.
struct Observation {
    std::string state;
    int action = 0;
    double reward = 0.0;
    std::string next_state;
    bool terminal = false;
};

/// A sampled step inside the adversary's model of the target.
struct SurrogateSample {
    std::string next_state;
    double reward = 0.0;
    bool terminal = false;
};

/// The adversary's estimate of target dynamics. Planning runs entirely
/// against this interface and never touches the real target.
class Surrogate {
public:
    virtual ~Surrogate() = default;
    /// Sample an outcome of (state, action); nullopt when the pair is
    /// outside the model's knowledge.
    virtual std::optional<SurrogateSample> sample(const std::string& state, int action,
                                                  Rng& rng) const = 0;
    virtual void observe(const Observation&) {}
};

/// Blackbox estimate: empirical transition counts with per-outcome mean
/// rewards. Unobserved pairs are unknown.
class EmpiricalSurrogate : public Surrogate {
public:
    void observe(const Observation& obs) override;

    std::optional<SurrogateSample> sample(const std::string& state, int action,
                                          Rng& rng) const override;

    /// Empirical outcome distribution of (state, action); empty if unseen.
    std::map<std::string, double> distribution(const std::string& state, int action) const;

    long long observation_count() const { return observations_; }

private:
    struct Outcome {
        long long count = 0;
        double reward_sum = 0.0;
        long long terminal_count = 0;
    };
    std::map<std::pair<std::string, int>, std::map<std::string, Outcome>> transitions_;
    long long observations_ = 0;
};

/// Whitebox estimate: a complete dynamical model of the target, usable when
/// the state key fully determines the configuration.
class SimulatorSurrogate : public Surrogate {
public:
    using StepFn = std::function<SurrogateSample(const std::string& state, int action)>;

    explicit SimulatorSurrogate(StepFn step) : step_(std::move(step)) {}

    std::optional<SurrogateSample> sample(const std::string& state, int action,
                                          Rng& rng) const override {
        (void)rng;
        return step_(state, action);
    }

private:
    StepFn step_;
};

/// Fold one observation into the model (Algorithm line: EstimateDynamics).
inline void estimate_dynamics(Surrogate& model, const Observation& obs) {
    model.observe(obs);
}

}  // namespace casim::rl
