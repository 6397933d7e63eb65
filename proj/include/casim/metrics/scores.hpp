#pragma once

#include <span>
#include <string>
#include <vector>

namespace casim::metrics {

/// One attack run, reduced to its cost to the adversary and whether it met
/// the objective. Costs are floored at 1 so the vulnerability score stays
/// in [0, 1]; the unit is recorded so mixed-unit sets can be refused.
struct AttackOutcome {
    double cost = 1.0;
    double impact = 0.0;
    bool success = false;
    std::string cost_unit;

    AttackOutcome(double cost_in, double impact_in, bool success_in,
                  std::string unit = "actions")
        : cost(cost_in < 1.0 ? 1.0 : cost_in),
          impact(impact_in),
          success(success_in),
          cost_unit(std::move(unit)) {}
};

/// 1 / (minimum successful cost). `defined` is false when no outcome
/// succeeded; that is reported distinctly from 0 so a failed best-effort
/// search is never mistaken for perfect security.
struct VulnerabilityScore {
    bool defined = false;
    double value = 0.0;
    std::string cost_unit;
};

/// Minimum successful cost; `finite` is false when no outcome succeeded.
struct ResilienceScore {
    bool finite = false;
    double value = 0.0;
    std::string cost_unit;
};

VulnerabilityScore vulnerability(std::span<const AttackOutcome> outcomes);
ResilienceScore resilience(std::span<const AttackOutcome> outcomes);

}  // namespace casim::metrics
