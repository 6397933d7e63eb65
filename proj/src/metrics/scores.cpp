#include "casim/metrics/scores.hpp"

#include <limits>

#include "casim/common/errors.hpp"

namespace casim::metrics {

namespace {

/// Minimum successful cost, or nullopt when nothing succeeded. Rejects
/// mixed cost units: comparing `line trips` against `nodes removed` would
/// make the minimum meaningless.
std::pair<bool, AttackOutcome> min_successful(std::span<const AttackOutcome> outcomes) {
    const AttackOutcome* best = nullptr;
    const std::string* unit = nullptr;
    for (const AttackOutcome& o : outcomes) {
        if (!o.success) continue;
        if (unit && o.cost_unit != *unit) {
            throw Error("mixed cost units: '" + *unit + "' vs '" + o.cost_unit + "'");
        }
        unit = &o.cost_unit;
        if (!best || o.cost < best->cost) best = &o;
    }
    if (!best) return {false, AttackOutcome(1.0, 0.0, false)};
    return {true, *best};
}

}  // namespace

VulnerabilityScore vulnerability(std::span<const AttackOutcome> outcomes) {
    auto [found, best] = min_successful(outcomes);
    VulnerabilityScore score;
    if (!found) return score;  // undefined, distinct from 0
    score.defined = true;
    score.value = 1.0 / best.cost;
    score.cost_unit = best.cost_unit;
    return score;
}

ResilienceScore resilience(std::span<const AttackOutcome> outcomes) {
    auto [found, best] = min_successful(outcomes);
    ResilienceScore score;
    if (!found) {
        score.value = std::numeric_limits<double>::infinity();
        return score;
    }
    score.finite = true;
    score.value = best.cost;
    score.cost_unit = best.cost_unit;
    return score;
}

}  // namespace casim::metrics
