#pragma once

#include <array>
#include <cstdint>

#include "casim/dynamics/system.hpp"

namespace casim::dynamics {

/// Grid-sampled basins of attraction. Every cell carries exactly one label:
/// an attractor index, BOUNDARY (in no basin, adjacent to at least two
/// distinct basins) or UNRESOLVED (did not converge, diverged, or converged
/// onto an unstable equilibrium).
struct BasinMap {
    static constexpr std::int32_t kBoundary = -1;
    static constexpr std::int32_t kUnresolved = -2;

    std::vector<std::array<double, 2>> bounds;  // per-dimension lo/hi
    std::vector<int> resolution;                // cells per dimension
    std::vector<std::int32_t> labels;           // row-major cell labels
    std::vector<State> attractors;
    std::vector<std::size_t> boundary_cells;    // indices labeled kBoundary

    std::size_t cell_count() const { return labels.size(); }
    State cell_center(std::size_t index) const;
    std::int32_t label_at(std::size_t index) const { return labels[index]; }
};

/// Estimate basins by integrating every cell center for `horizon` and
/// clustering converged endpoints (merge radius 10*tol). Convergence means
/// the field norm falls below tol; candidate attractors are kept only if
/// perturbation probes return to them, so unstable equilibria do not mint
/// basins. Divergent cells (norm above 1e9 or non-finite) are UNRESOLVED.
/// Requires dimension <= 3 and resolution >= 2 per axis.
BasinMap estimate_basins(const DynamicalSystem& system,
                         const std::vector<std::array<double, 2>>& bounds,
                         const std::vector<int>& resolution, double horizon,
                         double tol, double dt = 0.01);

}  // namespace casim::dynamics
