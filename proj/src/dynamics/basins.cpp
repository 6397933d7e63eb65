#include "casim/dynamics/basins.hpp"

#include <cmath>
#include <limits>

#include "casim/common/errors.hpp"

namespace casim::dynamics {

namespace {

constexpr double kDivergenceNorm = 1e9;

double norm(const State& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double distance(const State& a, const State& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

enum class CellOutcome { Converged, Unresolved };

/// RK4 with early exit: stops as soon as the field norm drops below tol
/// (converged) or the state diverges.
CellOutcome settle(const DynamicalSystem& system, State x, double horizon,
                   double dt, double tol, State& endpoint) {
    const int n = system.dimension;
    State k1(n), k2(n), k3(n), k4(n), tmp(n);
    auto eval = [&](const State& y, double t, State& out) -> bool {
        system.field(y, system.environment.at(t), out);
        for (double v : out) {
            if (!std::isfinite(v)) return false;
        }
        return true;
    };

    double t = 0.0;
    while (t < horizon) {
        if (!eval(x, t, k1)) return CellOutcome::Unresolved;
        if (norm(k1) < tol) {
            endpoint = x;
            return CellOutcome::Converged;
        }
        const double h = std::min(dt, horizon - t);
        for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
        if (!eval(tmp, t + 0.5 * h, k2)) return CellOutcome::Unresolved;
        for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
        if (!eval(tmp, t + 0.5 * h, k3)) return CellOutcome::Unresolved;
        for (int i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
        if (!eval(tmp, t + h, k4)) return CellOutcome::Unresolved;
        for (int i = 0; i < n; ++i) {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(x[i])) return CellOutcome::Unresolved;
        }
        if (norm(x) > kDivergenceNorm) return CellOutcome::Unresolved;
        t += h;
    }
    if (!eval(x, t, k1)) return CellOutcome::Unresolved;
    if (norm(k1) < tol) {
        endpoint = x;
        return CellOutcome::Converged;
    }
    return CellOutcome::Unresolved;
}

}  // namespace

State BasinMap::cell_center(std::size_t index) const {
    State center(bounds.size());
    std::size_t rest = index;
    for (std::size_t d = bounds.size(); d-- > 0;) {
        const std::size_t i = rest % static_cast<std::size_t>(resolution[d]);
        rest /= static_cast<std::size_t>(resolution[d]);
        const double width = (bounds[d][1] - bounds[d][0]) / resolution[d];
        center[d] = bounds[d][0] + (static_cast<double>(i) + 0.5) * width;
    }
    return center;
}

BasinMap estimate_basins(const DynamicalSystem& system,
                         const std::vector<std::array<double, 2>>& bounds,
                         const std::vector<int>& resolution, double horizon,
                         double tol, double dt) {
    if (system.dimension > 3) throw Error("basin grid supports dimension <= 3");
    if (static_cast<int>(bounds.size()) != system.dimension ||
        static_cast<int>(resolution.size()) != system.dimension) {
        throw Error("bounds/resolution must match system dimension");
    }
    for (int r : resolution) {
        if (r < 2) throw Error("basin grid needs resolution >= 2 per axis");
    }

    BasinMap map;
    map.bounds = bounds;
    map.resolution = resolution;
    std::size_t cells = 1;
    double min_width = std::numeric_limits<double>::max();
    for (int d = 0; d < system.dimension; ++d) {
        cells *= static_cast<std::size_t>(resolution[d]);
        min_width = std::min(min_width, (bounds[d][1] - bounds[d][0]) / resolution[d]);
    }
    map.labels.assign(cells, BasinMap::kUnresolved);

    const double merge_radius = 10.0 * tol;
    const double probe_offset = std::max(merge_radius, 0.5 * min_width);
    std::vector<State> unstable_points;

    // A candidate equilibrium counts as an attractor only if axis probes
    // displaced by probe_offset settle back within the merge radius.
    auto is_stable = [&](const State& candidate) {
        for (int d = 0; d < system.dimension; ++d) {
            for (double sign : {-1.0, 1.0}) {
                State probe = candidate;
                probe[d] += sign * probe_offset;
                State back;
                if (settle(system, probe, horizon, dt, tol, back) != CellOutcome::Converged) {
                    return false;
                }
                if (distance(back, candidate) > merge_radius) return false;
            }
        }
        return true;
    };

    // Cells are processed in index order so attractor numbering (and with it
    // the whole map) is deterministic.
    for (std::size_t c = 0; c < cells; ++c) {
        State endpoint;
        if (settle(system, map.cell_center(c), horizon, dt, tol, endpoint) !=
            CellOutcome::Converged) {
            continue;
        }
        bool labeled = false;
        for (std::size_t a = 0; a < map.attractors.size(); ++a) {
            if (distance(endpoint, map.attractors[a]) <= merge_radius) {
                map.labels[c] = static_cast<std::int32_t>(a);
                labeled = true;
                break;
            }
        }
        if (labeled) continue;
        bool known_unstable = false;
        for (const State& u : unstable_points) {
            if (distance(endpoint, u) <= merge_radius) {
                known_unstable = true;
                break;
            }
        }
        if (known_unstable) continue;
        if (is_stable(endpoint)) {
            map.labels[c] = static_cast<std::int32_t>(map.attractors.size());
            map.attractors.push_back(endpoint);
        } else {
            unstable_points.push_back(endpoint);
        }
    }

    // Boundary: non-basin cells face-adjacent to two or more distinct basins
    // (the basins/boundary label sets stay disjoint by construction).
    std::vector<std::size_t> strides(system.dimension, 1);
    for (int d = system.dimension - 2; d >= 0; --d) {
        strides[d] = strides[d + 1] * static_cast<std::size_t>(resolution[d + 1]);
    }
    auto coords_of = [&](std::size_t index) {
        std::vector<std::size_t> coords(system.dimension);
        for (int d = 0; d < system.dimension; ++d) {
            coords[d] = index / strides[d] % static_cast<std::size_t>(resolution[d]);
        }
        return coords;
    };
    for (std::size_t c = 0; c < cells; ++c) {
        if (map.labels[c] != BasinMap::kUnresolved) continue;
        auto coords = coords_of(c);
        std::int32_t first_basin = -1;
        bool two_basins = false;
        for (int d = 0; d < system.dimension && !two_basins; ++d) {
            for (int step : {-1, 1}) {
                if (step < 0 && coords[d] == 0) continue;
                if (step > 0 && coords[d] + 1 >= static_cast<std::size_t>(resolution[d])) continue;
                const std::size_t nb = step < 0 ? c - strides[d] : c + strides[d];
                const std::int32_t lab = map.labels[nb];
                if (lab < 0) continue;
                if (first_basin < 0) first_basin = lab;
                else if (lab != first_basin) { two_basins = true; break; }
            }
        }
        if (two_basins) {
            map.labels[c] = BasinMap::kBoundary;
            map.boundary_cells.push_back(c);
        }
    }
    return map;
}

}  // namespace casim::dynamics
