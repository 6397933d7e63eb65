#pragma once

#include "casim/common/rng.hpp"
#include "casim/net/graph.hpp"

namespace casim::net {

/// Barabasi-Albert preferential attachment: n nodes, each new node attaches
/// m edges to existing nodes with probability proportional to degree.
Graph barabasi_albert(int n, int m, Rng& rng);

/// Erdos-Renyi G(n, p).
Graph erdos_renyi(int n, double p, Rng& rng);

}  // namespace casim::net
