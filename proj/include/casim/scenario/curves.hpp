#pragma once

#include <string>

#include "casim/scenario/experiment.hpp"

namespace casim::scenario {

/// Write the scenario's plot-data CSVs (stable column order, shortest
/// round-trip numbers) plus a curves manifest into dir. An experiment with
/// no successful repetitions writes no curve CSVs, only the manifest with
/// failure counts. Unwritable paths raise errors before any partial file is
/// left behind (write-temp-then-rename).
void emit_curves(const ExperimentResult& result, const std::string& dir);

}  // namespace casim::scenario
