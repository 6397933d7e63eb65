#pragma once

#include <string>

#include "casim/rl/attack_loop.hpp"

namespace casim::rl {

/// Stable JSON form of an attack report (sorted object keys, shortest
/// round-trip numbers). Byte-identical for identical reports.
std::string report_to_json(const AttackReport& report);
AttackReport report_from_json(const std::string& text);

}  // namespace casim::rl
