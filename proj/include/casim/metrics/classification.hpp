#pragma once

#include <set>
#include <string>
#include <vector>

namespace casim::metrics {

enum class FunctionalSurface { NetworkStructure, CooperationProtocols, ActuationFunctions };
enum class CiaDimension { Confidentiality, Integrity, Availability };
enum class DddasSurface { Sensing, InformationSharing, Analytics, SelfConfiguration };
enum class AttackType { Active, Passive };
enum class AttackMode { State, Dynamics, StateAndDynamics, NotApplicable };

/// One row of the attack-classification catalog. Passive attacks always
/// carry mode NotApplicable.
struct AttackClassification {
    std::string name;
    FunctionalSurface surface = FunctionalSurface::NetworkStructure;
    std::set<CiaDimension> cia;
    std::set<DddasSurface> dddas;
    AttackType type = AttackType::Active;
    AttackMode mode = AttackMode::NotApplicable;
};

/// The embedded catalog (11 rows, version "1").
const std::vector<AttackClassification>& attack_catalog();
std::string attack_catalog_version();
/// The catalog as JSON text, the same payload shipped as a data file.
std::string attack_catalog_json();

/// Case-insensitive lookup by row name (a few aliases cover the combined
/// rows, e.g. "Traffic Analysis" for "Traffic Analysis, Topology Inference").
/// Unknown name -> NotFoundError.
AttackClassification classify(const std::string& attack_name);

std::string to_string(FunctionalSurface s);
std::string to_string(CiaDimension d);
std::string to_string(DddasSurface s);
std::string to_string(AttackType t);
std::string to_string(AttackMode m);

}  // namespace casim::metrics
