#include "casim/metrics/classification.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <json.hpp>

#include "casim/common/errors.hpp"

namespace casim::metrics {

namespace {

// Catalog of sample attacks per functional surface, with their CIA
// dimensions, DDDAS surfaces, activity and manipulation mode.
constexpr const char* kCatalogJson = R"JSON({
  "version": "1",
  "attacks": [
    {"name": "Traffic Analysis, Topology Inference", "surface": "NetworkStructure",
     "cia": ["C"], "dddas": ["IS"], "type": "Passive", "mode": "NA"},
    {"name": "Topological Disruption", "surface": "NetworkStructure",
     "cia": ["A"], "dddas": ["IS"], "type": "Active", "mode": "State"},
    {"name": "Cascade Induction", "surface": "NetworkStructure",
     "cia": ["I", "A"], "dddas": ["IS", "SC"], "type": "Active", "mode": "Dynamics"},
    {"name": "Sniffing", "surface": "CooperationProtocols",
     "cia": ["C"], "dddas": ["IS"], "type": "Passive", "mode": "NA"},
    {"name": "Sybil", "surface": "CooperationProtocols",
     "cia": ["I", "A"], "dddas": ["IS", "SC", "S"], "type": "Active", "mode": "StateAndDynamics"},
    {"name": "Information Manipulation", "surface": "CooperationProtocols",
     "cia": ["I", "A"], "dddas": ["SC", "AN"], "type": "Active", "mode": "Dynamics"},
    {"name": "Parameter/Dynamics Inference", "surface": "ActuationFunctions",
     "cia": ["C"], "dddas": ["IS", "SC"], "type": "Passive", "mode": "NA"},
    {"name": "Competitive Intelligence", "surface": "ActuationFunctions",
     "cia": ["C"], "dddas": ["IS", "SC", "AN"], "type": "Passive", "mode": "NA"},
    {"name": "Adversarial Examples", "surface": "ActuationFunctions",
     "cia": ["I", "A"], "dddas": ["S", "AN", "SC"], "type": "Active", "mode": "State"},
    {"name": "Spoofing", "surface": "ActuationFunctions",
     "cia": ["I", "A"], "dddas": ["S", "AN", "SC"], "type": "Active", "mode": "StateAndDynamics"},
    {"name": "Induction of Terminal States", "surface": "ActuationFunctions",
     "cia": ["I", "A"], "dddas": ["S", "AN", "SC"], "type": "Active", "mode": "State"}
  ]
})JSON";

FunctionalSurface parse_surface(const std::string& s) {
    if (s == "NetworkStructure") return FunctionalSurface::NetworkStructure;
    if (s == "CooperationProtocols") return FunctionalSurface::CooperationProtocols;
    if (s == "ActuationFunctions") return FunctionalSurface::ActuationFunctions;
    throw Error("bad surface in catalog: " + s);
}

CiaDimension parse_cia(const std::string& s) {
    if (s == "C") return CiaDimension::Confidentiality;
    if (s == "I") return CiaDimension::Integrity;
    if (s == "A") return CiaDimension::Availability;
    throw Error("bad CIA dimension in catalog: " + s);
}

DddasSurface parse_dddas(const std::string& s) {
    if (s == "S") return DddasSurface::Sensing;
    if (s == "IS") return DddasSurface::InformationSharing;
    if (s == "AN") return DddasSurface::Analytics;
    if (s == "SC") return DddasSurface::SelfConfiguration;
    throw Error("bad DDDAS surface in catalog: " + s);
}

AttackMode parse_mode(const std::string& s) {
    if (s == "State") return AttackMode::State;
    if (s == "Dynamics") return AttackMode::Dynamics;
    if (s == "StateAndDynamics") return AttackMode::StateAndDynamics;
    if (s == "NA") return AttackMode::NotApplicable;
    throw Error("bad attack mode in catalog: " + s);
}

std::string lowered(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<AttackClassification> load_catalog() {
    auto doc = nlohmann::json::parse(kCatalogJson);
    std::vector<AttackClassification> rows;
    for (const auto& row : doc.at("attacks")) {
        AttackClassification c;
        c.name = row.at("name").get<std::string>();
        c.surface = parse_surface(row.at("surface").get<std::string>());
        for (const auto& d : row.at("cia")) c.cia.insert(parse_cia(d.get<std::string>()));
        for (const auto& d : row.at("dddas")) c.dddas.insert(parse_dddas(d.get<std::string>()));
        c.type = row.at("type").get<std::string>() == "Passive" ? AttackType::Passive
                                                                : AttackType::Active;
        c.mode = parse_mode(row.at("mode").get<std::string>());
        if (c.type == AttackType::Passive && c.mode != AttackMode::NotApplicable) {
            throw Error("catalog row violates passive => NA: " + c.name);
        }
        rows.push_back(std::move(c));
    }
    return rows;
}

const std::map<std::string, std::string>& aliases() {
    static const std::map<std::string, std::string> kAliases = {
        {"traffic analysis", "traffic analysis, topology inference"},
        {"topology inference", "traffic analysis, topology inference"},
        {"parameter inference", "parameter/dynamics inference"},
        {"dynamics inference", "parameter/dynamics inference"},
    };
    return kAliases;
}

}  // namespace

const std::vector<AttackClassification>& attack_catalog() {
    static const std::vector<AttackClassification> kCatalog = load_catalog();
    return kCatalog;
}

std::string attack_catalog_version() {
    return nlohmann::json::parse(kCatalogJson).at("version").get<std::string>();
}

std::string attack_catalog_json() { return kCatalogJson; }

AttackClassification classify(const std::string& attack_name) {
    std::string key = lowered(attack_name);
    auto alias = aliases().find(key);
    if (alias != aliases().end()) key = alias->second;
    for (const AttackClassification& row : attack_catalog()) {
        if (lowered(row.name) == key) return row;
    }
    throw NotFoundError("attack not in catalog: " + attack_name);
}

std::string to_string(FunctionalSurface s) {
    switch (s) {
        case FunctionalSurface::NetworkStructure: return "NetworkStructure";
        case FunctionalSurface::CooperationProtocols: return "CooperationProtocols";
        case FunctionalSurface::ActuationFunctions: return "ActuationFunctions";
    }
    return "?";
}

std::string to_string(CiaDimension d) {
    switch (d) {
        case CiaDimension::Confidentiality: return "C";
        case CiaDimension::Integrity: return "I";
        case CiaDimension::Availability: return "A";
    }
    return "?";
}

std::string to_string(DddasSurface s) {
    switch (s) {
        case DddasSurface::Sensing: return "S";
        case DddasSurface::InformationSharing: return "IS";
        case DddasSurface::Analytics: return "AN";
        case DddasSurface::SelfConfiguration: return "SC";
    }
    return "?";
}

std::string to_string(AttackType t) {
    return t == AttackType::Active ? "Active" : "Passive";
}

std::string to_string(AttackMode m) {
    switch (m) {
        case AttackMode::State: return "State";
        case AttackMode::Dynamics: return "Dynamics";
        case AttackMode::StateAndDynamics: return "StateAndDynamics";
        case AttackMode::NotApplicable: return "NA";
    }
    return "?";
}

}  // namespace casim::metrics
