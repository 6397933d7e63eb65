#include "casim/rl/report_json.hpp"

#include <json.hpp>

namespace casim::rl {

using nlohmann::json;

std::string report_to_json(const AttackReport& report) {
    json doc;
    doc["scenario"] = report.scenario_id;
    doc["seed"] = report.seed;
    doc["success"] = report.success;
    doc["termination"] = report.termination;
    json iters = json::array();
    for (const auto& it : report.iterations) {
        iters.push_back({{"iteration", it.iteration},
                         {"state", it.state},
                         {"action", it.action},
                         {"reward", it.reward},
                         {"cumulative_cost", it.cumulative_cost},
                         {"impact", it.impact}});
    }
    doc["iterations"] = std::move(iters);
    json eps = json::array();
    for (const auto& ep : report.episodes) {
        eps.push_back({{"start_iteration", ep.start_iteration},
                       {"actions", ep.actions},
                       {"return", ep.episode_return},
                       {"final_impact", ep.final_impact},
                       {"objective_met", ep.objective_met},
                       {"metrics", ep.metrics}});
    }
    doc["episodes"] = std::move(eps);
    doc["final_policy"] = report.final_policy;
    doc["final_metrics"] = report.final_metrics;
    doc["curves"] = report.curves;
    json attachments = json::object();
    for (const auto& [name, payload] : report.attachments) {
        attachments[name] = json::parse(payload);
    }
    doc["attachments"] = std::move(attachments);
    return doc.dump(2);
}

AttackReport report_from_json(const std::string& text) {
    json doc = json::parse(text);
    AttackReport report;
    report.scenario_id = doc.at("scenario").get<std::string>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.success = doc.at("success").get<bool>();
    report.termination = doc.at("termination").get<std::string>();
    for (const auto& it : doc.at("iterations")) {
        report.iterations.push_back({it.at("iteration").get<int>(),
                                     it.at("state").get<std::string>(),
                                     it.at("action").get<int>(),
                                     it.at("reward").get<double>(),
                                     it.at("cumulative_cost").get<double>(),
                                     it.at("impact").get<double>()});
    }
    for (const auto& ep : doc.at("episodes")) {
        EpisodeSummary e;
        e.start_iteration = ep.at("start_iteration").get<int>();
        e.actions = ep.at("actions").get<int>();
        e.episode_return = ep.at("return").get<double>();
        e.final_impact = ep.at("final_impact").get<double>();
        e.objective_met = ep.at("objective_met").get<bool>();
        e.metrics = ep.at("metrics").get<std::map<std::string, double>>();
        report.episodes.push_back(std::move(e));
    }
    report.final_policy = doc.at("final_policy").get<std::map<std::string, int>>();
    report.final_metrics = doc.at("final_metrics").get<std::map<std::string, double>>();
    report.curves =
        doc.at("curves").get<std::map<std::string, std::vector<double>>>();
    if (doc.contains("attachments")) {
        for (const auto& [name, payload] : doc.at("attachments").items()) {
            report.attachments[name] = payload.dump(2);
        }
    }
    return report;
}

}  // namespace casim::rl
