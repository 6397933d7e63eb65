// casim - command line front end for the CAS attack simulator.
//
// Subcommands:
//   run <config>       execute an experiment and persist results + curves
//   validate <config>  parse and validate a scenario config
//   replay <dir> -r N  re-run one repetition and diff against the stored report
//   classify <name>    look up an attack in the classification catalog
//   metrics <dir>      print vulnerability/resilience from a result directory
//
// Exit codes: 0 success, 1 config error, 2 runtime failure,
// 3 objective not reached (best-effort result still written).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "casim/common/errors.hpp"
#include "casim/common/rng.hpp"
#include "casim/metrics/classification.hpp"
#include "casim/rl/report_json.hpp"
#include "casim/scenario/curves.hpp"
#include "casim/scenario/experiment.hpp"

namespace {

std::string output_dir_for(const casim::scenario::ScenarioConfig& config,
                           const std::string& override_dir) {
    std::string dir = override_dir.empty() ? config.output_dir : override_dir;
    if (const char* root = std::getenv("CASIM_OUTPUT_ROOT")) {
        return (std::filesystem::path(root) / dir).string();
    }
    return dir;
}

int cmd_run(const std::string& config_path, const std::string& out_override, int threads,
            bool quiet) {
    casim::scenario::ScenarioConfig config;
    try {
        config = casim::scenario::load_config(config_path);
    } catch (const casim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    try {
        auto result = casim::scenario::run_experiment(config, threads);
        const std::string dir = output_dir_for(config, out_override);
        casim::scenario::write_result(result, dir);
        casim::scenario::emit_curves(result, dir);
        if (!quiet) {
            std::cout << "scenario " << config.scenario_id << ": "
                      << result.successful_repetitions << "/" << config.repetitions
                      << " repetitions reached the objective";
            if (result.vulnerability.defined) {
                std::cout << "; vulnerability " << result.vulnerability.value
                          << ", resilience " << result.resilience.value << " ("
                          << result.vulnerability.cost_unit << ")";
            }
            std::cout << "\nresults written to " << dir << "\n";
        }
        return result.successful_repetitions > 0 ? 0 : 3;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return 2;
    }
}

int cmd_validate(const std::string& config_path) {
    try {
        auto config = casim::scenario::load_config(config_path);
        std::cout << "valid: scenario " << config.scenario_id << ", "
                  << config.repetitions << " repetitions, master seed "
                  << config.master_seed << "\n";
        return 0;
    } catch (const casim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_replay(const std::string& result_dir, int repetition) {
    try {
        const std::filesystem::path base(result_dir);
        std::ifstream summary_in(base / "summary.json");
        if (!summary_in) {
            std::cerr << "config error: no summary.json in " << result_dir << "\n";
            return 1;
        }
        std::stringstream ss;
        ss << summary_in.rdbuf();
        auto doc = nlohmann::json::parse(ss.str());
        auto config = casim::scenario::parse_config(doc.at("config").dump());

        if (repetition < 0 || repetition >= config.repetitions) {
            std::cerr << "config error: repetition out of range\n";
            return 1;
        }
        char name[32];
        std::snprintf(name, sizeof(name), "rep_%03d.json", repetition);
        std::ifstream rep_in(base / name);
        if (!rep_in) {
            std::cerr << "config error: missing " << name << "\n";
            return 1;
        }
        std::stringstream stored;
        stored << rep_in.rdbuf();

        const std::uint64_t seed =
            casim::derive_seed(config.master_seed, static_cast<std::uint64_t>(repetition));
        auto report = casim::scenario::run_repetition(config, seed);
        const std::string fresh = casim::rl::report_to_json(report);
        if (fresh == stored.str()) {
            std::cout << "repetition " << repetition << " replayed identically\n";
            return 0;
        }
        std::cerr << "runtime failure: replay of repetition " << repetition
                  << " differs from the stored report\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return 2;
    }
}

int cmd_classify(const std::string& name) {
    try {
        auto row = casim::metrics::classify(name);
        std::cout << row.name << "\n  surface: " << to_string(row.surface)
                  << "\n  cia:";
        for (auto d : row.cia) std::cout << " " << to_string(d);
        std::cout << "\n  dddas:";
        for (auto d : row.dddas) std::cout << " " << to_string(d);
        std::cout << "\n  type: " << to_string(row.type)
                  << "\n  mode: " << to_string(row.mode) << "\n";
        return 0;
    } catch (const casim::NotFoundError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_metrics(const std::string& result_dir) {
    try {
        std::ifstream in(std::filesystem::path(result_dir) / "summary.json");
        if (!in) {
            std::cerr << "config error: no summary.json in " << result_dir << "\n";
            return 1;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        auto doc = nlohmann::json::parse(ss.str());
        const auto& vul = doc.at("vulnerability");
        if (vul.at("defined").get<bool>()) {
            std::cout << "vulnerability: " << vul.at("value").get<double>() << " (1/"
                      << vul.at("cost_unit").get<std::string>() << ")\n";
            std::cout << "resilience: " << doc.at("resilience").at("value").get<double>()
                      << " " << vul.at("cost_unit").get<std::string>() << "\n";
        } else {
            std::cout << "vulnerability: undefined (no successful attack found; "
                         "best-effort search only)\n";
            std::cout << "resilience: infinite marker\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"casim - adversarial attack simulator for complex adaptive systems"};
    app.require_subcommand(1);

    std::string config_path, out_dir, result_dir, attack_name;
    int threads = 1;
    int repetition = 0;
    bool quiet = false;

    auto* run = app.add_subcommand("run", "execute an experiment from a config");
    run->add_option("config", config_path, "scenario config (JSON)")->required();
    run->add_option("--out", out_dir, "override the output directory");
    run->add_option("--threads", threads, "worker threads for repetitions");
    run->add_flag("--quiet", quiet, "suppress the summary line");

    auto* validate = app.add_subcommand("validate", "validate a config without running");
    validate->add_option("config", config_path, "scenario config (JSON)")->required();

    auto* replay = app.add_subcommand("replay", "re-run one repetition and diff");
    replay->add_option("result_dir", result_dir, "result directory")->required();
    replay->add_option("-r,--rep", repetition, "repetition index")->required();

    auto* classify = app.add_subcommand("classify", "look up an attack classification");
    classify->add_option("name", attack_name, "attack name from the catalog")->required();

    auto* metrics = app.add_subcommand("metrics", "print scores from a result directory");
    metrics->add_option("result_dir", result_dir, "result directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, out_dir, threads, quiet);
    if (validate->parsed()) return cmd_validate(config_path);
    if (replay->parsed()) return cmd_replay(result_dir, repetition);
    if (classify->parsed()) return cmd_classify(attack_name);
    if (metrics->parsed()) return cmd_metrics(result_dir);
    return 1;
}
