#include "casim/scenario/curves.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "casim/common/errors.hpp"
#include "casim/common/text.hpp"

namespace casim::scenario {

namespace {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write: " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

struct Column {
    std::string name;
    std::vector<double> values;
};

std::string csv_of(const std::string& index_name, const std::vector<Column>& columns) {
    std::size_t rows = 0;
    for (const auto& c : columns) rows = std::max(rows, c.values.size());
    std::string out = index_name;
    for (const auto& c : columns) out += "," + c.name;
    out += "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        out += std::to_string(r + 1);
        for (const auto& c : columns) {
            out += ",";
            if (r < c.values.size()) out += format_double(c.values[r]);
        }
        out += "\n";
    }
    return out;
}

/// Mean/min/max across repetitions of a named per-report curve, aligned by
/// step index; rows where no repetition has data are dropped.
std::vector<Column> stat_columns(const ExperimentResult& result,
                                 const std::string& curve, const std::string& prefix,
                                 bool with_range) {
    std::size_t length = 0;
    for (const auto& report : result.reports) {
        auto it = report.curves.find(curve);
        if (it != report.curves.end()) length = std::max(length, it->second.size());
    }
    std::vector<double> mean, lo, hi;
    for (std::size_t k = 0; k < length; ++k) {
        double sum = 0.0, mn = 0.0, mx = 0.0;
        int n = 0;
        for (const auto& report : result.reports) {
            auto it = report.curves.find(curve);
            if (it == report.curves.end() || k >= it->second.size()) continue;
            const double v = it->second[k];
            if (n == 0) mn = mx = v;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            sum += v;
            ++n;
        }
        if (n == 0) break;
        mean.push_back(sum / n);
        lo.push_back(mn);
        hi.push_back(mx);
    }
    std::vector<Column> cols;
    cols.push_back({prefix + "_mean", std::move(mean)});
    if (with_range) {
        cols.push_back({prefix + "_min", std::move(lo)});
        cols.push_back({prefix + "_max", std::move(hi)});
    }
    return cols;
}

void append(std::vector<Column>& into, std::vector<Column> cols) {
    for (auto& c : cols) into.push_back(std::move(c));
}

}  // namespace

void emit_curves(const ExperimentResult& result, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);

    nlohmann::json manifest;
    manifest["scenario"] = result.config.scenario_id;
    manifest["repetitions"] = result.config.repetitions;
    manifest["successful_repetitions"] = result.successful_repetitions;
    manifest["failed_repetitions"] = result.failed_repetitions;
    std::vector<std::string> files;

    const bool any_success = result.successful_repetitions > 0;
    switch (result.config.kind) {
        case ScenarioKind::GridCascade: {
            if (any_success) {
                std::vector<Column> cols;
                auto stats = stat_columns(result, "cascaded_by_trip", "cascaded", true);
                cols.push_back({"mean_cascaded", stats[0].values});
                cols.push_back({"min", stats[1].values});
                cols.push_back({"max", stats[2].values});
                atomic_write(base / "failures_vs_trips.csv", csv_of("trip_index", cols));
                files.push_back("failures_vs_trips.csv");
            }
            break;
        }
        case ScenarioKind::NetFragmentation: {
            std::vector<Column> frag;
            append(frag, stat_columns(result, "rl_fragmentation", "rl", true));
            append(frag, stat_columns(result, "betweenness_fragmentation", "betweenness",
                                      false));
            append(frag, stat_columns(result, "brokerage_fragmentation", "brokerage",
                                      false));
            atomic_write(base / "fragmentation_vs_removals.csv", csv_of("step", frag));
            files.push_back("fragmentation_vs_removals.csv");
            std::vector<Column> clus;
            append(clus, stat_columns(result, "rl_clustering", "rl", false));
            append(clus, stat_columns(result, "betweenness_clustering", "betweenness",
                                      false));
            append(clus, stat_columns(result, "brokerage_clustering", "brokerage", false));
            atomic_write(base / "clustering_vs_removals.csv", csv_of("step", clus));
            files.push_back("clustering_vs_removals.csv");
            break;
        }
        case ScenarioKind::FormationDestabilize: {
            if (any_success) {
                std::vector<Column> cols;
                append(cols, stat_columns(result, "impact_by_removal", "fragmentation",
                                          true));
                atomic_write(base / "fragmentation_vs_removals.csv", csv_of("step", cols));
                files.push_back("fragmentation_vs_removals.csv");
            }
            break;
        }
        case ScenarioKind::PolicyInduction: {
            std::vector<Column> cols;
            append(cols, stat_columns(result, "unperturbed_reward", "unperturbed", true));
            append(cols, stat_columns(result, "perturbed_reward", "perturbed", true));
            atomic_write(base / "reward_per_epoch.csv", csv_of("epoch", cols));
            files.push_back("reward_per_epoch.csv");
            break;
        }
        case ScenarioKind::DynamicsDemo: {
            std::vector<Column> cols;
            append(cols, stat_columns(result, "basin_labels", "label", false));
            atomic_write(base / "basin_map.csv", csv_of("cell", cols));
            files.push_back("basin_map.csv");
            std::vector<Column> traj;
            append(traj, stat_columns(result, "trajectory_x0", "x0", false));
            append(traj, stat_columns(result, "perturbed_trajectory_x0", "perturbed_x0",
                                      false));
            atomic_write(base / "trajectory.csv", csv_of("step", traj));
            files.push_back("trajectory.csv");
            break;
        }
    }

    manifest["files"] = files;
    atomic_write(base / "curves.json", manifest.dump(2));
}

}  // namespace casim::scenario
