#include "casim/grid/power_grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "casim/common/errors.hpp"
#include "casim/common/text.hpp"

namespace casim::grid {

namespace detail {
extern const std::string_view kRts79BusCsv;
extern const std::string_view kRts79LineCsv;
}  // namespace detail

namespace {

constexpr std::uint64_t kBusChecksum = 0xd239558dc9722c1eULL;
constexpr std::uint64_t kLineChecksum = 0x3c0c36ee1cebbe1aULL;

BusType parse_bus_type(std::string_view s) {
    if (s == "generator") return BusType::Generator;
    if (s == "load") return BusType::Load;
    if (s == "junction") return BusType::Junction;
    throw Error("unknown bus type: " + std::string(s));
}

}  // namespace

PowerGrid::PowerGrid(std::vector<Bus> buses, std::vector<Line> lines)
    : buses_(std::move(buses)), lines_(std::move(lines)) {
    std::set<int> bus_ids;
    for (const Bus& b : buses_) {
        if (!bus_ids.insert(b.id).second) {
            throw Error("duplicate bus id: " + std::to_string(b.id));
        }
    }
    std::set<int> line_ids;
    for (const Line& l : lines_) {
        if (!line_ids.insert(l.id).second) {
            throw Error("duplicate line id: " + std::to_string(l.id));
        }
        if (l.capacity_mw <= 0.0) {
            throw Error("line capacity must be positive: line " + std::to_string(l.id));
        }
        if (l.alive && l.load_mw < 0.0) {
            throw Error("negative line load: line " + std::to_string(l.id));
        }
        if (!bus_ids.count(l.from_bus) || !bus_ids.count(l.to_bus)) {
            throw Error("line endpoint bus missing: line " + std::to_string(l.id));
        }
    }
}

PowerGrid PowerGrid::from_csv(std::string_view bus_csv, std::string_view line_csv,
                              double loading_factor) {
    if (loading_factor < 0.0) throw Error("loading factor must be non-negative");
    std::vector<Bus> buses;
    bool header = true;
    for (std::string_view row : split(bus_csv, '\n')) {
        row = trim(row);
        if (row.empty()) continue;
        if (header) { header = false; continue; }
        auto f = split(row, ',');
        if (f.size() != 4) throw Error("bus CSV row needs 4 fields");
        Bus b;
        b.id = std::stoi(std::string(f[0]));
        b.type = parse_bus_type(trim(f[1]));
        b.generation_mw = std::stod(std::string(f[2]));
        b.demand_mw = std::stod(std::string(f[3]));
        buses.push_back(b);
    }
    std::vector<Line> lines;
    header = true;
    for (std::string_view row : split(line_csv, '\n')) {
        row = trim(row);
        if (row.empty()) continue;
        if (header) { header = false; continue; }
        auto f = split(row, ',');
        if (f.size() != 4) throw Error("line CSV row needs 4 fields");
        Line l;
        l.id = std::stoi(std::string(f[0]));
        l.from_bus = std::stoi(std::string(f[1]));
        l.to_bus = std::stoi(std::string(f[2]));
        l.capacity_mw = std::stod(std::string(f[3]));
        l.load_mw = loading_factor * l.capacity_mw;
        l.alive = true;
        lines.push_back(l);
    }
    return PowerGrid(std::move(buses), std::move(lines));
}

PowerGrid PowerGrid::from_csv_files(const std::string& bus_path,
                                    const std::string& line_path, double loading_factor) {
    auto read = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open grid file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    return from_csv(read(bus_path), read(line_path), loading_factor);
}

const Line& PowerGrid::line(int id) const {
    for (const Line& l : lines_) {
        if (l.id == id) return l;
    }
    throw NotFoundError("no such line: " + std::to_string(id));
}

bool PowerGrid::has_line(int id) const {
    for (const Line& l : lines_) {
        if (l.id == id) return true;
    }
    return false;
}

double PowerGrid::total_generation_mw() const {
    double s = 0.0;
    for (const Bus& b : buses_) s += b.generation_mw;
    return s;
}

double PowerGrid::total_demand_mw() const {
    double s = 0.0;
    for (const Bus& b : buses_) s += b.demand_mw;
    return s;
}

double PowerGrid::total_line_load_mw() const {
    double s = 0.0;
    for (const Line& l : lines_) {
        if (l.alive) s += l.load_mw;
    }
    return s;
}

std::size_t PowerGrid::load_bus_count() const {
    std::size_t n = 0;
    for (const Bus& b : buses_) {
        if (b.demand_mw > 0.0) ++n;
    }
    return n;
}

std::size_t PowerGrid::generator_bus_count() const {
    std::size_t n = 0;
    for (const Bus& b : buses_) {
        if (b.generation_mw > 0.0) ++n;
    }
    return n;
}

int PowerGrid::failed_line_count() const {
    int n = 0;
    for (const Line& l : lines_) {
        if (!l.alive) ++n;
    }
    return n;
}

bool PowerGrid::is_collapsed(int failure_threshold) const {
    return failed_line_count() >= failure_threshold;
}

std::vector<int> PowerGrid::alive_line_ids() const {
    std::vector<int> out;
    for (const Line& l : lines_) {
        if (l.alive) out.push_back(l.id);
    }
    return out;
}

std::pair<PowerGrid, CascadeResult> trip_line(const PowerGrid& grid, int line_id,
                                              int collapse_threshold) {
    if (!grid.has_line(line_id)) {
        throw InvalidActionError("no such line: " + std::to_string(line_id));
    }
    if (!grid.line(line_id).alive) {
        throw InvalidActionError("line already failed: " + std::to_string(line_id));
    }

    PowerGrid settled = grid;
    CascadeResult result;
    result.direct_trips.push_back(line_id);

    std::map<int, std::size_t> index_of;
    for (std::size_t i = 0; i < settled.lines_.size(); ++i) {
        index_of[settled.lines_[i].id] = i;
    }

    // Synchronous rounds: mark the whole failing wave dead first, then
    // redistribute each failed line's load among the lines still alive.
    std::vector<int> failing{line_id};
    bool first_round = true;
    while (!failing.empty()) {
        ++result.rounds;
        for (int id : failing) {
            settled.lines_[index_of[id]].alive = false;
            if (!first_round) result.cascaded_failures.push_back(id);
        }
        for (int id : failing) {
            Line& failed = settled.lines_[index_of[id]];
            std::vector<std::size_t> receivers;
            for (std::size_t i = 0; i < settled.lines_.size(); ++i) {
                const Line& l = settled.lines_[i];
                if (!l.alive) continue;
                if (l.from_bus == failed.from_bus || l.to_bus == failed.from_bus ||
                    l.from_bus == failed.to_bus || l.to_bus == failed.to_bus) {
                    receivers.push_back(i);
                }
            }
            if (receivers.empty()) {
                result.shed_mw += failed.load_mw;
            } else {
                const double share = failed.load_mw / static_cast<double>(receivers.size());
                for (std::size_t i : receivers) settled.lines_[i].load_mw += share;
            }
            failed.load_mw = 0.0;
        }
        failing.clear();
        for (const Line& l : settled.lines_) {
            if (l.alive && l.load_mw >= l.capacity_mw) failing.push_back(l.id);
        }
        std::sort(failing.begin(), failing.end());
        first_round = false;
    }

    const double before = grid.total_line_load_mw();
    result.surviving_load_fraction =
        before > 0.0 ? settled.total_line_load_mw() / before : 1.0;
    result.collapsed = settled.is_collapsed(collapse_threshold);
    return {std::move(settled), std::move(result)};
}

std::string cascade_to_json(const CascadeResult& result) {
    nlohmann::json doc;
    doc["direct_trips"] = result.direct_trips;
    doc["cascaded_failures"] = result.cascaded_failures;
    doc["rounds"] = result.rounds;
    doc["shed_mw"] = result.shed_mw;
    doc["surviving_load_fraction"] = result.surviving_load_fraction;
    doc["collapsed"] = result.collapsed;
    return doc.dump(2);
}

CascadeResult cascade_from_json(const std::string& text) {
    auto doc = nlohmann::json::parse(text);
    CascadeResult out;
    out.direct_trips = doc.at("direct_trips").get<std::vector<int>>();
    out.cascaded_failures = doc.at("cascaded_failures").get<std::vector<int>>();
    out.rounds = doc.at("rounds").get<int>();
    out.shed_mw = doc.at("shed_mw").get<double>();
    out.surviving_load_fraction = doc.at("surviving_load_fraction").get<double>();
    out.collapsed = doc.at("collapsed").get<bool>();
    return out;
}

std::string_view rts79_bus_csv() { return detail::kRts79BusCsv; }
std::string_view rts79_line_csv() { return detail::kRts79LineCsv; }

void verify_rts79_checksums(std::string_view bus_csv, std::string_view line_csv) {
    if (fnv1a64(bus_csv) != kBusChecksum) {
        throw IntegrityError("embedded RTS-79 bus data failed checksum");
    }
    if (fnv1a64(line_csv) != kLineChecksum) {
        throw IntegrityError("embedded RTS-79 line data failed checksum");
    }
}

PowerGrid load_rts79(double loading_factor) {
    verify_rts79_checksums(detail::kRts79BusCsv, detail::kRts79LineCsv);
    return PowerGrid::from_csv(detail::kRts79BusCsv, detail::kRts79LineCsv, loading_factor);
}

}  // namespace casim::grid
