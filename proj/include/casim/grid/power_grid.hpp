#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace casim::grid {

enum class BusType { Generator, Load, Junction };

struct Bus {
    int id = 0;
    BusType type = BusType::Junction;
    double generation_mw = 0.0;
    double demand_mw = 0.0;
};

struct Line {
    int id = 0;
    int from_bus = 0;
    int to_bus = 0;
    double capacity_mw = 0.0;
    double load_mw = 0.0;
    bool alive = true;
};

/// Outcome of a line trip and the cascade it triggers.
struct CascadeResult {
    std::vector<int> direct_trips;      // tripped by the attacker, in order
    std::vector<int> cascaded_failures; // overload failures, by round then id
    int rounds = 0;                     // failure waves, including the trip itself
    double shed_mw = 0.0;               // load dropped by orphaned failures
    double surviving_load_fraction = 1.0;
    bool collapsed = false;
};

/// Transmission network with capacity-bounded lines. A line is alive while
/// its load stays strictly below capacity. Value-semantic: trip_line returns
/// a settled copy.
class PowerGrid {
public:
    PowerGrid() = default;
    PowerGrid(std::vector<Bus> buses, std::vector<Line> lines);

    /// Parse the CSV pair: bus text `id,type,gen_mw,demand_mw` and line text
    /// `id,from,to,capacity_mw`. Line loads start at loading_factor*capacity.
    static PowerGrid from_csv(std::string_view bus_csv, std::string_view line_csv,
                              double loading_factor);
    static PowerGrid from_csv_files(const std::string& bus_path,
                                    const std::string& line_path, double loading_factor);

    const std::vector<Bus>& buses() const { return buses_; }
    const std::vector<Line>& lines() const { return lines_; }
    const Line& line(int id) const;
    bool has_line(int id) const;

    double total_generation_mw() const;
    double total_demand_mw() const;
    double total_line_load_mw() const;
    std::size_t load_bus_count() const;
    std::size_t generator_bus_count() const;

    int failed_line_count() const;
    bool is_collapsed(int failure_threshold) const;
    std::vector<int> alive_line_ids() const;

private:
    std::vector<Bus> buses_;
    std::vector<Line> lines_;

    friend std::pair<PowerGrid, CascadeResult> trip_line(const PowerGrid&, int, int);
};

/// Trip an alive line and settle the cascade. The failed line's load is
/// split equally among alive lines incident to either endpoint bus; a line
/// whose load reaches its capacity fails in the next round; failures with no
/// alive incident line shed their load. Rounds repeat synchronously to a
/// fixed point. Dead or missing line -> InvalidActionError.
std::pair<PowerGrid, CascadeResult> trip_line(const PowerGrid& grid, int line_id,
                                              int collapse_threshold = 8);

/// JSON form of a cascade outcome (used inside attack reports).
std::string cascade_to_json(const CascadeResult& result);
CascadeResult cascade_from_json(const std::string& text);

/// The embedded IEEE RTS-79 instance: 24 buses, 38 lines, 17 load buses,
/// 10 generating buses, 3405 MW generation, 2850 MW peak load. Line loads
/// start at loading_factor*capacity. Checksum failure -> IntegrityError.
PowerGrid load_rts79(double loading_factor = 0.75);

/// Embedded CSV payloads (exposed for integrity tests and export).
std::string_view rts79_bus_csv();
std::string_view rts79_line_csv();
/// Verify checksums of a candidate payload pair against the frozen values.
void verify_rts79_checksums(std::string_view bus_csv, std::string_view line_csv);

}  // namespace casim::grid
