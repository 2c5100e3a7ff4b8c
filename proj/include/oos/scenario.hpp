#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oos/astro.hpp"
#include "oos/demand.hpp"
#include "oos/fleet.hpp"
#include "oos/state.hpp"
#include "oos/timegrid.hpp"

namespace oos {

struct LaunchSpec {
    int period_days = 30;
    double capacity_kg = 8300.0;
    double cost_usd_per_kg = 11300.0;
    int vehicle = -1;  // launch-vehicle id
};

struct ParkingSpec {
    std::string name;
    double longitude_deg = 0.0;
};

struct SolverSpec {
    std::string command;  // template with {mps} {sol} {gap} {timelimit} {seed}
    double gap = 0.01;
    double time_limit_s = 7200.0;
};

/// Full study definition: fleet, market, network geometry, time grid,
/// horizons, initial deployment, and solver settings. Mirrors the JSON
/// schema documented in the README.
struct Scenario {
    std::string name;
    OrbitGeometry geometry;
    TimeGrid grid;
    HorizonConfig horizons;
    LaunchSpec launch;
    SolverSpec solver;

    std::vector<std::string> earth_nodes{"earth"};
    std::vector<ParkingSpec> parking_nodes;
    std::vector<Satellite> satellites;
    std::vector<ServiceType> service_types;
    std::vector<CommoditySpec> commodities;
    std::vector<VehicleSpec> vehicles;

    int servicer_fuel = -1;  // bipropellant commodity id
    int depot_fuel = -1;     // monopropellant commodity id

    InfrastructureState initial_state;
    std::vector<std::optional<double>> deterministic_offsets;  // per satellite

    int commodity_id(const std::string& name) const;
    int vehicle_id(const std::string& name) const;
    int satellite_id(const std::string& name) const;
    int service_type_id(const std::string& name) const;

    /// Cross-reference and unit validation; throws ScenarioError with the
    /// offending field path.
    void validate() const;
};

Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& json_text);
std::string scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Purchase + launch cost of everything pre-deployed at orbital nodes;
/// the architecture's value at day 0 is its negation.
double initial_investment_usd(const Scenario& s);

}  // namespace oos
