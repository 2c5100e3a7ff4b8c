#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "oos/horizon.hpp"
#include "oos/model.hpp"
#include "oos/network.hpp"
#include "oos/solve.hpp"

namespace testkit {

using namespace oos;

struct TinyOpts {
    int customers = 2;
    int servicers = 1;
    bool with_launcher = false;
    int dt = 1;
    int interval = 10;
    int steps = 2;
    int horizon = 30;
    double fuel_stock_kg = 40000.0;
    double mono_stock_kg = 600.0;
    int spare_stock = 20;
    double tank_kg = 1000.0;
    double servicer_ops_usd_day = 13000.0;
    double depot_ops_usd_day = 13000.0;
    double sk_kg_day = 0.14;
};

// Commodity ids in the tiny scenario.
inline constexpr int kBiprop = 0;
inline constexpr int kMonoprop = 1;
inline constexpr int kSpare = 2;
inline constexpr int kTool = 3;

// Service type ids.
inline constexpr int kQuick = 0;    // 10 days, no delivery
inline constexpr int kRefuel = 1;   // 30 days, delivers 200 kg monoprop
inline constexpr int kRepair = 2;   // 30 days, delivers 1 spare

/// Parking node at 170W with a depot; customers spread east of it; every
/// servicer carries the shared tool kind so the exhaustive oracle's tool
/// allocation is unambiguous. Launch-free unless asked otherwise.
inline Scenario make_tiny(const TinyOpts& o = {}) {
    Scenario sc;
    sc.name = "tiny";
    sc.grid = TimeGrid{o.dt, o.interval, o.steps};
    sc.horizons = {o.horizon, o.horizon, o.horizon};

    sc.commodities = {
        {"bipropellant", CommodityClass::Continuous, 1.0, 180.0, false},
        {"monopropellant", CommodityClass::Continuous, 1.0, 230.0, false},
        {"spare", CommodityClass::Integer, 50.0, 1000.0, false},
        {"T1", CommodityClass::Integer, 100.0, 1000.0, true},
    };
    sc.servicer_fuel = kBiprop;
    sc.depot_fuel = kMonoprop;

    sc.parking_nodes = {{"parking", -170.0}};
    for (int c = 0; c < o.customers; ++c) {
        Satellite s;
        s.name = "sat" + std::to_string(c + 1);
        s.longitude_deg = -120.0 + 50.0 * c;
        s.wet_mass_kg = 2000.0;
        s.stationkeeping_propellant = "monopropellant";
        sc.satellites.push_back(s);
    }

    ServiceType quick;
    quick.name = "inspection";
    quick.kind = ServiceKind::Deterministic;
    quick.revenue_usd = 10e6;
    quick.delay_penalty_usd_per_day = 5000.0;
    quick.duration_days = 10;
    quick.window_days = 30;
    quick.interoccurrence_days = 0.0;  // generated by hand in tests
    quick.tool_commodity = kTool;
    sc.service_types.push_back(quick);

    ServiceType refuel = quick;
    refuel.name = "refueling";
    refuel.revenue_usd = 15e6;
    refuel.delay_penalty_usd_per_day = 100000.0;
    refuel.duration_days = 30;
    refuel.demand_commodity = kMonoprop;
    refuel.demand_quantity = 200.0;
    sc.service_types.push_back(refuel);

    ServiceType repair = quick;
    repair.name = "repair";
    repair.revenue_usd = 30e6;
    repair.delay_penalty_usd_per_day = 100000.0;
    repair.duration_days = 30;
    repair.demand_commodity = kSpare;
    repair.demand_quantity = 1.0;
    sc.service_types.push_back(repair);

    for (int v = 0; v < o.servicers; ++v) {
        VehicleSpec s;
        s.name = "S" + std::to_string(v + 1);
        s.kind = VehicleKind::Servicer;
        s.dry_mass_kg = 2000.0;
        s.pdm_cost_usd = 50e6;
        s.operating_cost_usd_per_day = o.servicer_ops_usd_day;
        s.isp_s = 316.0;
        s.tank_capacity_kg = o.tank_kg;
        s.cargo_propellant_kg = 1000.0;
        s.cargo_bay_kg = 500.0;
        s.tool_slots = 1;
        s.tool_commodities = {kTool};
        sc.vehicles.push_back(s);
    }
    VehicleSpec depot;
    depot.name = "depot";
    depot.kind = VehicleKind::Depot;
    depot.dry_mass_kg = 5000.0;
    depot.pdm_cost_usd = 200e6;
    depot.operating_cost_usd_per_day = o.depot_ops_usd_day;
    depot.stationkeeping_kg_per_day = o.sk_kg_day;
    depot.storage_propellant_servicer_kg = 60000.0;
    depot.storage_propellant_customer_kg = 20000.0;
    depot.storage_spares = 100;
    depot.storage_tool_slots = 8;
    sc.vehicles.push_back(depot);

    if (o.with_launcher) {
        VehicleSpec lv;
        lv.name = "falcon";
        lv.kind = VehicleKind::LaunchVehicle;
        lv.launch_capacity_kg = 8300.0;
        sc.vehicles.push_back(lv);
        sc.launch.vehicle = sc.vehicle_id("falcon");
        sc.launch.period_days = 30;
        sc.launch.capacity_kg = 8300.0;
        sc.launch.cost_usd_per_kg = 11300.0;
    } else {
        sc.launch.vehicle = -1;
    }

    NodeStock& parking = sc.initial_state.stock["parking"];
    parking.vehicles[sc.vehicle_id("depot")] = 1;
    for (int v = 0; v < o.servicers; ++v)
        parking.vehicles[sc.vehicle_id("S" + std::to_string(v + 1))] = 1;
    parking.commodities[kBiprop] = o.fuel_stock_kg;
    parking.commodities[kMonoprop] = o.mono_stock_kg;
    parking.commodities[kSpare] = o.spare_stock;
    parking.commodities[kTool] = o.servicers;

    sc.deterministic_offsets.assign(sc.satellites.size(), std::nullopt);
    sc.validate();
    return sc;
}

inline ServiceNeed need(const Scenario& sc, const std::string& id,
                        const std::string& satellite, int type, Day at) {
    return ServiceNeed{id, sc.satellite_id(satellite), type, at};
}

/// Scenario + network + assembled model with stable addresses.
struct Built {
    Scenario sc;
    DynamicNetwork net;
    MilpModel model;

    PlanningInputs inputs() const {
        PlanningInputs in;
        in.net = &net;
        in.scenario = &sc;
        in.state = sc.initial_state;
        in.state.in_progress.clear();
        in.services = model.services;
        return in;
    }
};

inline Built build_instance(Scenario sc, const std::vector<ServiceNeed>& needs,
                            Day t0 = 0, int horizon = -1) {
    if (horizon < 0) horizon = sc.horizons.planning_days;
    std::set<std::string> occupied;
    for (const auto& [node, stock] : sc.initial_state.stock)
        for (const auto& [vid, count] : stock.vehicles)
            if (count > 0) occupied.insert(node);
    Built out;
    out.sc = std::move(sc);
    out.net = expand(prune_to_demand(build_static(out.sc), needs, occupied),
                     out.sc.grid, t0, horizon);
    PlanningInputs in;
    in.net = &out.net;
    in.scenario = &out.sc;
    in.state = out.sc.initial_state;
    std::vector<InProgressService> carry = in.state.in_progress;
    in.state.in_progress.clear();
    in.services = plan_services(needs, out.sc, out.net);
    auto fixed = plan_fixed_services(carry, out.sc, out.net);
    in.services.insert(in.services.end(), fixed.begin(), fixed.end());
    out.model = assemble(in);
    return out;
}

inline std::filesystem::path fresh_workdir(const std::string& tag) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path() /
               ("oos-test-" + tag + "-" + std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

inline Solution solve_with_driver(const MilpModel& model, const std::string& tag,
                                  double gap = 1e-6) {
    SolveRequest req;
    req.model = &model;
    req.gap = gap;
    req.time_limit_s = 120.0;
    req.workdir = fresh_workdir(tag);
    return solve_external(req);
}

}  // namespace testkit
