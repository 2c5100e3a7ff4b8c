#include "oos/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oos/errors.hpp"

namespace oos {

using nlohmann::json;

void HorizonConfig::validate() const {
    if (planning_days <= 0 || control_days <= 0 || scheduling_days <= 0)
        throw ScenarioError("horizons: all lengths must be positive");
    if (!(control_days <= planning_days && planning_days <= scheduling_days))
        throw ScenarioError("horizons: require CH <= PH <= SH");
}

int Scenario::commodity_id(const std::string& name) const {
    for (size_t i = 0; i < commodities.size(); ++i)
        if (commodities[i].name == name) return static_cast<int>(i);
    return -1;
}

int Scenario::vehicle_id(const std::string& name) const {
    for (size_t i = 0; i < vehicles.size(); ++i)
        if (vehicles[i].name == name) return static_cast<int>(i);
    return -1;
}

int Scenario::satellite_id(const std::string& name) const {
    for (size_t i = 0; i < satellites.size(); ++i)
        if (satellites[i].name == name) return static_cast<int>(i);
    return -1;
}

int Scenario::service_type_id(const std::string& name) const {
    for (size_t i = 0; i < service_types.size(); ++i)
        if (service_types[i].name == name) return static_cast<int>(i);
    return -1;
}

void Scenario::validate() const {
    geometry.validate();
    grid.validate();
    horizons.validate();
    if (horizons.planning_days % grid.interval_days != 0 ||
        horizons.control_days % grid.interval_days != 0 ||
        horizons.scheduling_days % grid.interval_days != 0)
        throw ScenarioError("horizons: PH, CH, SH must be multiples of T");

    if (earth_nodes.empty()) throw ScenarioError("earth_nodes: need at least one");
    if (parking_nodes.empty())
        throw ScenarioError("parking_nodes: need at least one");

    std::set<std::string> ids;
    auto claim = [&ids](const std::string& id, const char* where) {
        if (id.empty()) throw ScenarioError(std::string(where) + ": empty id");
        if (!ids.insert(id).second)
            throw ScenarioError(std::string(where) + ": duplicate node id '" +
                                id + "'");
    };
    for (const auto& e : earth_nodes) claim(e, "earth_nodes");
    for (const auto& p : parking_nodes) {
        claim(p.name, "parking_nodes");
        if (p.longitude_deg < -180.0 || p.longitude_deg >= 180.0)
            throw ScenarioError("parking_nodes." + p.name +
                                ".longitude_deg: outside [-180, 180)");
    }
    for (const auto& s : satellites) {
        claim(s.name, "satellites");
        if (s.longitude_deg < -180.0 || s.longitude_deg >= 180.0)
            throw ScenarioError("satellites." + s.name +
                                ".longitude_deg: outside [-180, 180)");
    }

    for (const auto& c : commodities) {
        if (c.unit_mass_kg < 0.0 || c.pdm_usd_per_kg < 0.0)
            throw ScenarioError("commodities." + c.name +
                                ": masses and costs must be >= 0");
        if (c.is_tool && c.cls != CommodityClass::Integer)
            throw ScenarioError("commodities." + c.name +
                                ": tools must be integer commodities");
    }
    if (servicer_fuel < 0 ||
        servicer_fuel >= static_cast<int>(commodities.size()) ||
        commodities[servicer_fuel].cls != CommodityClass::Continuous)
        throw ScenarioError("servicer_fuel: must name a continuous commodity");
    if (depot_fuel < 0 || depot_fuel >= static_cast<int>(commodities.size()) ||
        commodities[depot_fuel].cls != CommodityClass::Continuous)
        throw ScenarioError("depot_fuel: must name a continuous commodity");

    int launchers = 0;
    for (const auto& v : vehicles) {
        const std::string where = "vehicles." + v.name;
        if (v.dry_mass_kg < 0.0 || v.pdm_cost_usd < 0.0 ||
            v.operating_cost_usd_per_day < 0.0)
            throw ScenarioError(where + ": masses and costs must be >= 0");
        if (v.is_servicer()) {
            if (!(v.isp_s > 0.0))
                throw ScenarioError(where + ".isp_s: servicers need Isp > 0");
            if (v.tank_capacity_kg < 0.0 || v.cargo_propellant_kg < 0.0 ||
                v.cargo_bay_kg < 0.0 || v.tool_slots < 0)
                throw ScenarioError(where + ": capacities must be >= 0");
            if (static_cast<int>(v.tool_commodities.size()) > v.tool_slots)
                throw ScenarioError(where + ".tools: more tools than slots");
        }
        for (int tc : v.tool_commodities)
            if (tc < 0 || tc >= static_cast<int>(commodities.size()) ||
                !commodities[tc].is_tool)
                throw ScenarioError(where + ".tools: unknown tool commodity");
        if (v.is_launcher()) ++launchers;
    }
    if (launch.vehicle >= 0) {
        if (launch.vehicle >= static_cast<int>(vehicles.size()) ||
            !vehicles[launch.vehicle].is_launcher())
            throw ScenarioError("launch.vehicle: must name a launch vehicle");
        if (launch.period_days <= 0 || launch.capacity_kg <= 0.0)
            throw ScenarioError("launch: period and capacity must be positive");
        if (launch.period_days % grid.interval_days != 0)
            throw ScenarioError(
                "launch.period_days: must be a multiple of the service "
                "interval so launch windows fall on flight steps");
    } else if (launchers > 0) {
        throw ScenarioError("launch.vehicle: required when a launch vehicle exists");
    }

    for (const auto& t : service_types) {
        const std::string where = "service_types." + t.name;
        if (t.revenue_usd < 0.0 || t.delay_penalty_usd_per_day < 0.0)
            throw ScenarioError(where + ": revenues and fees must be >= 0");
        if (t.duration_days <= 0)
            throw ScenarioError(where + ".duration_days: must be positive");
        if (t.window_days < 0)
            throw ScenarioError(where + ".window_days: must be >= 0");
        if (t.tool_commodity < 0 ||
            t.tool_commodity >= static_cast<int>(commodities.size()) ||
            !commodities[t.tool_commodity].is_tool)
            throw ScenarioError(where + ".tool: must name a tool commodity");
        if (t.demand_quantity != 0.0 &&
            (t.demand_commodity < 0 ||
             t.demand_commodity >= static_cast<int>(commodities.size())))
            throw ScenarioError(where + ".delivers.commodity: unknown");
        if (t.demand_quantity < 0.0)
            throw ScenarioError(where + ".delivers.quantity: must be >= 0");
        if (t.demand_quantity != 0.0 && t.demand_commodity >= 0 &&
            commodities[t.demand_commodity].cls == CommodityClass::Integer &&
            t.demand_quantity != std::floor(t.demand_quantity))
            throw ScenarioError(where +
                                ".delivers.quantity: integer commodity "
                                "requires a whole-number quantity");
    }

    for (const auto& [node, stock] : initial_state.stock) {
        if (!ids.count(node))
            throw ScenarioError("initial_state.placements: unknown node '" +
                                node + "'");
        for (const auto& [vid, count] : stock.vehicles) {
            if (vid < 0 || vid >= static_cast<int>(vehicles.size()))
                throw ScenarioError("initial_state: unknown vehicle id");
            if (count < 0) throw ScenarioError("initial_state: negative count");
        }
        for (const auto& [cid, qty] : stock.commodities) {
            if (cid < 0 || cid >= static_cast<int>(commodities.size()))
                throw ScenarioError("initial_state: unknown commodity id");
            if (qty < 0.0) throw ScenarioError("initial_state: negative quantity");
        }
    }
    for (const auto& ip : initial_state.in_progress) {
        if (ip.vehicle < 0 || ip.vehicle >= static_cast<int>(vehicles.size()) ||
            !vehicles[ip.vehicle].is_servicer())
            throw ScenarioError("initial_state.in_progress: needs a servicer");
        if (satellite_id(ip.node) < 0)
            throw ScenarioError(
                "initial_state.in_progress: node must be a customer satellite");
        auto it = initial_state.stock.find(ip.node);
        if (it == initial_state.stock.end() ||
            !it->second.vehicles.count(ip.vehicle) ||
            it->second.vehicles.at(ip.vehicle) < 1)
            throw ScenarioError(
                "initial_state.in_progress: servicer must be placed at the "
                "service's customer node");
    }
}

namespace {

ServiceKind parse_kind(const std::string& s, const std::string& where) {
    if (s == "deterministic") return ServiceKind::Deterministic;
    if (s == "random") return ServiceKind::Random;
    throw ScenarioError(where + ".kind: expected deterministic|random");
}

VehicleKind parse_vehicle_kind(const std::string& s, const std::string& where) {
    if (s == "servicer") return VehicleKind::Servicer;
    if (s == "depot") return VehicleKind::Depot;
    if (s == "launch_vehicle") return VehicleKind::LaunchVehicle;
    throw ScenarioError(where + ".kind: expected servicer|depot|launch_vehicle");
}

template <typename T>
T require(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        throw ScenarioError(where + "." + key + ": missing required field");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ScenarioError(where + "." + key + ": wrong type");
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
    }

    Scenario s;
    s.name = get_or<std::string>(j, "name", "scenario");

    if (j.contains("geometry")) {
        const json& g = j["geometry"];
        s.geometry.r_km = get_or(g, "orbit_radius_km", s.geometry.r_km);
        s.geometry.r_crit_km =
            get_or(g, "forbidden_zone_radius_km", s.geometry.r_crit_km);
        s.geometry.mu = get_or(g, "mu_km3_s2", s.geometry.mu);
        s.geometry.g0 = get_or(g, "g0_m_s2", s.geometry.g0);
    }

    const json& tg = j.contains("time_grid") ? j["time_grid"] : json::object();
    s.grid.dt_days = get_or(tg, "spaceflight_step_days", s.grid.dt_days);
    s.grid.interval_days = get_or(tg, "service_interval_days", s.grid.interval_days);
    s.grid.flight_steps = get_or(tg, "flight_steps_per_interval", s.grid.flight_steps);

    if (j.contains("horizons")) {
        const json& h = j["horizons"];
        s.horizons.planning_days = require<int>(h, "planning_days", "horizons");
        s.horizons.control_days =
            get_or(h, "control_days", s.horizons.planning_days);
        s.horizons.scheduling_days =
            get_or(h, "scheduling_days", s.horizons.planning_days);
    }

    if (j.contains("solver")) {
        const json& sv = j["solver"];
        s.solver.command = get_or<std::string>(sv, "command", "");
        s.solver.gap = get_or(sv, "gap", s.solver.gap);
        s.solver.time_limit_s = get_or(sv, "time_limit_s", s.solver.time_limit_s);
    }

    s.earth_nodes = get_or<std::vector<std::string>>(j, "earth_nodes", {"earth"});
    for (const json& p : get_or<json>(j, "parking_nodes", json::array())) {
        ParkingSpec ps;
        ps.name = require<std::string>(p, "name", "parking_nodes");
        ps.longitude_deg = require<double>(p, "longitude_deg",
                                           "parking_nodes." + ps.name);
        s.parking_nodes.push_back(ps);
    }

    for (const json& c : get_or<json>(j, "commodities", json::array())) {
        CommoditySpec cs;
        cs.name = require<std::string>(c, "name", "commodities");
        const std::string where = "commodities." + cs.name;
        const std::string cls = require<std::string>(c, "class", where);
        if (cls == "continuous") cs.cls = CommodityClass::Continuous;
        else if (cls == "integer") cs.cls = CommodityClass::Integer;
        else throw ScenarioError(where + ".class: expected continuous|integer");
        cs.unit_mass_kg = get_or(c, "unit_mass_kg", 1.0);
        cs.pdm_usd_per_kg = get_or(c, "pdm_usd_per_kg", 0.0);
        cs.is_tool = get_or(c, "tool", false);
        s.commodities.push_back(cs);
    }

    auto resolve_commodity = [&s](const std::string& name,
                                  const std::string& where) {
        int id = s.commodity_id(name);
        if (id < 0) throw ScenarioError(where + ": unknown commodity '" + name + "'");
        return id;
    };

    s.servicer_fuel = resolve_commodity(
        get_or<std::string>(j, "servicer_fuel", "bipropellant"), "servicer_fuel");
    s.depot_fuel = resolve_commodity(
        get_or<std::string>(j, "depot_fuel", "monopropellant"), "depot_fuel");

    for (const json& v : get_or<json>(j, "vehicles", json::array())) {
        VehicleSpec vs;
        vs.name = require<std::string>(v, "name", "vehicles");
        const std::string where = "vehicles." + vs.name;
        vs.kind = parse_vehicle_kind(require<std::string>(v, "kind", where), where);
        vs.dry_mass_kg = get_or(v, "dry_mass_kg", 0.0);
        vs.pdm_cost_usd = get_or(v, "manufacturing_cost_usd_m", 0.0) * 1e6;
        vs.operating_cost_usd_per_day = get_or(v, "operating_cost_usd_per_day", 0.0);
        vs.isp_s = get_or(v, "isp_s", 0.0);
        vs.tank_capacity_kg = get_or(v, "tank_capacity_kg", 0.0);
        vs.cargo_propellant_kg = get_or(v, "cargo_propellant_kg", 0.0);
        vs.cargo_bay_kg = get_or(v, "cargo_bay_kg", 0.0);
        vs.tool_slots = get_or(v, "tool_slots", 0);
        for (const std::string& tn :
             get_or<std::vector<std::string>>(v, "tools", {}))
            vs.tool_commodities.push_back(resolve_commodity(tn, where + ".tools"));
        if (vs.tool_slots == 0)
            vs.tool_slots = static_cast<int>(vs.tool_commodities.size());
        vs.stationkeeping_kg_per_day = get_or(v, "stationkeeping_kg_per_day", 0.0);
        if (v.contains("storage")) {
            const json& st = v["storage"];
            vs.storage_propellant_servicer_kg =
                get_or(st, "servicer_propellant_kg", 0.0);
            vs.storage_propellant_customer_kg =
                get_or(st, "customer_propellant_kg", 0.0);
            vs.storage_spares = get_or(st, "spares", 0);
            vs.storage_tool_slots = get_or(st, "tool_slots", 0);
        }
        vs.launch_capacity_kg = get_or(v, "launch_capacity_kg", 0.0);
        s.vehicles.push_back(vs);
    }

    if (j.contains("launch")) {
        const json& l = j["launch"];
        s.launch.period_days = get_or(l, "period_days", 30);
        s.launch.capacity_kg = get_or(l, "capacity_kg", 8300.0);
        s.launch.cost_usd_per_kg = get_or(l, "cost_usd_per_kg", 11300.0);
        const std::string lv = get_or<std::string>(l, "vehicle", "");
        if (!lv.empty()) {
            s.launch.vehicle = s.vehicle_id(lv);
            if (s.launch.vehicle < 0)
                throw ScenarioError("launch.vehicle: unknown vehicle '" + lv + "'");
        }
    }

    for (const json& sat : get_or<json>(j, "satellites", json::array())) {
        Satellite st;
        st.name = require<std::string>(sat, "name", "satellites");
        st.longitude_deg = require<double>(sat, "longitude_deg",
                                           "satellites." + st.name);
        st.wet_mass_kg = get_or(sat, "wet_mass_kg", 0.0);
        st.stationkeeping_propellant =
            get_or<std::string>(sat, "stationkeeping_propellant", "");
        s.satellites.push_back(st);
    }

    for (const json& t : get_or<json>(j, "service_types", json::array())) {
        ServiceType ts;
        ts.name = require<std::string>(t, "name", "service_types");
        const std::string where = "service_types." + ts.name;
        ts.kind = parse_kind(require<std::string>(t, "kind", where), where);
        ts.revenue_usd = require<double>(t, "revenue_usd_m", where) * 1e6;
        ts.delay_penalty_usd_per_day =
            get_or(t, "delay_penalty_usd_per_day", 0.0);
        ts.duration_days = require<int>(t, "duration_days", where);
        ts.window_days = require<int>(t, "window_days", where);
        ts.interoccurrence_days = get_or(t, "interoccurrence_days", 0.0);
        ts.tool_commodity =
            resolve_commodity(require<std::string>(t, "tool", where), where + ".tool");
        if (t.contains("delivers")) {
            const json& d = t["delivers"];
            ts.demand_commodity = resolve_commodity(
                require<std::string>(d, "commodity", where + ".delivers"),
                where + ".delivers");
            ts.demand_quantity = require<double>(d, "quantity", where + ".delivers");
        }
        s.service_types.push_back(ts);
    }

    s.deterministic_offsets.assign(s.satellites.size(), std::nullopt);
    if (j.contains("deterministic_offsets")) {
        for (const auto& [name, val] : j["deterministic_offsets"].items()) {
            int sid = s.satellite_id(name);
            if (sid < 0)
                throw ScenarioError("deterministic_offsets: unknown satellite '" +
                                    name + "'");
            s.deterministic_offsets[sid] = val.get<double>();
        }
    }

    if (j.contains("initial_state")) {
        const json& is = j["initial_state"];
        s.initial_state.date = get_or(is, "date", 0);
        for (const json& p : get_or<json>(is, "placements", json::array())) {
            const std::string node = require<std::string>(p, "node",
                                                          "initial_state.placements");
            NodeStock& ns = s.initial_state.stock[node];
            for (const auto& [vn, cnt] : get_or<json>(p, "vehicles", json::object()).items()) {
                int vid = s.vehicle_id(vn);
                if (vid < 0)
                    throw ScenarioError("initial_state.placements." + node +
                                        ".vehicles: unknown vehicle '" + vn + "'");
                ns.vehicles[vid] += cnt.get<int>();
            }
            for (const auto& [cn, qty] : get_or<json>(p, "commodities", json::object()).items())
                ns.commodities[resolve_commodity(cn, "initial_state.placements." +
                                                         node + ".commodities")] +=
                    qty.get<double>();
        }
        for (const json& ip : get_or<json>(is, "in_progress", json::array())) {
            InProgressService svc;
            svc.need_id = require<std::string>(ip, "need_id", "initial_state.in_progress");
            const std::string where = "initial_state.in_progress." + svc.need_id;
            const std::string vn = require<std::string>(ip, "vehicle", where);
            svc.vehicle = s.vehicle_id(vn);
            if (svc.vehicle < 0)
                throw ScenarioError(where + ".vehicle: unknown '" + vn + "'");
            const std::string tn = require<std::string>(ip, "service_type", where);
            svc.service_type = s.service_type_id(tn);
            if (svc.service_type < 0)
                throw ScenarioError(where + ".service_type: unknown '" + tn + "'");
            svc.start_day = get_or(ip, "start_day", 0);
            svc.node = require<std::string>(ip, "node", where);
            const Day end = require<int>(ip, "end_day", where);
            for (Day t = s.initial_state.date; t < end; t = s.grid.next_node(t))
                svc.remaining_occupancy.push_back(t);
            s.initial_state.in_progress.push_back(svc);
        }
    }

    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot open scenario file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["geometry"] = {{"orbit_radius_km", s.geometry.r_km},
                     {"forbidden_zone_radius_km", s.geometry.r_crit_km},
                     {"mu_km3_s2", s.geometry.mu},
                     {"g0_m_s2", s.geometry.g0}};
    j["time_grid"] = {{"spaceflight_step_days", s.grid.dt_days},
                      {"service_interval_days", s.grid.interval_days},
                      {"flight_steps_per_interval", s.grid.flight_steps}};
    j["horizons"] = {{"planning_days", s.horizons.planning_days},
                     {"control_days", s.horizons.control_days},
                     {"scheduling_days", s.horizons.scheduling_days}};
    j["solver"] = {{"command", s.solver.command},
                   {"gap", s.solver.gap},
                   {"time_limit_s", s.solver.time_limit_s}};
    j["earth_nodes"] = s.earth_nodes;
    j["parking_nodes"] = json::array();
    for (const auto& p : s.parking_nodes)
        j["parking_nodes"].push_back(
            {{"name", p.name}, {"longitude_deg", p.longitude_deg}});
    j["commodities"] = json::array();
    for (const auto& c : s.commodities) {
        json cj = {{"name", c.name},
                   {"class", c.cls == CommodityClass::Continuous ? "continuous"
                                                                 : "integer"},
                   {"unit_mass_kg", c.unit_mass_kg},
                   {"pdm_usd_per_kg", c.pdm_usd_per_kg}};
        if (c.is_tool) cj["tool"] = true;
        j["commodities"].push_back(cj);
    }
    j["servicer_fuel"] = s.commodities[s.servicer_fuel].name;
    j["depot_fuel"] = s.commodities[s.depot_fuel].name;
    j["vehicles"] = json::array();
    for (const auto& v : s.vehicles) {
        json vj = {{"name", v.name},
                   {"kind", v.is_servicer()   ? "servicer"
                            : v.is_depot()    ? "depot"
                                              : "launch_vehicle"},
                   {"dry_mass_kg", v.dry_mass_kg},
                   {"manufacturing_cost_usd_m", v.pdm_cost_usd / 1e6},
                   {"operating_cost_usd_per_day", v.operating_cost_usd_per_day}};
        if (v.is_servicer()) {
            vj["isp_s"] = v.isp_s;
            vj["tank_capacity_kg"] = v.tank_capacity_kg;
            vj["cargo_propellant_kg"] = v.cargo_propellant_kg;
            vj["cargo_bay_kg"] = v.cargo_bay_kg;
            vj["tool_slots"] = v.tool_slots;
            json tools = json::array();
            for (int tc : v.tool_commodities) tools.push_back(s.commodities[tc].name);
            vj["tools"] = tools;
        }
        if (v.is_depot()) {
            vj["stationkeeping_kg_per_day"] = v.stationkeeping_kg_per_day;
            vj["storage"] = {
                {"servicer_propellant_kg", v.storage_propellant_servicer_kg},
                {"customer_propellant_kg", v.storage_propellant_customer_kg},
                {"spares", v.storage_spares},
                {"tool_slots", v.storage_tool_slots}};
        }
        if (v.is_launcher()) vj["launch_capacity_kg"] = v.launch_capacity_kg;
        j["vehicles"].push_back(vj);
    }
    if (s.launch.vehicle >= 0)
        j["launch"] = {{"period_days", s.launch.period_days},
                       {"capacity_kg", s.launch.capacity_kg},
                       {"cost_usd_per_kg", s.launch.cost_usd_per_kg},
                       {"vehicle", s.vehicles[s.launch.vehicle].name}};
    j["satellites"] = json::array();
    for (const auto& sat : s.satellites)
        j["satellites"].push_back(
            {{"name", sat.name},
             {"longitude_deg", sat.longitude_deg},
             {"wet_mass_kg", sat.wet_mass_kg},
             {"stationkeeping_propellant", sat.stationkeeping_propellant}});
    j["service_types"] = json::array();
    for (const auto& t : s.service_types) {
        json tj = {{"name", t.name},
                   {"kind", t.kind == ServiceKind::Deterministic ? "deterministic"
                                                                 : "random"},
                   {"revenue_usd_m", t.revenue_usd / 1e6},
                   {"delay_penalty_usd_per_day", t.delay_penalty_usd_per_day},
                   {"duration_days", t.duration_days},
                   {"window_days", t.window_days},
                   {"interoccurrence_days", t.interoccurrence_days},
                   {"tool", s.commodities[t.tool_commodity].name}};
        if (t.demand_quantity != 0.0 && t.demand_commodity >= 0)
            tj["delivers"] = {{"commodity", s.commodities[t.demand_commodity].name},
                              {"quantity", t.demand_quantity}};
        j["service_types"].push_back(tj);
    }
    json offs = json::object();
    for (size_t i = 0; i < s.deterministic_offsets.size(); ++i)
        if (s.deterministic_offsets[i])
            offs[s.satellites[i].name] = *s.deterministic_offsets[i];
    if (!offs.empty()) j["deterministic_offsets"] = offs;

    json st;
    st["date"] = s.initial_state.date;
    st["placements"] = json::array();
    for (const auto& [node, stock] : s.initial_state.stock) {
        json pj;
        pj["node"] = node;
        json vj = json::object(), cj = json::object();
        for (const auto& [vid, n] : stock.vehicles) vj[s.vehicles[vid].name] = n;
        for (const auto& [cid, q] : stock.commodities)
            cj[s.commodities[cid].name] = q;
        pj["vehicles"] = vj;
        pj["commodities"] = cj;
        st["placements"].push_back(pj);
    }
    st["in_progress"] = json::array();
    for (const auto& ip : s.initial_state.in_progress) {
        Day end = ip.remaining_occupancy.empty()
                      ? s.initial_state.date
                      : s.grid.next_node(ip.remaining_occupancy.back());
        st["in_progress"].push_back(
            {{"need_id", ip.need_id},
             {"vehicle", s.vehicles[ip.vehicle].name},
             {"service_type", s.service_types[ip.service_type].name},
             {"start_day", ip.start_day},
             {"node", ip.node},
             {"end_day", end}});
    }
    j["initial_state"] = st;
    return j.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw ScenarioError("cannot write scenario file: " + path.string());
    out << scenario_to_json(s);
}

double initial_investment_usd(const Scenario& s) {
    double total = 0.0;
    for (const auto& [node, stock] : s.initial_state.stock) {
        bool orbital = std::find(s.earth_nodes.begin(), s.earth_nodes.end(),
                                 node) == s.earth_nodes.end();
        if (!orbital) continue;  // Earth stock is purchased on launch
        for (const auto& [vid, count] : stock.vehicles) {
            const VehicleSpec& v = s.vehicles[vid];
            total += count * (v.pdm_cost_usd +
                              s.launch.cost_usd_per_kg * v.dry_mass_kg);
        }
        for (const auto& [cid, qty] : stock.commodities) {
            const CommoditySpec& c = s.commodities[cid];
            const double mass = c.mass_of(qty);
            total += c.pdm_usd_per_kg * mass + s.launch.cost_usd_per_kg * mass;
        }
    }
    return total;
}

}  // namespace oos
