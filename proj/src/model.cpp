#include "oos/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oos/errors.hpp"
#include "oos/numfmt.hpp"

namespace oos {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::uint64_t flow_key(VarKind kind, int arc, int commodity) {
    return (static_cast<std::uint64_t>(kind) + 1) << 56 |
           (static_cast<std::uint64_t>(arc) + 1) << 20 |
           static_cast<std::uint64_t>(commodity + 1);
}

std::uint64_t service_key(VarKind kind, int service, int vehicle, Day t) {
    return (static_cast<std::uint64_t>(kind) + 1) << 56 |
           (static_cast<std::uint64_t>(service) + 1) << 36 |
           (static_cast<std::uint64_t>(vehicle) + 1) << 28 |
           static_cast<std::uint64_t>(t + (1 << 20));
}

}  // namespace

std::string MilpModel::var_name(int i) const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "x%07d", i);
    return buf;
}

std::string MilpModel::row_name(int i) const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "c%07d", i);
    return buf;
}

int MilpModel::find_y(int arc) const {
    auto it = index.find(flow_key(VarKind::FlowYOut, arc, -1));
    return it == index.end() ? -1 : it->second;
}

int MilpModel::find_x_out(int arc, int commodity) const {
    auto it = index.find(flow_key(VarKind::FlowXOut, arc, commodity));
    return it == index.end() ? -1 : it->second;
}

int MilpModel::find_x_in(int arc, int commodity) const {
    auto it = index.find(flow_key(VarKind::FlowXIn, arc, commodity));
    return it == index.end() ? -1 : it->second;
}

int MilpModel::arrival_x(int arc, int commodity) const {
    int in = find_x_in(arc, commodity);
    return in >= 0 ? in : find_x_out(arc, commodity);
}

int MilpModel::find_h(int service, int vehicle, Day tau) const {
    auto it = index.find(service_key(VarKind::AssignH, service, vehicle, tau));
    return it == index.end() ? -1 : it->second;
}

int MilpModel::find_b(int service, int vehicle, Day t) const {
    auto it = index.find(service_key(VarKind::DispatchB, service, vehicle, t));
    return it == index.end() ? -1 : it->second;
}

std::string MilpModel::describe_var(int i, const DynamicNetwork& net) const {
    const VarInfo& v = vars[i];
    std::ostringstream os;
    auto arc_str = [&](int aid) {
        const DynArc& a = net.arcs[aid];
        os << net.base.nodes[a.from].id << "->" << net.base.nodes[a.to].id
           << "|t" << a.depart << ".." << a.arrive;
    };
    switch (v.kind) {
        case VarKind::FlowYOut:
            os << "y+[v" << net.arcs[v.arc].vehicle << "|";
            arc_str(v.arc);
            os << "]";
            break;
        case VarKind::FlowXOut:
        case VarKind::FlowXIn:
            os << (v.kind == VarKind::FlowXOut ? "x+[" : "x-[") << "v"
               << net.arcs[v.arc].vehicle << "|";
            arc_str(v.arc);
            os << "|k" << v.commodity << "]";
            break;
        case VarKind::AssignH:
            os << "h[" << services[v.service].id << "|v" << v.vehicle << "|tau"
               << v.time << "]";
            break;
        case VarKind::DispatchB:
            os << "b[" << services[v.service].id << "|v" << v.vehicle << "|t"
               << v.time << "]";
            break;
    }
    return os.str();
}

std::string MilpModel::stats() const {
    int n_int = 0, n_bin = 0;
    for (const auto& v : vars) {
        if (v.integer) ++n_int;
        if (v.integer && v.ub == 1.0) ++n_bin;
    }
    std::ostringstream os;
    os << vars.size() << " variables (" << n_int << " integer, " << n_bin
       << " binary), " << rows.size() << " rows, " << services.size()
       << " services";
    return os.str();
}

std::vector<PlannedService> plan_services(const std::vector<ServiceNeed>& needs,
                                          const Scenario& sc,
                                          const DynamicNetwork& net) {
    std::vector<PlannedService> out;
    for (const ServiceNeed& need : needs) {
        const ServiceType& type = sc.service_types[need.type];
        PlannedService ps;
        ps.id = need.id;
        ps.node = net.base.node_id(sc.satellites[need.satellite].name);
        if (ps.node < 0)
            throw ModelBuildError("need '" + need.id +
                                  "' targets a node absent from the network");
        ps.type = need.type;
        ps.occurrence = need.occurrence_day;
        ps.revenue_usd = type.revenue_usd;
        ps.delay_usd_per_day = type.delay_penalty_usd_per_day;
        ps.tool_commodity = type.tool_commodity;
        ps.demand_commodity = type.demand_commodity;
        ps.demand_quantity = type.demand_quantity;
        for (Day tau : build_window(need, type, net.grid)) {
            if (tau < net.t0 || tau >= net.end_day()) continue;
            std::vector<Day> occ_full = build_occupancy(type, tau, net.grid);
            std::vector<Day> occ;
            for (Day t : occ_full)
                if (t >= net.t0 && t < net.end_day()) occ.push_back(t);
            ps.window.push_back(tau);
            ps.occupancy.push_back(std::move(occ));
            const Day base = (tau / net.grid.interval_days) * net.grid.interval_days;
            const int spans = (type.duration_days + net.grid.interval_days - 1) /
                              net.grid.interval_days;
            ps.occupancy_end.push_back(base + spans * net.grid.interval_days);
        }
        if (ps.window.empty()) continue;  // cannot start in this horizon
        out.push_back(std::move(ps));
    }
    return out;
}

std::vector<PlannedService> plan_fixed_services(
    const std::vector<InProgressService>& in_progress, const Scenario& sc,
    const DynamicNetwork& net) {
    std::vector<PlannedService> out;
    for (const InProgressService& ip : in_progress) {
        PlannedService ps;
        ps.id = ip.need_id;
        ps.node = net.base.node_id(ip.node);
        if (ps.node < 0)
            throw ModelBuildError("in-progress service '" + ip.need_id +
                                  "' at a node absent from the network");
        ps.type = ip.service_type;
        ps.occurrence = ip.start_day;
        ps.revenue_usd = 0.0;  // realized when the service started
        ps.delay_usd_per_day = 0.0;
        ps.tool_commodity = sc.service_types[ip.service_type].tool_commodity;
        ps.demand_commodity = -1;  // delivery happened at the start
        ps.demand_quantity = 0.0;
        ps.fixed = true;
        ps.fixed_vehicle = ip.vehicle;
        ps.window.push_back(ip.start_day);
        std::vector<Day> occ;
        Day occ_end = net.t0;
        for (Day t : ip.remaining_occupancy) {
            occ_end = std::max(occ_end, net.grid.next_node(t));
            if (t >= net.t0 && t < net.end_day()) occ.push_back(t);
        }
        ps.occupancy.push_back(std::move(occ));
        ps.occupancy_end.push_back(occ_end);
        out.push_back(std::move(ps));
    }
    return out;
}

ModelBuilder::ModelBuilder(const DynamicNetwork& net, const Scenario& sc,
                           InfrastructureState state,
                           std::vector<PlannedService> services)
    : net_(net), sc_(sc), state_(std::move(state)) {
    if (state_.date != net_.t0)
        throw ModelBuildError("state date does not match the network start");
    model_.services = std::move(services);
    for (const auto& [node, stock] : state_.stock) {
        if (net_.base.node_id(node) < 0 &&
            (!stock.vehicles.empty() || !stock.commodities.empty())) {
            bool nonzero = false;
            for (auto& [v, n] : stock.vehicles) nonzero |= n > 0;
            for (auto& [k, q] : stock.commodities) nonzero |= q > 0.0;
            if (nonzero)
                throw ModelBuildError("initial stock stranded at node '" + node +
                                      "' absent from the network");
        }
    }
    for (size_t v = 0; v < sc_.vehicles.size(); ++v) {
        const VehicleSpec& veh = sc_.vehicles[v];
        if (veh.is_depot() && veh.stationkeeping_kg_per_day > 0.0) {
            StaticArc probe{static_cast<int>(v), 0, 0, ArcKind::Holdover,
                            0.0,                0.0, 0, true};
            DynArc dyn{};
            if (!commodity_allowed(probe, dyn, sc_.depot_fuel))
                throw ModelBuildError(
                    "depot '" + veh.name +
                    "' consumes stationkeeping propellant but has no storage "
                    "for it");
        }
    }
}

bool ModelBuilder::commodity_allowed(const StaticArc& sa, const DynArc&,
                                     int k) const {
    if (!sa.carries_cargo) return false;
    const VehicleSpec& veh = sc_.vehicles[sa.vehicle];
    const CommoditySpec& com = sc_.commodities[k];
    if (veh.is_launcher()) return veh.launch_capacity_kg > 0.0;
    if (veh.is_servicer()) {
        if (k == sc_.servicer_fuel) return veh.tank_capacity_kg > 0.0;
        if (com.is_tool) return veh.tool_slots > 0;
        if (com.cls == CommodityClass::Continuous)
            return veh.cargo_propellant_kg > 0.0;
        return veh.cargo_bay_kg > 0.0;
    }
    if (veh.is_depot()) {
        if (k == sc_.servicer_fuel)
            return veh.storage_propellant_servicer_kg > 0.0;
        if (com.is_tool) return veh.storage_tool_slots > 0;
        if (com.cls == CommodityClass::Continuous)
            return veh.storage_propellant_customer_kg > 0.0;
        return veh.storage_spares > 0;
    }
    return false;
}

double ModelBuilder::vehicle_total(int v) const {
    double total = 0.0;
    for (const auto& [node, stock] : state_.stock) {
        auto it = stock.vehicles.find(v);
        if (it != stock.vehicles.end()) total += it->second;
    }
    if (sc_.vehicles[v].is_launcher() && sc_.launch.vehicle == v) {
        for (Day t : net_.times)
            if (t % sc_.launch.period_days == 0 &&
                net_.grid.is_flight_departure(t) &&
                t + net_.grid.dt_days <= net_.end_day())
                total += 1.0;
    }
    return total;
}

int ModelBuilder::add_var(VarInfo info) {
    model_.vars.push_back(info);
    return static_cast<int>(model_.vars.size() - 1);
}

int ModelBuilder::add_row(RowSense sense, double rhs, std::string tag,
                          std::vector<std::pair<int, double>> terms) {
    std::map<int, double> merged;
    for (auto& [var, coeff] : terms) {
        if (var < 0 || var >= static_cast<int>(model_.vars.size()))
            throw ModelBuildError("row '" + tag + "' references an unknown variable");
        merged[var] += coeff;
    }
    std::vector<std::pair<int, double>> sorted;
    sorted.reserve(merged.size());
    for (auto& [var, coeff] : merged) {
        double snapped = snap_mps_value(coeff);
        if (snapped != 0.0) sorted.emplace_back(var, snapped);
    }
    model_.rows.push_back(RowInfo{sense, snap_mps_value(rhs), std::move(tag)});
    model_.entries.push_back(std::move(sorted));
    return static_cast<int>(model_.rows.size() - 1);
}

void ModelBuilder::create_flow_variables() {
    const int n_com = static_cast<int>(sc_.commodities.size());
    for (size_t aid = 0; aid < net_.arcs.size(); ++aid) {
        const DynArc& a = net_.arcs[aid];
        const StaticArc& sa = net_.base.arcs[a.static_arc];
        const VehicleSpec& veh = sc_.vehicles[a.vehicle];

        VarInfo y;
        y.kind = VarKind::FlowYOut;
        y.arc = static_cast<int>(aid);
        y.integer = true;
        y.ub = vehicle_total(a.vehicle);
        model_.index[flow_key(VarKind::FlowYOut, y.arc, -1)] = add_var(y);
        const double y_ub = y.ub;

        for (int k = 0; k < n_com; ++k) {
            if (!commodity_allowed(sa, a, k)) continue;
            const CommoditySpec& com = sc_.commodities[k];
            VarInfo x;
            x.kind = VarKind::FlowXOut;
            x.arc = static_cast<int>(aid);
            x.commodity = k;
            if (com.cls == CommodityClass::Integer) {
                x.integer = true;
                double cap_units = 0.0;
                if (veh.is_launcher())
                    cap_units = std::floor(veh.launch_capacity_kg /
                                           std::max(com.unit_mass_kg, 1e-9));
                else if (veh.is_servicer())
                    cap_units = com.is_tool
                                    ? veh.tool_slots
                                    : std::floor(veh.cargo_bay_kg /
                                                 std::max(com.unit_mass_kg, 1e-9));
                else
                    cap_units = com.is_tool ? veh.storage_tool_slots
                                            : veh.storage_spares;
                x.ub = cap_units * y_ub;
            }
            model_.index[flow_key(VarKind::FlowXOut, x.arc, k)] = add_var(x);

            const bool burning = veh.is_servicer() && !a.is_holdover() &&
                                 a.delta_v_kms > 0.0 && k == sc_.servicer_fuel;
            const bool stationkeeping = veh.is_depot() && a.is_holdover() &&
                                        veh.stationkeeping_kg_per_day > 0.0 &&
                                        k == sc_.depot_fuel;
            if (burning || stationkeeping) {
                VarInfo xin = x;
                xin.kind = VarKind::FlowXIn;
                model_.index[flow_key(VarKind::FlowXIn, x.arc, k)] = add_var(xin);
            }
        }
    }
    flows_done_ = true;
}

void ModelBuilder::create_service_variables() {
    for (size_t s = 0; s < model_.services.size(); ++s) {
        const PlannedService& svc = model_.services[s];
        std::vector<int> vehicles;
        if (svc.fixed) {
            vehicles.push_back(svc.fixed_vehicle);
        } else {
            for (size_t v = 0; v < sc_.vehicles.size(); ++v)
                if (sc_.vehicles[v].is_servicer())
                    vehicles.push_back(static_cast<int>(v));
        }
        for (int v : vehicles) {
            for (Day tau : svc.window) {
                VarInfo h;
                h.kind = VarKind::AssignH;
                h.service = static_cast<int>(s);
                h.vehicle = v;
                h.time = tau;
                h.integer = true;
                h.ub = 1.0;
                if (svc.fixed) h.lb = 1.0;
                model_.index[service_key(VarKind::AssignH, h.service, v, tau)] =
                    add_var(h);
            }
            std::set<Day> support;
            for (const auto& occ : svc.occupancy) support.insert(occ.begin(), occ.end());
            for (Day t : support) {
                VarInfo b;
                b.kind = VarKind::DispatchB;
                b.service = static_cast<int>(s);
                b.vehicle = v;
                b.time = t;
                b.integer = true;
                b.ub = 1.0;
                model_.index[service_key(VarKind::DispatchB, b.service, v, t)] =
                    add_var(b);
            }
        }
    }
    services_done_ = true;
}

void ModelBuilder::add_mass_balance() {
    if (!flows_done_ || !services_done_)
        throw ModelBuildError("variables must be created before rows");
    const Day end = net_.end_day();

    // (time index, node, commodity/vehicle) -> row terms
    std::map<std::tuple<int, int, int>, std::vector<std::pair<int, double>>> xt,
        yt;
    for (size_t aid = 0; aid < net_.arcs.size(); ++aid) {
        const DynArc& a = net_.arcs[aid];
        const int dep = net_.time_index(a.depart);
        const int arr = net_.time_index(a.arrive);
        const int y = model_.find_y(static_cast<int>(aid));
        yt[{dep, a.from, a.vehicle}].emplace_back(y, 1.0);
        yt[{arr, a.to, a.vehicle}].emplace_back(y, -1.0);
        for (int k = 0; k < static_cast<int>(sc_.commodities.size()); ++k) {
            int xo = model_.find_x_out(static_cast<int>(aid), k);
            if (xo < 0) continue;
            xt[{dep, a.from, k}].emplace_back(xo, 1.0);
            xt[{arr, a.to, k}].emplace_back(model_.arrival_x(static_cast<int>(aid), k),
                                            -1.0);
        }
    }
    // Scheduled services consume their delivery at the start node/date.
    for (size_t s = 0; s < model_.services.size(); ++s) {
        const PlannedService& svc = model_.services[s];
        if (svc.fixed || svc.demand_quantity <= 0.0 || svc.demand_commodity < 0)
            continue;
        for (Day tau : svc.window) {
            const int ti = net_.time_index(tau);
            for (size_t v = 0; v < sc_.vehicles.size(); ++v) {
                int h = model_.find_h(static_cast<int>(s), static_cast<int>(v), tau);
                if (h >= 0)
                    xt[{ti, svc.node, svc.demand_commodity}].emplace_back(
                        h, svc.demand_quantity);
            }
        }
    }

    auto is_launch_window = [this, end](Day t) {
        return sc_.launch.vehicle >= 0 && t % sc_.launch.period_days == 0 &&
               net_.grid.is_flight_departure(t) && t + net_.grid.dt_days <= end;
    };
    auto initial_commodity = [this](int node, int k) -> double {
        auto it = state_.stock.find(net_.base.nodes[node].id);
        if (it == state_.stock.end()) return 0.0;
        auto cit = it->second.commodities.find(k);
        return cit == it->second.commodities.end() ? 0.0 : cit->second;
    };
    auto initial_vehicle = [this](int node, int v) -> double {
        auto it = state_.stock.find(net_.base.nodes[node].id);
        if (it == state_.stock.end()) return 0.0;
        auto vit = it->second.vehicles.find(v);
        return vit == it->second.vehicles.end() ? 0.0 : vit->second;
    };

    for (auto& [key, terms] : xt) {
        auto [ti, node, k] = key;
        const Day t = net_.times[ti];
        std::ostringstream tag;
        tag << "mbx[" << net_.base.nodes[node].id << "|t" << t << "|k" << k << "]";
        if (net_.base.nodes[node].kind == NodeKind::Earth) {
            double supply = 0.0;
            if (is_launch_window(t)) {
                const CommoditySpec& com = sc_.commodities[k];
                supply = com.cls == CommodityClass::Continuous
                             ? sc_.launch.capacity_kg
                             : std::floor(sc_.launch.capacity_kg /
                                          std::max(com.unit_mass_kg, 1e-9));
            }
            add_row(RowSense::LE, supply, tag.str(), std::move(terms));
        } else {
            if (t >= end) continue;  // free terminal node
            add_row(RowSense::EQ, initial_commodity(node, k) * (t == net_.t0),
                    tag.str(), std::move(terms));
        }
    }
    for (auto& [key, terms] : yt) {
        auto [ti, node, v] = key;
        const Day t = net_.times[ti];
        std::ostringstream tag;
        tag << "mby[" << net_.base.nodes[node].id << "|t" << t << "|v" << v << "]";
        if (net_.base.nodes[node].kind == NodeKind::Earth) {
            double supply = initial_vehicle(node, v) * (t == net_.t0);
            if (v == sc_.launch.vehicle && is_launch_window(t)) supply += 1.0;
            add_row(RowSense::LE, supply, tag.str(), std::move(terms));
        } else {
            if (t >= end) continue;
            add_row(RowSense::EQ, initial_vehicle(node, v) * (t == net_.t0),
                    tag.str(), std::move(terms));
        }
    }
}

void ModelBuilder::add_flow_transformation() {
    for (size_t aid = 0; aid < net_.arcs.size(); ++aid) {
        const DynArc& a = net_.arcs[aid];
        const VehicleSpec& veh = sc_.vehicles[a.vehicle];
        const int id = static_cast<int>(aid);

        int xin = model_.find_x_in(id, sc_.servicer_fuel);
        if (veh.is_servicer() && xin >= 0) {
            // Arrival fuel = departure fuel - phi * departing wet mass.
            const double phi = snap_mps_value(
                consumption_fraction(a.delta_v_kms, veh.isp_s, sc_.geometry));
            std::vector<std::pair<int, double>> terms;
            terms.emplace_back(xin, 1.0);
            for (int k = 0; k < static_cast<int>(sc_.commodities.size()); ++k) {
                int xo = model_.find_x_out(id, k);
                if (xo < 0) continue;
                const double w = sc_.commodities[k].cls == CommodityClass::Continuous
                                     ? 1.0
                                     : sc_.commodities[k].unit_mass_kg;
                terms.emplace_back(xo, k == sc_.servicer_fuel ? phi * w - 1.0
                                                              : phi * w);
            }
            terms.emplace_back(model_.find_y(id), phi * veh.dry_mass_kg);
            std::ostringstream tag;
            tag << "q[" << id << "]";
            add_row(RowSense::EQ, 0.0, tag.str(), std::move(terms));
        }

        int xin_sk = model_.find_x_in(id, sc_.depot_fuel);
        if (veh.is_depot() && xin_sk >= 0) {
            std::vector<std::pair<int, double>> terms;
            terms.emplace_back(xin_sk, 1.0);
            terms.emplace_back(model_.find_x_out(id, sc_.depot_fuel), -1.0);
            terms.emplace_back(model_.find_y(id),
                               veh.stationkeeping_kg_per_day * a.duration_days());
            std::ostringstream tag;
            tag << "qsk[" << id << "]";
            add_row(RowSense::EQ, 0.0, tag.str(), std::move(terms));
        }
    }
}

void ModelBuilder::add_concurrency() {
    for (size_t aid = 0; aid < net_.arcs.size(); ++aid) {
        const DynArc& a = net_.arcs[aid];
        const VehicleSpec& veh = sc_.vehicles[a.vehicle];
        const int id = static_cast<int>(aid);
        const int y = model_.find_y(id);

        struct Group {
            const char* name;
            double cap;
            std::vector<std::pair<int, double>> terms;
        };
        std::vector<Group> groups;
        if (veh.is_launcher()) {
            groups.push_back({"mass", veh.launch_capacity_kg, {}});
        } else if (veh.is_servicer()) {
            groups.push_back({"tank", veh.tank_capacity_kg, {}});
            groups.push_back({"cprop", veh.cargo_propellant_kg, {}});
            groups.push_back({"bay", veh.cargo_bay_kg, {}});
            groups.push_back({"slots", static_cast<double>(veh.tool_slots), {}});
        } else {
            groups.push_back({"tank", veh.storage_propellant_servicer_kg, {}});
            groups.push_back({"cprop", veh.storage_propellant_customer_kg, {}});
            groups.push_back({"bay", static_cast<double>(veh.storage_spares), {}});
            groups.push_back(
                {"slots", static_cast<double>(veh.storage_tool_slots), {}});
        }

        for (int k = 0; k < static_cast<int>(sc_.commodities.size()); ++k) {
            int xo = model_.find_x_out(id, k);
            if (xo < 0) continue;
            const CommoditySpec& com = sc_.commodities[k];
            if (veh.is_launcher()) {
                groups[0].terms.emplace_back(
                    xo, com.cls == CommodityClass::Continuous ? 1.0
                                                              : com.unit_mass_kg);
            } else if (k == sc_.servicer_fuel) {
                groups[0].terms.emplace_back(xo, 1.0);
            } else if (com.is_tool) {
                groups[3].terms.emplace_back(xo, 1.0);
            } else if (com.cls == CommodityClass::Continuous) {
                groups[1].terms.emplace_back(xo, 1.0);
            } else {
                // Servicer spares bay is a mass capacity; depot stores count.
                groups[2].terms.emplace_back(
                    xo, veh.is_servicer() ? com.unit_mass_kg : 1.0);
            }
        }
        for (auto& g : groups) {
            if (g.terms.empty()) continue;
            g.terms.emplace_back(y, -g.cap);
            std::ostringstream tag;
            tag << "cap[" << id << "|" << g.name << "]";
            add_row(RowSense::LE, 0.0, tag.str(), std::move(g.terms));
        }
    }
}

void ModelBuilder::add_service_linking() {
    for (size_t s = 0; s < model_.services.size(); ++s) {
        const PlannedService& svc = model_.services[s];
        for (size_t v = 0; v < sc_.vehicles.size(); ++v) {
            std::set<Day> support;
            for (const auto& occ : svc.occupancy)
                support.insert(occ.begin(), occ.end());
            for (Day t : support) {
                int b = model_.find_b(static_cast<int>(s), static_cast<int>(v), t);
                if (b < 0) continue;
                std::vector<std::pair<int, double>> terms;
                terms.emplace_back(b, 1.0);
                for (size_t w = 0; w < svc.window.size(); ++w) {
                    const auto& occ = svc.occupancy[w];
                    if (!std::binary_search(occ.begin(), occ.end(), t)) continue;
                    int h = model_.find_h(static_cast<int>(s),
                                          static_cast<int>(v), svc.window[w]);
                    if (h >= 0) terms.emplace_back(h, -1.0);
                }
                std::ostringstream tag;
                tag << "link[" << svc.id << "|v" << v << "|t" << t << "]";
                add_row(RowSense::EQ, 0.0, tag.str(), std::move(terms));
            }
        }
    }
}

void ModelBuilder::add_assignment_constraints() {
    // Each service is scheduled at most once.
    for (size_t s = 0; s < model_.services.size(); ++s) {
        const PlannedService& svc = model_.services[s];
        std::vector<std::pair<int, double>> terms;
        for (size_t v = 0; v < sc_.vehicles.size(); ++v)
            for (Day tau : svc.window) {
                int h = model_.find_h(static_cast<int>(s), static_cast<int>(v), tau);
                if (h >= 0) terms.emplace_back(h, 1.0);
            }
        if (terms.empty()) continue;
        add_row(RowSense::LE, 1.0, "once[" + svc.id + "]", std::move(terms));
    }

    // At most one service underway per customer satellite per time step.
    std::map<std::pair<int, Day>, std::vector<std::pair<int, double>>> per_node;
    for (size_t s = 0; s < model_.services.size(); ++s) {
        const PlannedService& svc = model_.services[s];
        for (size_t v = 0; v < sc_.vehicles.size(); ++v) {
            std::set<Day> support;
            for (const auto& occ : svc.occupancy)
                support.insert(occ.begin(), occ.end());
            for (Day t : support) {
                int b = model_.find_b(static_cast<int>(s), static_cast<int>(v), t);
                if (b >= 0) per_node[{svc.node, t}].emplace_back(b, 1.0);
            }
        }
    }
    for (auto& [key, terms] : per_node) {
        std::ostringstream tag;
        tag << "excl[" << net_.base.nodes[key.first].id << "|t" << key.second
            << "]";
        add_row(RowSense::LE, 1.0, tag.str(), std::move(terms));
    }
}

void ModelBuilder::add_tool_presence() {
    // Holdover arc of each servicer at each customer node, by depart day.
    std::map<std::tuple<int, int, Day>, int> holdover;
    for (size_t aid = 0; aid < net_.arcs.size(); ++aid) {
        const DynArc& a = net_.arcs[aid];
        if (a.is_holdover() && sc_.vehicles[a.vehicle].is_servicer())
            holdover[{a.vehicle, a.from, a.depart}] = static_cast<int>(aid);
    }

    // (vehicle, node, t, tool) -> dispatch terms.
    std::map<std::tuple<int, int, Day, int>, std::vector<std::pair<int, double>>>
        rows;
    for (size_t s = 0; s < model_.services.size(); ++s) {
        const PlannedService& svc = model_.services[s];
        for (size_t v = 0; v < sc_.vehicles.size(); ++v) {
            std::set<Day> support;
            for (const auto& occ : svc.occupancy)
                support.insert(occ.begin(), occ.end());
            for (Day t : support) {
                int b = model_.find_b(static_cast<int>(s), static_cast<int>(v), t);
                if (b >= 0)
                    rows[{static_cast<int>(v), svc.node, t, svc.tool_commodity}]
                        .emplace_back(b, -1.0);
            }
        }
    }
    for (auto& [key, terms] : rows) {
        auto [v, node, t, tool] = key;
        auto hit = holdover.find({v, node, t});
        if (hit != holdover.end()) {
            int x = model_.find_x_out(hit->second, tool);
            if (x >= 0) terms.emplace_back(x, 1.0);
        }
        std::ostringstream tag;
        tag << "tool[v" << v << "|" << net_.base.nodes[node].id << "|t" << t
            << "|k" << tool << "]";
        add_row(RowSense::GE, 0.0, tag.str(), std::move(terms));
    }
}

void ModelBuilder::build_objective() {
    std::map<int, double> obj;

    // Revenues and delay penalties on the assignment variables.
    for (size_t s = 0; s < model_.services.size(); ++s) {
        const PlannedService& svc = model_.services[s];
        for (size_t v = 0; v < sc_.vehicles.size(); ++v)
            for (Day tau : svc.window) {
                int h = model_.find_h(static_cast<int>(s), static_cast<int>(v), tau);
                if (h < 0) continue;
                obj[h] += svc.revenue_usd -
                          svc.delay_usd_per_day * (tau - svc.occurrence);
            }
    }

    for (size_t aid = 0; aid < net_.arcs.size(); ++aid) {
        const DynArc& a = net_.arcs[aid];
        const VehicleSpec& veh = sc_.vehicles[a.vehicle];
        const int id = static_cast<int>(aid);
        const bool from_earth =
            net_.base.nodes[a.from].kind == NodeKind::Earth;
        const bool to_orbital = net_.base.is_orbital(a.to);

        if (from_earth && to_orbital) {
            // Purchase + launch, charged once when leaving Earth.
            for (int k = 0; k < static_cast<int>(sc_.commodities.size()); ++k) {
                int xo = model_.find_x_out(id, k);
                if (xo < 0) continue;
                const CommoditySpec& com = sc_.commodities[k];
                const double w = com.cls == CommodityClass::Continuous
                                     ? 1.0
                                     : com.unit_mass_kg;
                obj[xo] -= (com.pdm_usd_per_kg + sc_.launch.cost_usd_per_kg) * w;
            }
            obj[model_.find_y(id)] -=
                veh.pdm_cost_usd + sc_.launch.cost_usd_per_kg * veh.dry_mass_kg;
        } else if (!from_earth) {
            if (veh.is_depot() && a.is_holdover())
                obj[model_.find_y(id)] -=
                    veh.operating_cost_usd_per_day * a.duration_days();
            else if (veh.is_servicer())
                obj[model_.find_y(id)] -=
                    veh.operating_cost_usd_per_day * a.duration_days();
        }
    }

    model_.objective.clear();
    for (auto& [var, coeff] : obj) {
        double snapped = snap_mps_value(coeff);
        if (snapped != 0.0) model_.objective.emplace_back(var, snapped);
    }
    model_.maximize = true;
}

MilpModel ModelBuilder::finish() { return std::move(model_); }

MilpModel assemble(const PlanningInputs& in) {
    if (!in.net || !in.scenario) throw ModelBuildError("missing inputs");
    ModelBuilder b(*in.net, *in.scenario, in.state, in.services);
    b.create_flow_variables();
    b.create_service_variables();
    b.add_mass_balance();
    b.add_flow_transformation();
    b.add_concurrency();
    b.add_service_linking();
    b.add_assignment_constraints();
    b.add_tool_presence();
    b.build_objective();
    return b.finish();
}

std::string name_map_json(const MilpModel& model, const DynamicNetwork& net) {
    nlohmann::json j;
    nlohmann::json vars = nlohmann::json::object();
    for (size_t i = 0; i < model.vars.size(); ++i)
        vars[model.var_name(static_cast<int>(i))] =
            model.describe_var(static_cast<int>(i), net);
    nlohmann::json rows = nlohmann::json::object();
    for (size_t i = 0; i < model.rows.size(); ++i)
        rows[model.row_name(static_cast<int>(i))] = model.rows[i].tag;
    j["variables"] = vars;
    j["rows"] = rows;
    return j.dump(1) + "\n";
}

}  // namespace oos
