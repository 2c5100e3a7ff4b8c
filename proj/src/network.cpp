#include "oos/network.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "oos/errors.hpp"

namespace oos {

int StaticNetwork::node_id(const std::string& id) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return static_cast<int>(i);
    return -1;
}

namespace {

// Phasing delta-V for a directed orbital pair, or no value when the
// transfer cannot be flown within one spaceflight step.
struct PairCost {
    bool feasible = false;
    double delta_v = 0.0;
    double alpha = 0.0;
};

PairCost pair_cost(const Scenario& sc, double from_lon, double to_lon,
                   double tof_max_s) {
    PairCost pc;
    pc.alpha = transfer_alpha_rad(from_lon, to_lon);
    try {
        PhasingSolution sol = solve_phasing(pc.alpha, sc.geometry, tof_max_s);
        pc.feasible = true;
        pc.delta_v = sol.delta_v_kms;
    } catch (const NoFeasibleTransfer&) {
        pc.feasible = false;
    }
    return pc;
}

}  // namespace

StaticNetwork build_static(const Scenario& sc) {
    StaticNetwork net;

    std::unordered_set<std::string> seen;
    auto add_node = [&](Node n) {
        if (!seen.insert(n.id).second)
            throw ScenarioError("duplicate node id '" + n.id + "'");
        net.nodes.push_back(std::move(n));
        return static_cast<int>(net.nodes.size() - 1);
    };

    std::vector<int> earth_ids, orbital_ids;
    for (const auto& e : sc.earth_nodes)
        earth_ids.push_back(add_node({e, NodeKind::Earth, 0.0, e, -1}));
    for (const auto& p : sc.parking_nodes)
        orbital_ids.push_back(
            add_node({p.name, NodeKind::Parking, p.longitude_deg, p.name, -1}));
    for (size_t i = 0; i < sc.satellites.size(); ++i)
        orbital_ids.push_back(add_node({sc.satellites[i].name,
                                        NodeKind::Customer,
                                        sc.satellites[i].longitude_deg,
                                        sc.satellites[i].name,
                                        static_cast<int>(i)}));

    const double tof_max_s = sc.grid.dt_days * constants::seconds_per_day;

    // Directed phasing costs are shared by every servicer.
    std::unordered_map<long long, PairCost> costs;
    auto pair_key = [](int a, int b) {
        return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b);
    };
    for (int a : orbital_ids)
        for (int b : orbital_ids) {
            if (a == b) continue;
            PairCost pc = pair_cost(sc, net.nodes[a].longitude_deg,
                                    net.nodes[b].longitude_deg, tof_max_s);
            if (!pc.feasible)
                net.warnings.push_back("no feasible transfer " +
                                       net.nodes[a].id + " -> " +
                                       net.nodes[b].id + "; arc omitted");
            costs[pair_key(a, b)] = pc;
        }

    auto supplied_at_earth = [&sc](int vid) {
        for (const auto& e : sc.earth_nodes) {
            auto it = sc.initial_state.stock.find(e);
            if (it == sc.initial_state.stock.end()) continue;
            auto vit = it->second.vehicles.find(vid);
            if (vit != it->second.vehicles.end() && vit->second > 0) return true;
        }
        return false;
    };

    for (size_t v = 0; v < sc.vehicles.size(); ++v) {
        const VehicleSpec& veh = sc.vehicles[v];
        const int vid = static_cast<int>(v);
        const bool launchable =
            sc.launch.vehicle >= 0 &&
            (veh.is_launcher() || supplied_at_earth(vid));
        if (veh.is_servicer()) {
            for (int a : orbital_ids)
                for (int b : orbital_ids) {
                    if (a == b) continue;
                    const PairCost& pc = costs[pair_key(a, b)];
                    if (!pc.feasible) continue;
                    net.arcs.push_back({vid, a, b, ArcKind::Transport,
                                        pc.delta_v, pc.alpha, 0, true});
                }
            for (int a : orbital_ids)
                net.arcs.push_back(
                    {vid, a, a, ArcKind::Holdover, 0.0, 0.0, 0, true});
        } else if (veh.is_depot()) {
            for (int a : orbital_ids)
                if (net.nodes[a].kind == NodeKind::Parking)
                    net.arcs.push_back(
                        {vid, a, a, ArcKind::Holdover, 0.0, 0.0, 0, true});
        }
        if (launchable) {
            // Launch arcs: energetics folded into the $/kg launch cost.
            for (int e : earth_ids)
                for (int a : orbital_ids)
                    if (net.nodes[a].kind == NodeKind::Parking)
                        net.arcs.push_back({vid, e, a, ArcKind::Transport, 0.0,
                                            0.0, sc.launch.period_days,
                                            veh.is_launcher()});
            if (!veh.is_launcher()) {
                // Vehicles bought but not yet launched wait on the shelf.
                for (int e : earth_ids)
                    net.arcs.push_back(
                        {vid, e, e, ArcKind::Holdover, 0.0, 0.0, 0, false});
            }
        }
        if (veh.is_launcher()) {
            // Spent launchers persist at the parking node; y only.
            for (int a : orbital_ids)
                if (net.nodes[a].kind == NodeKind::Parking)
                    net.arcs.push_back(
                        {vid, a, a, ArcKind::Holdover, 0.0, 0.0, 0, false});
        }
    }
    return net;
}

StaticNetwork prune_to_demand(const StaticNetwork& net,
                              const std::vector<ServiceNeed>& needs,
                              const std::set<std::string>& occupied_nodes) {
    std::unordered_set<int> keep_sat;
    for (const auto& n : needs) keep_sat.insert(n.satellite);

    std::vector<int> remap(net.nodes.size(), -1);
    StaticNetwork out;
    out.warnings = net.warnings;
    for (size_t i = 0; i < net.nodes.size(); ++i) {
        const Node& n = net.nodes[i];
        bool keep = n.kind != NodeKind::Customer || keep_sat.count(n.satellite) ||
                    occupied_nodes.count(n.id);
        if (!keep) continue;
        remap[i] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(n);
    }
    for (const StaticArc& a : net.arcs) {
        if (remap[a.from] < 0 || remap[a.to] < 0) continue;
        StaticArc b = a;
        b.from = remap[a.from];
        b.to = remap[a.to];
        out.arcs.push_back(b);
    }
    return out;
}

int DynamicNetwork::time_index(Day t) const {
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end() || *it != t) return -1;
    return static_cast<int>(it - times.begin());
}

DynamicNetwork expand(const StaticNetwork& net, const TimeGrid& grid, Day t0,
                      int horizon_days) {
    DynamicNetwork dyn;
    dyn.base = net;
    dyn.grid = grid;
    dyn.t0 = t0;
    dyn.horizon_days = horizon_days;
    dyn.times = grid.time_nodes(t0, horizon_days);

    const Day end = t0 + horizon_days;
    for (const StaticArc& sa : net.arcs) {
        const int said = static_cast<int>(&sa - net.arcs.data());
        if (sa.kind == ArcKind::Holdover) {
            for (Day t : dyn.times) {
                if (t >= end) break;
                dyn.arcs.push_back({said, sa.vehicle, sa.from, sa.to, t,
                                    grid.next_node(t), ArcKind::Holdover, 0.0});
            }
        } else {
            for (Day t : dyn.times) {
                if (!grid.is_flight_departure(t)) continue;
                if (t + grid.dt_days > end) continue;
                if (sa.launch_period_days > 0 && t % sa.launch_period_days != 0)
                    continue;
                dyn.arcs.push_back({said, sa.vehicle, sa.from, sa.to, t,
                                    t + grid.dt_days, ArcKind::Transport,
                                    sa.delta_v_kms});
            }
        }
    }

    dyn.out_arcs.assign(net.nodes.size() * dyn.times.size(), {});
    dyn.in_arcs.assign(net.nodes.size() * dyn.times.size(), {});
    for (size_t i = 0; i < dyn.arcs.size(); ++i) {
        const DynArc& a = dyn.arcs[i];
        const int dep = dyn.time_index(a.depart);
        const int arr = dyn.time_index(a.arrive);
        if (dep < 0 || arr < 0)
            throw ModelBuildError("arc endpoint off the time grid");
        dyn.out_arcs[dyn.nt_slot(a.from, dep)].push_back(static_cast<int>(i));
        dyn.in_arcs[dyn.nt_slot(a.to, arr)].push_back(static_cast<int>(i));
    }
    return dyn;
}

void write_edge_list(const DynamicNetwork& net, std::ostream& out) {
    out << "# vehicle from to kind depart arrive delta_v_kms\n";
    for (const DynArc& a : net.arcs)
        out << a.vehicle << ' ' << net.base.nodes[a.from].id << ' '
            << net.base.nodes[a.to].id << ' '
            << (a.is_holdover() ? "holdover" : "transport") << ' ' << a.depart
            << ' ' << a.arrive << ' ' << a.delta_v_kms << '\n';
}

}  // namespace oos
