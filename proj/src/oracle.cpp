#include "oos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oos/errors.hpp"

namespace oos {

namespace {

struct VehicleStart {
    int vehicle = -1;
    int node = -1;
    double fuel = 0.0;       // aboard at t0, capped at tank
    double tool_mass = 0.0;  // tools carried for the whole horizon
    std::set<int> tool_kinds;
};

struct Pin {
    Day t;
    int node;
    int deliver_service = -1;  // cargo consumed at this pin (start date)
};

// One candidate decision for one service: declined or (vehicle, window slot).
struct Choice {
    bool declined = true;
    int vehicle = -1;
    int window_slot = -1;
};

}  // namespace

double all_declined_profit(const PlanningInputs& in) {
    const Scenario& sc = *in.scenario;
    double ops = 0.0;
    for (const auto& [node, stock] : in.state.stock) {
        if (in.net->base.node_id(node) < 0) continue;
        bool orbital = in.net->base.is_orbital(in.net->base.node_id(node));
        if (!orbital) continue;
        for (const auto& [vid, count] : stock.vehicles)
            ops += count * sc.vehicles[vid].operating_cost_usd_per_day *
                   in.net->horizon_days;
    }
    return -ops;
}

Solution solve_exhaustive(const PlanningInputs& in, const MilpModel& model,
                          const OracleBudget& budget) {
    const Scenario& sc = *in.scenario;
    const DynamicNetwork& net = *in.net;
    const std::vector<PlannedService>& services = model.services;

    // --- domain checks -----------------------------------------------------
    if (sc.launch.vehicle >= 0)
        throw InstanceTooLarge("oracle requires a launch-free instance");
    for (const auto& svc : services)
        if (svc.fixed)
            throw InstanceTooLarge("oracle does not support fixed services");
    if (static_cast<int>(services.size()) > budget.max_services)
        throw InstanceTooLarge("too many services for the oracle");
    int orbital_nodes = 0;
    for (const auto& n : net.base.nodes)
        if (n.kind != NodeKind::Earth) ++orbital_nodes;
    if (orbital_nodes > budget.max_orbital_nodes)
        throw InstanceTooLarge("too many orbital nodes for the oracle");
    if (net.horizon_days / net.grid.interval_days > budget.max_intervals)
        throw InstanceTooLarge("too many intervals for the oracle");

    std::vector<VehicleStart> starts;
    double depot_ops = 0.0, servicer_ops = 0.0;
    double fuel_stock = 0.0, sk_stock = 0.0, sk_need = 0.0;
    std::map<int, double> delivery_stock;  // commodity -> stock at depots
    int depot_fuel_node = -1;
    for (const auto& [node_id, stock] : in.state.stock) {
        const int node = net.base.node_id(node_id);
        if (node < 0) continue;
        for (const auto& [vid, count] : stock.vehicles) {
            const VehicleSpec& veh = sc.vehicles[vid];
            if (count == 0) continue;
            if (veh.is_servicer()) {
                if (count != 1)
                    throw InstanceTooLarge("oracle requires one unit per servicer");
                VehicleStart vs;
                vs.vehicle = vid;
                vs.node = node;
                starts.push_back(vs);
                servicer_ops += veh.operating_cost_usd_per_day * net.horizon_days;
            } else if (veh.is_depot()) {
                depot_ops += count * veh.operating_cost_usd_per_day *
                             net.horizon_days;
                sk_need += count * veh.stationkeeping_kg_per_day *
                           net.horizon_days;
                if (depot_fuel_node >= 0 && depot_fuel_node != node)
                    throw InstanceTooLarge("oracle supports one depot node");
                depot_fuel_node = node;
            }
        }
    }
    if (static_cast<int>(starts.size()) > budget.max_servicers)
        throw InstanceTooLarge("too many servicers for the oracle");
    std::sort(starts.begin(), starts.end(),
              [](const VehicleStart& a, const VehicleStart& b) {
                  return a.vehicle < b.vehicle;
              });

    for (const auto& [node_id, stock] : in.state.stock) {
        const int node = net.base.node_id(node_id);
        if (node < 0) continue;
        bool depot_here = false;
        int servicers_here = 0;
        for (const auto& [vid, count] : stock.vehicles) {
            if (count > 0 && sc.vehicles[vid].is_depot()) depot_here = true;
            if (count > 0 && sc.vehicles[vid].is_servicer())
                servicers_here += count;
        }
        for (const auto& [cid, qty] : stock.commodities) {
            if (qty <= 0.0) continue;
            const CommoditySpec& com = sc.commodities[cid];
            if (com.is_tool) {
                // Per-servicer claim: every co-located servicer must be able
                // to take its own copy, else allocation is ambiguous.
                if (servicers_here > 1 && qty < servicers_here)
                    throw InstanceTooLarge("ambiguous tool allocation");
                for (auto& vs : starts)
                    if (vs.node == node && !vs.tool_kinds.count(cid) &&
                        static_cast<int>(vs.tool_kinds.size()) <
                            sc.vehicles[vs.vehicle].tool_slots) {
                        vs.tool_kinds.insert(cid);
                        vs.tool_mass += com.unit_mass_kg;
                    }
            } else if (cid == sc.servicer_fuel) {
                if (depot_here)
                    fuel_stock += qty;
                else if (servicers_here == 1) {
                    for (auto& vs : starts)
                        if (vs.node == node)
                            vs.fuel = std::min(
                                qty, sc.vehicles[vs.vehicle].tank_capacity_kg);
                } else if (servicers_here > 1)
                    throw InstanceTooLarge("shared off-depot fuel stock");
            } else if (cid == sc.depot_fuel) {
                if (depot_here) sk_stock += qty;
            } else {
                if (!depot_here)
                    throw InstanceTooLarge("delivery stock away from the depot");
                delivery_stock[cid] += qty;
            }
        }
    }

    // Ample-stock assertions keep per-vehicle searches independent.
    int flight_steps_total = 0;
    for (Day t : net.times)
        if (net.grid.is_flight_departure(t) && t + net.grid.dt_days <= net.end_day())
            ++flight_steps_total;
    double tank_sum = 0.0;
    for (const auto& vs : starts)
        tank_sum += sc.vehicles[vs.vehicle].tank_capacity_kg;
    if (!starts.empty() && fuel_stock > 0.0 &&
        fuel_stock < tank_sum * flight_steps_total)
        throw InstanceTooLarge("depot fuel stock too tight for the oracle");
    std::map<int, double> delivery_need;
    for (const auto& svc : services)
        if (svc.demand_quantity > 0.0)
            delivery_need[svc.demand_commodity] += svc.demand_quantity;
    for (const auto& [cid, need] : delivery_need)
        if (delivery_stock[cid] < need * static_cast<double>(starts.size()))
            throw InstanceTooLarge("delivery stock too tight for the oracle");

    Solution sol;
    sol.values.assign(model.vars.size(), 0.0);

    if (sk_need > sk_stock + 1e-9) {
        sol.status = SolveStatus::Infeasible;
        sol.detail = "depot stationkeeping propellant runs out";
        return sol;
    }

    const double const_ops = depot_ops + servicer_ops;

    // --- per-service options ------------------------------------------------
    std::vector<std::vector<Choice>> options(services.size());
    for (size_t s = 0; s < services.size(); ++s) {
        options[s].push_back(Choice{});  // declined
        for (size_t vi = 0; vi < starts.size(); ++vi) {
            if (!starts[vi].tool_kinds.count(services[s].tool_commodity))
                continue;
            for (size_t w = 0; w < services[s].window.size(); ++w)
                options[s].push_back(
                    Choice{false, static_cast<int>(vi), static_cast<int>(w)});
        }
    }
    long combos = 1;
    for (const auto& o : options) {
        combos *= static_cast<long>(o.size());
        if (combos > budget.max_assignments)
            throw InstanceTooLarge("assignment space exceeds the budget");
    }

    // --- per-vehicle reachability under pins --------------------------------
    auto arc_exists = [&net](int veh, int from, int to) -> const StaticArc* {
        for (const auto& sa : net.base.arcs)
            if (sa.vehicle == veh && sa.from == from && sa.to == to &&
                sa.kind == ArcKind::Transport)
                return &sa;
        return nullptr;
    };

    auto vehicle_feasible = [&](const VehicleStart& vs,
                                const std::vector<Pin>& pins,
                                const std::vector<double>& cargo_mass,
                                const std::vector<int>& cargo_service) {
        // State: (node, delivered-cargo-aboard mask) -> max fuel.
        const VehicleSpec& veh = sc.vehicles[vs.vehicle];
        const int n_cargo = static_cast<int>(cargo_service.size());
        std::map<Day, std::pair<int, int>> pin_at;  // t -> (node, deliver idx)
        for (const auto& p : pins) {
            int deliver = -1;
            for (int c = 0; c < n_cargo; ++c)
                if (cargo_service[c] == p.deliver_service) deliver = c;
            auto it = pin_at.find(p.t);
            if (it != pin_at.end() && it->second.first != p.node)
                return false;  // pinned at two nodes at once
            if (it == pin_at.end())
                pin_at[p.t] = {p.node, p.deliver_service >= 0 ? deliver : -1};
            else if (deliver >= 0)
                it->second.second = deliver;
        }

        std::map<std::pair<int, int>, double> cur;
        double start_fuel = vs.fuel;
        if (depot_fuel_node == vs.node)
            start_fuel = veh.tank_capacity_kg;  // refill at the depot
        cur[{vs.node, 0}] = start_fuel;

        for (size_t ti = 0; ti + 1 < net.times.size(); ++ti) {
            const Day t = net.times[ti];
            // Pickups at the depot node, then pin filtering, then moves.
            std::map<std::pair<int, int>, double> staged;
            for (auto& [key, fuel] : cur) {
                auto [node, mask] = key;
                double f = fuel;
                if (node == depot_fuel_node) f = veh.tank_capacity_kg;
                // Enumerate cargo supersets available at the depot.
                std::vector<int> masks{mask};
                if (node == depot_fuel_node) {
                    for (int add = 0; add < (1 << n_cargo); ++add) {
                        if ((add & mask) || !add) continue;
                        masks.push_back(mask | add);
                    }
                }
                for (int m2 : masks) {
                    double cont = 0.0, bay = 0.0;
                    for (int c = 0; c < n_cargo; ++c)
                        if (m2 & (1 << c)) {
                            const PlannedService& svc = services[cargo_service[c]];
                            const CommoditySpec& com =
                                sc.commodities[svc.demand_commodity];
                            if (com.cls == CommodityClass::Continuous)
                                cont += svc.demand_quantity;
                            else
                                bay += com.unit_mass_kg * svc.demand_quantity;
                        }
                    if (cont > veh.cargo_propellant_kg + 1e-9 ||
                        bay > veh.cargo_bay_kg + 1e-9)
                        continue;
                    auto& slot = staged[{node, m2}];
                    slot = std::max(slot, f);
                }
            }

            // Pin check at t: must sit at the pinned node; deliveries consume.
            auto pin = pin_at.find(t);
            std::map<std::pair<int, int>, double> filtered;
            for (auto& [key, fuel] : staged) {
                auto [node, mask] = key;
                int new_mask = mask;
                if (pin != pin_at.end()) {
                    if (node != pin->second.first) continue;
                    int deliver = pin->second.second;
                    if (deliver >= 0) {
                        if (!(mask & (1 << deliver))) continue;
                        new_mask = mask & ~(1 << deliver);
                    }
                }
                auto& slot = filtered[{node, new_mask}];
                slot = std::max(slot, fuel);
            }

            // Transitions to the next time node.
            std::map<std::pair<int, int>, double> next;
            const bool may_fly = net.grid.is_flight_departure(t) &&
                                 (pin == pin_at.end());
            for (auto& [key, fuel] : filtered) {
                auto [node, mask] = key;
                auto& hold = next[{node, mask}];
                hold = std::max(hold, fuel);
                if (!may_fly) continue;
                double cargo = 0.0;
                for (int c = 0; c < n_cargo; ++c)
                    if (mask & (1 << c)) cargo += cargo_mass[c];
                for (const auto& n2 : net.base.nodes) {
                    const int to = static_cast<int>(&n2 - net.base.nodes.data());
                    if (to == node || n2.kind == NodeKind::Earth) continue;
                    const StaticArc* sa = arc_exists(vs.vehicle, node, to);
                    if (!sa) continue;
                    const double phi = consumption_fraction(
                        sa->delta_v_kms, veh.isp_s, sc.geometry);
                    const double wet =
                        veh.dry_mass_kg + vs.tool_mass + fuel + cargo;
                    const double arrive_fuel = fuel - phi * wet;
                    if (arrive_fuel < -1e-9) continue;
                    auto& slot = next[{to, mask}];
                    slot = std::max(slot, arrive_fuel);
                }
            }
            cur = std::move(next);
            if (cur.empty()) return false;
        }
        return !cur.empty();
    };

    // --- enumerate assignments ----------------------------------------------
    std::vector<size_t> pick(services.size(), 0);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<size_t> best_pick;
    bool any = false;

    auto evaluate = [&]() {
        // Eq. (12): one service per satellite node per step.
        std::map<std::pair<int, Day>, int> occupancy_count;
        double gain = 0.0;
        for (size_t s = 0; s < services.size(); ++s) {
            const Choice& c = options[s][pick[s]];
            if (c.declined) continue;
            const PlannedService& svc = services[s];
            const Day tau = svc.window[c.window_slot];
            for (Day t : svc.occupancy[c.window_slot])
                if (++occupancy_count[{svc.node, t}] > 1) return;
            gain += svc.revenue_usd -
                    svc.delay_usd_per_day * (tau - svc.occurrence);
        }
        const double profit = gain - const_ops;
        if (profit <= best) return;

        // Per-vehicle feasibility.
        for (size_t vi = 0; vi < starts.size(); ++vi) {
            std::vector<Pin> pins;
            std::vector<double> cargo_mass;
            std::vector<int> cargo_service;
            for (size_t s = 0; s < services.size(); ++s) {
                const Choice& c = options[s][pick[s]];
                if (c.declined || c.vehicle != static_cast<int>(vi)) continue;
                const PlannedService& svc = services[s];
                const Day tau = svc.window[c.window_slot];
                if (svc.demand_quantity > 0.0) {
                    const CommoditySpec& com =
                        sc.commodities[svc.demand_commodity];
                    cargo_mass.push_back(com.mass_of(svc.demand_quantity));
                    cargo_service.push_back(static_cast<int>(s));
                }
                for (Day t : svc.occupancy[c.window_slot])
                    pins.push_back(
                        {t, svc.node,
                         t == tau && svc.demand_quantity > 0.0
                             ? static_cast<int>(s)
                             : -1});
            }
            if (!vehicle_feasible(starts[vi], pins, cargo_mass, cargo_service))
                return;
        }
        best = profit;
        best_pick = pick;
        any = true;
    };

    while (true) {
        evaluate();
        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < options[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }

    if (!any) {
        sol.status = SolveStatus::Infeasible;
        sol.detail = "no feasible assignment (including all-declined)";
        return sol;
    }

    sol.status = SolveStatus::Optimal;
    sol.objective = best;
    for (size_t s = 0; s < services.size(); ++s) {
        const Choice& c = options[s][best_pick[s]];
        if (c.declined) continue;
        const PlannedService& svc = services[s];
        const Day tau = svc.window[c.window_slot];
        const int vid = starts[c.vehicle].vehicle;
        int h = model.find_h(static_cast<int>(s), vid, tau);
        if (h >= 0) sol.values[h] = 1.0;
        for (Day t : svc.occupancy[c.window_slot]) {
            int b = model.find_b(static_cast<int>(s), vid, t);
            if (b >= 0) sol.values[b] = 1.0;
        }
    }
    return sol;
}

}  // namespace oos
