#include "oos/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace oos {

ResidualReport constraint_residuals(const MilpModel& model,
                                    std::span<const double> values) {
    ResidualReport rep;
    for (size_t r = 0; r < model.rows.size(); ++r) {
        double lhs = 0.0;
        for (const auto& [var, coeff] : model.entries[r])
            lhs += coeff * values[var];
        const double rhs = model.rows[r].rhs;
        double violation = 0.0;
        switch (model.rows[r].sense) {
            case RowSense::LE: violation = lhs - rhs; break;
            case RowSense::GE: violation = rhs - lhs; break;
            case RowSense::EQ: violation = std::abs(lhs - rhs); break;
        }
        if (violation > 1e-6) ++rep.violated_rows;
        if (violation > rep.max_violation) {
            rep.max_violation = violation;
            rep.worst_row = static_cast<int>(r);
        }
    }
    rep.max_violation = std::max(rep.max_violation, 0.0);
    return rep;
}

double objective_value(const MilpModel& model, std::span<const double> values) {
    double j = 0.0;
    for (const auto& [var, coeff] : model.objective) j += coeff * values[var];
    return j;
}

CostBreakdown reaccount(const MilpModel& model, const DynamicNetwork& net,
                        const Scenario& sc, std::span<const double> values) {
    CostBreakdown out;

    for (size_t s = 0; s < model.services.size(); ++s) {
        const PlannedService& svc = model.services[s];
        for (size_t v = 0; v < sc.vehicles.size(); ++v)
            for (Day tau : svc.window) {
                int h = model.find_h(static_cast<int>(s), static_cast<int>(v), tau);
                if (h < 0 || values[h] < 0.5) continue;
                out.revenues += svc.revenue_usd;
                out.delay += svc.delay_usd_per_day * (tau - svc.occurrence);
            }
    }

    for (size_t aid = 0; aid < net.arcs.size(); ++aid) {
        const DynArc& a = net.arcs[aid];
        const VehicleSpec& veh = sc.vehicles[a.vehicle];
        const int id = static_cast<int>(aid);
        const bool from_earth = net.base.nodes[a.from].kind == NodeKind::Earth;
        const bool to_orbital = net.base.is_orbital(a.to);
        const int y = model.find_y(id);
        const double yv = y >= 0 ? values[y] : 0.0;

        if (from_earth && to_orbital) {
            for (int k = 0; k < static_cast<int>(sc.commodities.size()); ++k) {
                int xo = model.find_x_out(id, k);
                if (xo < 0) continue;
                const CommoditySpec& com = sc.commodities[k];
                const double mass = com.mass_of(values[xo]);
                out.pdm += com.pdm_usd_per_kg * mass;
                out.launch += sc.launch.cost_usd_per_kg * mass;
            }
            out.pdm += veh.pdm_cost_usd * yv;
            out.launch += sc.launch.cost_usd_per_kg * veh.dry_mass_kg * yv;
        } else if (!from_earth) {
            if (veh.is_depot() && a.is_holdover())
                out.depots += veh.operating_cost_usd_per_day *
                              a.duration_days() * yv;
            else if (veh.is_servicer())
                out.servicers += veh.operating_cost_usd_per_day *
                                 a.duration_days() * yv;
        }
    }
    return out;
}

bool dispatch_consistent(const MilpModel& model,
                         std::span<const double> values) {
    for (size_t i = 0; i < model.vars.size(); ++i) {
        const VarInfo& var = model.vars[i];
        if (var.kind != VarKind::DispatchB) continue;
        const PlannedService& svc = model.services[var.service];
        double expected = 0.0;
        for (size_t w = 0; w < svc.window.size(); ++w) {
            const auto& occ = svc.occupancy[w];
            if (!std::binary_search(occ.begin(), occ.end(), var.time)) continue;
            int h = model.find_h(var.service, var.vehicle, svc.window[w]);
            if (h >= 0) expected += values[h];
        }
        if (values[i] != expected) return false;
    }
    return true;
}

std::vector<std::string> validate_schedule(const MilpModel& model,
                                           const DynamicNetwork& net,
                                           std::span<const double> values) {
    std::vector<std::string> problems;

    // Window membership and single assignment per service.
    for (size_t s = 0; s < model.services.size(); ++s) {
        const PlannedService& svc = model.services[s];
        int assigned = 0;
        for (size_t i = 0; i < model.vars.size(); ++i) {
            const VarInfo& var = model.vars[i];
            if (var.kind != VarKind::AssignH ||
                var.service != static_cast<int>(s) || values[i] < 0.5)
                continue;
            ++assigned;
            if (std::find(svc.window.begin(), svc.window.end(), var.time) ==
                svc.window.end())
                problems.push_back("service " + svc.id +
                                   " starts outside its window at t=" +
                                   std::to_string(var.time));
        }
        if (assigned > 1)
            problems.push_back("service " + svc.id + " scheduled " +
                               std::to_string(assigned) + " times");
    }

    // At most one service per satellite per step; servicer pinned there.
    std::map<std::pair<int, Day>, int> active;
    for (size_t i = 0; i < model.vars.size(); ++i) {
        const VarInfo& var = model.vars[i];
        if (var.kind != VarKind::DispatchB || values[i] < 0.5) continue;
        const PlannedService& svc = model.services[var.service];
        if (++active[{svc.node, var.time}] > 1)
            problems.push_back("two services underway at " +
                               net.base.nodes[svc.node].id + " t=" +
                               std::to_string(var.time));
        bool pinned = false;
        for (size_t aid = 0; aid < net.arcs.size(); ++aid) {
            const DynArc& a = net.arcs[aid];
            if (a.is_holdover() && a.vehicle == var.vehicle &&
                a.from == svc.node && a.depart == var.time) {
                int y = model.find_y(static_cast<int>(aid));
                if (y >= 0 && values[y] > 0.5) pinned = true;
            }
        }
        if (!pinned)
            problems.push_back("servicer " + std::to_string(var.vehicle) +
                               " not holding at " + net.base.nodes[svc.node].id +
                               " during service " + svc.id + " t=" +
                               std::to_string(var.time));
    }

    // Capacity respect is already a residual check; replicate the launch
    // capacity here because it is the one users most often break by hand.
    ResidualReport rr = constraint_residuals(model, values);
    if (!rr.ok())
        problems.push_back("constraint residual " +
                           std::to_string(rr.max_violation) + " on row " +
                           (rr.worst_row >= 0 ? model.rows[rr.worst_row].tag
                                              : std::string("?")));
    return problems;
}

}  // namespace oos
