#include "oos/report.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace oos {

ScheduleReport build_report(const MilpModel& model, const DynamicNetwork& net,
                            const Scenario& sc, const Solution& sol) {
    ScheduleReport rep;
    rep.status = sol.status;
    rep.objective = sol.objective;
    rep.gap = sol.gap_achieved;
    rep.wall_time_s = sol.wall_time_s;
    if (sol.status != SolveStatus::Optimal &&
        sol.status != SolveStatus::FeasibleAtLimit)
        return rep;

    rep.breakdown = reaccount(model, net, sc, sol.values);

    // Service outcomes.
    for (size_t s = 0; s < model.services.size(); ++s) {
        const PlannedService& svc = model.services[s];
        ServiceOutcome o;
        o.id = svc.id;
        o.satellite = net.base.nodes[svc.node].id;
        o.type = sc.service_types[svc.type].name;
        o.occurrence = svc.occurrence;
        for (size_t v = 0; v < sc.vehicles.size() && !o.served; ++v)
            for (size_t w = 0; w < svc.window.size(); ++w) {
                int h = model.find_h(static_cast<int>(s), static_cast<int>(v),
                                     svc.window[w]);
                if (h < 0 || sol.values[h] < 0.5) continue;
                o.served = true;
                o.start = svc.window[w];
                o.end = svc.occupancy_end[w];
                o.vehicle = static_cast<int>(v);
                o.revenue_usd = svc.revenue_usd;
                o.delay_penalty_usd =
                    svc.delay_usd_per_day * (o.start - svc.occurrence);
                break;
            }
        rep.services.push_back(std::move(o));
    }

    // Itineraries: the active arc of each servicer at each time node.
    std::map<std::pair<int, Day>, int> active;  // (vehicle, depart) -> arc
    for (size_t aid = 0; aid < net.arcs.size(); ++aid) {
        const DynArc& a = net.arcs[aid];
        if (!sc.vehicles[a.vehicle].is_servicer()) continue;
        int y = model.find_y(static_cast<int>(aid));
        if (y >= 0 && sol.values[y] > 0.5)
            active[{a.vehicle, a.depart}] = static_cast<int>(aid);
    }
    std::map<std::pair<int, Day>, std::string> servicing;
    for (size_t i = 0; i < model.vars.size(); ++i) {
        const VarInfo& v = model.vars[i];
        if (v.kind == VarKind::DispatchB && sol.values[i] > 0.5)
            servicing[{v.vehicle, v.time}] = model.services[v.service].id;
    }
    for (auto& [key, aid] : active) {
        const DynArc& a = net.arcs[aid];
        ItineraryEntry e;
        e.t = a.depart;
        e.vehicle = a.vehicle;
        e.location = net.base.nodes[a.from].id;
        int xf = model.find_x_out(aid, sc.servicer_fuel);
        e.fuel_kg = xf >= 0 ? sol.values[xf] : 0.0;
        if (!a.is_holdover()) {
            const bool launch = net.base.nodes[a.from].kind == NodeKind::Earth;
            e.activity = (launch ? "launch->" : "transfer->") +
                         net.base.nodes[a.to].id;
        } else {
            auto sit = servicing.find({a.vehicle, a.depart});
            e.activity = sit != servicing.end() ? "service:" + sit->second
                                                : "hold";
        }
        rep.itinerary.push_back(std::move(e));
    }
    std::stable_sort(rep.itinerary.begin(), rep.itinerary.end(),
                     [](const ItineraryEntry& a, const ItineraryEntry& b) {
                         return std::tie(a.vehicle, a.t) < std::tie(b.vehicle, b.t);
                     });

    rep.validation = validate_schedule(model, net, sol.values);
    return rep;
}

void write_itinerary_csv(const ScheduleReport& rep, std::ostream& out) {
    out << "day,vehicle,location,activity,propellant_kg\n";
    for (const auto& e : rep.itinerary)
        out << e.t << ',' << e.vehicle << ',' << e.location << ',' << e.activity
            << ',' << e.fuel_kg << '\n';
}

void write_services_csv(const std::vector<ServiceOutcome>& services,
                        std::ostream& out) {
    out << "service,satellite,type,occurrence_day,start_day,vehicle,"
           "revenue_usd,delay_penalty_usd\n";
    for (const auto& o : services) {
        out << o.id << ',' << o.satellite << ',' << o.type << ','
            << o.occurrence << ',';
        if (o.served)
            out << o.start << ',' << o.vehicle;
        else
            out << "declined,";
        out << ',' << o.revenue_usd << ',' << o.delay_penalty_usd << '\n';
    }
}

std::string report_summary_json(const ScheduleReport& rep) {
    nlohmann::json j;
    j["status"] = to_string(rep.status);
    j["objective_usd"] = rep.objective;
    j["gap"] = rep.gap;
    j["wall_time_s"] = rep.wall_time_s;
    j["breakdown"] = {{"revenues_usd", rep.breakdown.revenues},
                      {"pdm_usd", rep.breakdown.pdm},
                      {"launch_usd", rep.breakdown.launch},
                      {"delay_usd", rep.breakdown.delay},
                      {"depots_usd", rep.breakdown.depots},
                      {"servicers_usd", rep.breakdown.servicers},
                      {"profit_usd", rep.breakdown.profit()}};
    int served = 0;
    for (const auto& o : rep.services) served += o.served;
    j["services_served"] = served;
    j["services_declined"] = static_cast<int>(rep.services.size()) - served;
    j["validation"] = rep.validation;
    return j.dump(2) + "\n";
}

}  // namespace oos
