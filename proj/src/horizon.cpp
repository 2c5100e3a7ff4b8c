#include "oos/horizon.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "oos/errors.hpp"
#include "oos/oracle.hpp"

namespace oos {

namespace {

struct TrackedNeed {
    ServiceNeed need;
    bool random = false;
    bool served = false;
    bool declined = false;
    Day last_start = 0;  // latest admissible start node
    // outcome
    Day start = 0;
    Day end = 0;
    int vehicle = -1;
    double revenue_usd = 0.0;
    double delay_usd = 0.0;
};

Day window_close(const ServiceNeed& need, const ServiceType& type,
                 const TimeGrid& grid) {
    Day last = need.occurrence_day;
    for (Day kt = need.occurrence_day;
         kt <= need.occurrence_day + type.window_days; kt += grid.interval_days)
        last = kt;
    return last + grid.flight_steps * grid.dt_days;
}

}  // namespace

InfrastructureState propagate(const InfrastructureState& state,
                              const DynamicNetwork& net, const MilpModel& model,
                              const Solution& sol, Day until) {
    InfrastructureState next;
    next.date = until;
    if (state.date >= until)
        throw StateCorruption("hand-off date precedes the current state");
    const int ti = net.time_index(until);
    if (ti < 0) throw StateCorruption("hand-off date is not a time node");

    int n_com = 0;
    for (const auto& v : model.vars) n_com = std::max(n_com, v.commodity + 1);

    for (size_t aid = 0; aid < net.arcs.size(); ++aid) {
        const DynArc& a = net.arcs[aid];
        if (a.arrive != until) continue;
        const std::string& node = net.base.nodes[a.to].id;
        int y = model.find_y(static_cast<int>(aid));
        double yv = y >= 0 ? sol.values[y] : 0.0;
        if (yv > 0.5)
            next.stock[node].vehicles[a.vehicle] +=
                static_cast<int>(std::llround(yv));
        for (int k = 0; k < n_com; ++k) {
            int xa = model.arrival_x(static_cast<int>(aid), k);
            if (xa < 0) continue;
            double q = sol.values[xa];
            if (q < -1e-6)
                throw StateCorruption("negative commodity arriving at " + node);
            if (q > 1e-9) next.stock[node].commodities[k] += std::max(q, 0.0);
        }
    }

    // Services still underway at the hand-off.
    for (size_t s = 0; s < model.services.size(); ++s) {
        const PlannedService& svc = model.services[s];
        for (size_t v = 0; v < model.vars.size(); ++v) {
            const VarInfo& var = model.vars[v];
            if (var.kind != VarKind::AssignH ||
                var.service != static_cast<int>(s) || sol.values[v] < 0.5)
                continue;
            size_t w = 0;
            while (svc.window[w] != var.time) ++w;
            if (var.time >= until || svc.occupancy_end[w] <= until) continue;
            InProgressService ip;
            ip.need_id = svc.id;
            ip.vehicle = var.vehicle;
            ip.service_type = svc.type;
            ip.start_day = var.time;
            ip.node = net.base.nodes[svc.node].id;
            for (Day t = until; t < svc.occupancy_end[w];
                 t = net.grid.next_node(t))
                ip.remaining_occupancy.push_back(t);
            next.in_progress.push_back(ip);
        }
    }
    for (const auto& ip : next.in_progress) {
        auto it = next.stock.find(ip.node);
        if (it == next.stock.end() || !it->second.vehicles.count(ip.vehicle) ||
            it->second.vehicles.at(ip.vehicle) < 1)
            throw StateCorruption("in-progress servicer missing from " + ip.node);
    }
    return next;
}

namespace {

struct PhPlan {
    DynamicNetwork net;
    MilpModel model;
    Solution solution;
};

PhPlan solve_ph(const Scenario& sc, const InfrastructureState& state,
                const std::vector<ServiceNeed>& needs,
                const std::vector<InProgressService>& carry, Day t0,
                int horizon_days, const RunOptions& opt,
                const std::filesystem::path& workdir) {
    Scenario ph_sc = sc;
    ph_sc.initial_state = state;

    std::set<std::string> occupied;
    for (const auto& [node, stock] : state.stock)
        for (const auto& [vid, count] : stock.vehicles)
            if (count > 0) occupied.insert(node);

    StaticNetwork full = build_static(ph_sc);
    StaticNetwork pruned = prune_to_demand(full, needs, occupied);
    PhPlan plan{expand(pruned, sc.grid, t0, horizon_days), {}, {}};

    PlanningInputs in;
    in.net = &plan.net;
    in.scenario = &ph_sc;
    in.state = state;
    in.services = plan_services(needs, ph_sc, plan.net);
    auto fixed = plan_fixed_services(carry, ph_sc, plan.net);
    in.services.insert(in.services.end(), fixed.begin(), fixed.end());
    plan.model = assemble(in);

    SolveRequest req;
    req.model = &plan.model;
    req.gap = opt.gap >= 0 ? opt.gap : sc.solver.gap;
    req.time_limit_s =
        opt.time_limit_s >= 0 ? opt.time_limit_s : sc.solver.time_limit_s;
    req.solver_cmd = !opt.solver_cmd.empty() ? opt.solver_cmd
                     : !sc.solver.command.empty() ? sc.solver.command
                                                  : default_solver_command();
    req.workdir = workdir;
    plan.solution = solve_external(req);
    if (plan.solution.status == SolveStatus::Infeasible ||
        plan.solution.status == SolveStatus::Error)
        throw PlanningInfeasible(
            "planning horizon at t=" + std::to_string(t0) + " " +
            to_string(plan.solution.status) + ": " + plan.solution.detail +
            " (" + plan.model.stats() + ")");
    return plan;
}

}  // namespace

RunResult run(const Scenario& sc, std::uint64_t seed, const RunOptions& opt) {
    sc.validate();
    RunResult out;
    out.scenario_name = sc.name;
    out.seed = seed;
    out.initial_investment_usd = initial_investment_usd(sc);

    const int SH = sc.horizons.scheduling_days;
    const int PH = sc.horizons.planning_days;
    const int CH = sc.horizons.control_days;
    const TimeGrid& grid = sc.grid;

    // Full demand realization over the scheduling horizon.
    std::vector<TrackedNeed> needs;
    for (auto& n : generate_deterministic(sc.satellites, sc.service_types, grid,
                                          SH, 0, seed, sc.deterministic_offsets))
        needs.push_back(TrackedNeed{n, false});
    for (auto& n :
         generate_random(sc.satellites, sc.service_types, grid, SH, 0, seed))
        needs.push_back(TrackedNeed{n, true});
    for (auto& tn : needs)
        tn.last_start = window_close(tn.need, sc.service_types[tn.need.type], grid);

    std::filesystem::path workdir =
        opt.workdir.empty()
            ? std::filesystem::temp_directory_path() /
                  ("oos-run-" + std::to_string(seed))
            : opt.workdir;

    InfrastructureState state = sc.initial_state;
    if (state.date != 0)
        throw ScenarioError("rolling-horizon runs start at day 0");
    std::vector<InProgressService> carry = state.in_progress;
    state.in_progress.clear();

    std::vector<Day> random_dates;
    for (const auto& tn : needs)
        if (tn.random) random_dates.push_back(tn.need.occurrence_day);
    std::sort(random_dates.begin(), random_dates.end());

    Day t = 0;
    bool first = true;
    while (t < SH) {
        const int ph_days = std::min(PH, SH - t);

        // Needs visible to this planning horizon.
        std::vector<ServiceNeed> visible;
        std::vector<std::string> triggers;
        for (auto& tn : needs) {
            if (tn.served || tn.declined) continue;
            if (tn.random && !opt.forecast_random && tn.need.occurrence_day > t)
                continue;
            if (tn.last_start < t) {
                tn.declined = true;
                ++out.services_declined;
                continue;
            }
            if (tn.need.occurrence_day > t + ph_days) continue;
            visible.push_back(tn.need);
            if (tn.random && tn.need.occurrence_day == t)
                triggers.push_back(tn.need.id);
        }

        PhPlan plan =
            solve_ph(sc, state, visible, carry, t, ph_days, opt, workdir);
        ReplanEvent ev;
        ev.t = t;
        ev.trigger = first              ? "initial"
                     : triggers.empty() ? "quiet_timer"
                                        : "random:" + triggers.front();
        for (size_t i = 1; i < triggers.size(); ++i)
            ev.trigger += "+" + triggers[i];
        ev.model_vars = static_cast<int>(plan.model.vars.size());
        ev.model_rows = static_cast<int>(plan.model.rows.size());
        ev.wall_time_s = plan.solution.wall_time_s;
        out.replans.push_back(ev);
        first = false;

        // Next event: a random need after t, or the control-horizon timer.
        Day t_next = std::min<Day>(t + CH, SH);
        for (Day d : random_dates)
            if (d > t && d < t_next && !opt.forecast_random) {
                t_next = d;
                break;
            }

        // Commit flights and launches departing inside [t, t_next).
        for (size_t aid = 0; aid < plan.net.arcs.size(); ++aid) {
            const DynArc& a = plan.net.arcs[aid];
            if (a.depart < t || a.depart >= t_next) continue;
            int y = plan.model.find_y(static_cast<int>(aid));
            if (y < 0 || plan.solution.values[y] < 0.5) continue;
            const double yv = plan.solution.values[y];
            const VehicleSpec& veh = sc.vehicles[a.vehicle];
            CommittedAction act;
            act.t = a.depart;
            act.t_end = a.arrive;
            act.vehicle = a.vehicle;
            act.from = plan.net.base.nodes[a.from].id;
            act.to = plan.net.base.nodes[a.to].id;
            const bool from_earth =
                plan.net.base.nodes[a.from].kind == NodeKind::Earth;
            if (from_earth && plan.net.base.is_orbital(a.to)) {
                act.kind = CommittedAction::Kind::Launch;
                double mass = veh.dry_mass_kg * yv;
                double cost = veh.pdm_cost_usd * yv;
                for (int k = 0; k < static_cast<int>(sc.commodities.size()); ++k) {
                    int xo = plan.model.find_x_out(static_cast<int>(aid), k);
                    if (xo < 0) continue;
                    const double m =
                        sc.commodities[k].mass_of(plan.solution.values[xo]);
                    mass += m;
                    cost += sc.commodities[k].pdm_usd_per_kg * m;
                }
                act.cost_usd = cost + sc.launch.cost_usd_per_kg * mass;
            } else if (!from_earth) {
                act.kind = a.is_holdover() ? CommittedAction::Kind::Hold
                                           : CommittedAction::Kind::Flight;
                if (veh.is_servicer() || (veh.is_depot() && a.is_holdover()))
                    act.cost_usd =
                        veh.operating_cost_usd_per_day * a.duration_days() * yv;
            } else {
                continue;  // Earth shelf holdover carries no cash
            }
            out.committed.push_back(act);
        }

        // Commit services starting inside [t, t_next).
        for (size_t s = 0; s < plan.model.services.size(); ++s) {
            const PlannedService& svc = plan.model.services[s];
            if (svc.fixed) continue;
            for (size_t vi = 0; vi < sc.vehicles.size(); ++vi)
                for (size_t w = 0; w < svc.window.size(); ++w) {
                    const Day tau = svc.window[w];
                    int h = plan.model.find_h(static_cast<int>(s),
                                              static_cast<int>(vi), tau);
                    if (h < 0 || plan.solution.values[h] < 0.5) continue;
                    if (tau < t || tau >= t_next) continue;
                    CommittedAction act;
                    act.kind = CommittedAction::Kind::ServiceStart;
                    act.t = tau;
                    act.t_end = svc.occupancy_end[w];
                    act.vehicle = static_cast<int>(vi);
                    act.from = act.to = plan.net.base.nodes[svc.node].id;
                    act.need_id = svc.id;
                    act.revenue_usd = svc.revenue_usd;
                    act.cost_usd =
                        svc.delay_usd_per_day * (tau - svc.occurrence);
                    out.committed.push_back(act);
                    for (auto& tn : needs)
                        if (tn.need.id == svc.id) {
                            tn.served = true;
                            tn.start = tau;
                            tn.end = svc.occupancy_end[w];
                            tn.vehicle = static_cast<int>(vi);
                            tn.revenue_usd = svc.revenue_usd;
                            tn.delay_usd = act.cost_usd;
                            ++out.services_served;
                        }
                }
        }

        if (t_next >= SH) {
            // Terminal hand-off only for the final-state record.
            out.final_state =
                propagate(state, plan.net, plan.model, plan.solution,
                          std::min<Day>(t + ph_days, SH));
            break;
        }
        state = propagate(state, plan.net, plan.model, plan.solution, t_next);
        carry = state.in_progress;
        state.in_progress.clear();
        t = t_next;
    }

    // Any still-open needs at the end are forgone revenue, no penalty.
    for (auto& tn : needs)
        if (!tn.served && !tn.declined) {
            tn.declined = true;
            ++out.services_declined;
        }

    for (const auto& tn : needs) {
        ServiceOutcome o;
        o.id = tn.need.id;
        o.satellite = sc.satellites[tn.need.satellite].name;
        o.type = sc.service_types[tn.need.type].name;
        o.occurrence = tn.need.occurrence_day;
        o.served = tn.served;
        o.start = tn.start;
        o.end = tn.end;
        o.vehicle = tn.vehicle;
        o.revenue_usd = tn.served ? tn.revenue_usd : 0.0;
        o.delay_penalty_usd = tn.delay_usd;
        out.services.push_back(o);
    }

    // Value series at interval boundaries: actions dated < boundary. The
    // committed log itself stays in append order (prefix-stable across
    // re-plans).
    std::map<Day, std::pair<double, double>> by_day;
    for (const auto& act : out.committed) {
        by_day[act.t].first += act.revenue_usd;
        by_day[act.t].second += act.cost_usd;
    }
    double rev = 0.0, cost = 0.0;
    auto it = by_day.begin();
    for (Day b = 0; b <= SH; b += grid.interval_days) {
        while (it != by_day.end() && it->first < b) {
            rev += it->second.first;
            cost += it->second.second;
            ++it;
        }
        out.series.push_back(
            {b, rev, cost, rev - cost - out.initial_investment_usd});
    }
    out.total_revenue_usd = rev;
    out.total_cost_usd = cost;
    out.final_value_usd = out.series.back().value_usd;
    return out;
}

std::vector<RunResult> compare_architectures(std::span<const Scenario> scenarios,
                                             std::span<const std::uint64_t> seeds,
                                             const RunOptions& opt, int workers) {
    for (size_t i = 1; i < scenarios.size(); ++i) {
        if (scenarios[i].satellites.size() != scenarios[0].satellites.size() ||
            scenarios[i].service_types.size() !=
                scenarios[0].service_types.size())
            throw ScenarioError(
                "architecture scenarios must share the customer fleet and "
                "service types for paired comparison");
        for (size_t k = 0; k < scenarios[0].satellites.size(); ++k)
            if (scenarios[i].satellites[k].name !=
                scenarios[0].satellites[k].name)
                throw ScenarioError("architecture scenarios must share satellites");
    }

    struct Job {
        size_t scenario;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (size_t a = 0; a < scenarios.size(); ++a)
        for (std::uint64_t s : seeds) jobs.push_back({a, s});

    std::vector<RunResult> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            size_t j = cursor.fetch_add(1);
            if (j >= jobs.size()) return;
            RunOptions o = opt;
            o.workdir = (opt.workdir.empty()
                             ? std::filesystem::temp_directory_path()
                             : opt.workdir) /
                        (scenarios[jobs[j].scenario].name + "-seed" +
                         std::to_string(jobs[j].seed));
            try {
                results[j] = run(scenarios[jobs[j].scenario], jobs[j].seed, o);
            } catch (const std::exception& e) {
                errors[j] = e.what();
            }
        }
    };
    const int n = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (size_t j = 0; j < jobs.size(); ++j)
        if (!errors[j].empty())
            throw PlanningInfeasible("run " +
                                     scenarios[jobs[j].scenario].name + "/seed" +
                                     std::to_string(jobs[j].seed) + ": " +
                                     errors[j]);
    return results;
}

void write_value_series_csv(const RunResult& r, std::ostream& out) {
    out << "day,cum_revenue_usd,cum_cost_usd,value_usd\n";
    for (const auto& p : r.series)
        out << p.t << ',' << p.cum_revenue_usd << ',' << p.cum_cost_usd << ','
            << p.value_usd << '\n';
}

std::string run_summary_json(const RunResult& r) {
    nlohmann::json j;
    j["scenario"] = r.scenario_name;
    j["seed"] = r.seed;
    j["initial_investment_usd"] = r.initial_investment_usd;
    j["final_value_usd"] = r.final_value_usd;
    j["total_revenue_usd"] = r.total_revenue_usd;
    j["total_cost_usd"] = r.total_cost_usd;
    j["services_served"] = r.services_served;
    j["services_declined"] = r.services_declined;
    j["replans"] = nlohmann::json::array();
    for (const auto& e : r.replans)
        j["replans"].push_back({{"t", e.t},
                                {"trigger", e.trigger},
                                {"model_vars", e.model_vars},
                                {"model_rows", e.model_rows},
                                {"wall_time_s", e.wall_time_s}});
    Day payback = -1;
    for (const auto& p : r.series)
        if (p.value_usd >= 0.0) {
            payback = p.t;
            break;
        }
    j["payback_day"] = payback;
    return j.dump(2) + "\n";
}

}  // namespace oos
