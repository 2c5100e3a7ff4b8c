#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "oos/horizon.hpp"
#include "oos/network.hpp"
#include "oos/oracle.hpp"
#include "oos/report.hpp"

namespace fs = std::filesystem;
using namespace oos;

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir = "out";
    std::string solver_cmd;
    double gap = -1.0;
    double time_limit = -1.0;
    std::uint64_t seed = 0;
    std::string seeds_range;  // "N..M"
    int workers = 1;
};

std::vector<std::uint64_t> parse_seeds(const CommonOpts& o) {
    if (o.seeds_range.empty()) return {o.seed};
    auto dots = o.seeds_range.find("..");
    if (dots == std::string::npos)
        return {static_cast<std::uint64_t>(std::stoull(o.seeds_range))};
    std::uint64_t lo = std::stoull(o.seeds_range.substr(0, dots));
    std::uint64_t hi = std::stoull(o.seeds_range.substr(dots + 2));
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
}

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << text;
}

// Single-planning-horizon optimization with the full need forecast.
int cmd_schedule(const CommonOpts& o) {
    Scenario sc = load_scenario(o.scenario_path);
    const Day t0 = 0;
    const int ph = sc.horizons.planning_days;

    std::vector<ServiceNeed> needs;
    for (auto& n : generate_deterministic(sc.satellites, sc.service_types,
                                          sc.grid, ph, t0, o.seed,
                                          sc.deterministic_offsets))
        needs.push_back(n);
    for (auto& n : generate_random(sc.satellites, sc.service_types, sc.grid, ph,
                                   t0, o.seed))
        needs.push_back(n);

    std::set<std::string> occupied;
    for (const auto& [node, stock] : sc.initial_state.stock)
        for (const auto& [vid, count] : stock.vehicles)
            if (count > 0) occupied.insert(node);

    StaticNetwork full = build_static(sc);
    for (const auto& w : full.warnings) std::cerr << "warning: " << w << "\n";
    StaticNetwork pruned = prune_to_demand(full, needs, occupied);
    DynamicNetwork net = expand(pruned, sc.grid, t0, ph);

    InfrastructureState state = sc.initial_state;
    std::vector<InProgressService> carry = state.in_progress;
    state.in_progress.clear();

    PlanningInputs in;
    in.net = &net;
    in.scenario = &sc;
    in.state = state;
    in.services = plan_services(needs, sc, net);
    auto fixed = plan_fixed_services(carry, sc, net);
    in.services.insert(in.services.end(), fixed.begin(), fixed.end());
    MilpModel model = assemble(in);
    std::cout << "model: " << model.stats() << "\n";

    SolveRequest req;
    req.model = &model;
    req.gap = o.gap >= 0 ? o.gap : sc.solver.gap;
    req.time_limit_s = o.time_limit >= 0 ? o.time_limit : sc.solver.time_limit_s;
    req.solver_cmd = !o.solver_cmd.empty()       ? o.solver_cmd
                     : !sc.solver.command.empty() ? sc.solver.command
                                                  : default_solver_command();
    req.workdir = fs::path(o.out_dir) / "solver";
    Solution sol = solve_external(req);
    std::cout << "status: " << to_string(sol.status) << " objective "
              << sol.objective << " gap " << sol.gap_achieved << " ("
              << sol.wall_time_s << " s)\n";
    if (sol.status != SolveStatus::Optimal &&
        sol.status != SolveStatus::FeasibleAtLimit)
        return 1;

    ScheduleReport rep = build_report(model, net, sc, sol);
    fs::path out(o.out_dir);
    fs::create_directories(out);
    {
        std::ofstream f(out / "itinerary.csv");
        write_itinerary_csv(rep, f);
    }
    {
        std::ofstream f(out / "services.csv");
        write_services_csv(rep.services, f);
    }
    {
        std::ofstream f(out / "network.edges");
        write_edge_list(net, f);
    }
    write_file(out / "summary.json", report_summary_json(rep));
    for (const auto& v : rep.validation)
        std::cerr << "validation: " << v << "\n";
    std::cout << "reports in " << out.string() << "\n";
    return rep.validation.empty() ? 0 : 1;
}

int cmd_trade(const std::vector<std::string>& scenario_paths,
              const CommonOpts& o) {
    std::vector<Scenario> scenarios;
    for (const auto& p : scenario_paths) scenarios.push_back(load_scenario(p));
    auto seeds = parse_seeds(o);
    if (seeds.empty()) {
        std::cerr << "warning: no seeds given, nothing to run\n";
        return 0;
    }
    RunOptions ro;
    ro.solver_cmd = o.solver_cmd;
    ro.gap = o.gap;
    ro.time_limit_s = o.time_limit;
    ro.workdir = fs::path(o.out_dir) / "solver";

    auto results = compare_architectures(scenarios, seeds, ro, o.workers);
    fs::path out(o.out_dir);
    for (const auto& r : results) {
        fs::path dir = out / r.scenario_name / ("seed" + std::to_string(r.seed));
        fs::create_directories(dir);
        {
            std::ofstream f(dir / "series.csv");
            write_value_series_csv(r, f);
        }
        {
            std::ofstream f(dir / "services.csv");
            write_services_csv(r.services, f);
        }
        write_file(dir / "summary.json", run_summary_json(r));
        std::cout << r.scenario_name << " seed " << r.seed << ": final value "
                  << r.final_value_usd / 1e6 << " M$, served "
                  << r.services_served << ", declined " << r.services_declined
                  << "\n";
    }
    std::cout << "trade reports in " << out.string() << "\n";
    return 0;
}

int cmd_validate(const CommonOpts& o) {
    try {
        Scenario sc = load_scenario(o.scenario_path);
        StaticNetwork net = build_static(sc);
        std::cout << "scenario '" << sc.name << "': " << sc.satellites.size()
                  << " satellites, " << sc.vehicles.size() << " vehicles, "
                  << net.nodes.size() << " nodes, " << net.arcs.size()
                  << " static arcs\n";
        for (const auto& w : net.warnings)
            std::cout << "warning: " << w << "\n";
        std::cout << "initial investment: " << initial_investment_usd(sc) / 1e6
                  << " M$\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 1;
    }
}

int cmd_export_mps(const CommonOpts& o) {
    Scenario sc = load_scenario(o.scenario_path);
    const int ph = sc.horizons.planning_days;
    std::vector<ServiceNeed> needs;
    for (auto& n : generate_deterministic(sc.satellites, sc.service_types,
                                          sc.grid, ph, 0, o.seed,
                                          sc.deterministic_offsets))
        needs.push_back(n);
    for (auto& n :
         generate_random(sc.satellites, sc.service_types, sc.grid, ph, 0, o.seed))
        needs.push_back(n);

    std::set<std::string> occupied;
    for (const auto& [node, stock] : sc.initial_state.stock)
        for (const auto& [vid, count] : stock.vehicles)
            if (count > 0) occupied.insert(node);
    DynamicNetwork net =
        expand(prune_to_demand(build_static(sc), needs, occupied), sc.grid, 0, ph);

    InfrastructureState state = sc.initial_state;
    std::vector<InProgressService> carry = state.in_progress;
    state.in_progress.clear();
    PlanningInputs in;
    in.net = &net;
    in.scenario = &sc;
    in.state = state;
    in.services = plan_services(needs, sc, net);
    auto fixed = plan_fixed_services(carry, sc, net);
    in.services.insert(in.services.end(), fixed.begin(), fixed.end());
    MilpModel model = assemble(in);

    fs::path out(o.out_dir);
    fs::create_directories(out);
    {
        std::ofstream f(out / "model.mps");
        write_mps(model, f);
    }
    write_file(out / "model.names.json", name_map_json(model, net));
    std::cout << "wrote " << (out / "model.mps").string() << " ("
              << model.stats() << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"On-orbit servicing logistics planner"};
    app.require_subcommand(1);
    CommonOpts o;

    auto add_common = [&o](CLI::App* cmd, bool scenario_list = false) {
        if (!scenario_list)
            cmd->add_option("--scenario", o.scenario_path, "scenario JSON path")
                ->required();
        cmd->add_option("--out", o.out_dir, "output directory");
        cmd->add_option("--solver-cmd", o.solver_cmd,
                        "solver command template ({mps} {sol} {gap} "
                        "{timelimit} {seed})");
        cmd->add_option("--gap", o.gap, "relative MIP gap");
        cmd->add_option("--time-limit", o.time_limit, "solver time limit [s]");
        cmd->add_option("--seed", o.seed, "demand realization seed");
        cmd->add_option("--seeds", o.seeds_range, "seed range N..M");
        cmd->add_option("--workers", o.workers, "parallel runs");
    };

    auto* schedule =
        app.add_subcommand("schedule", "single-horizon operational scheduling");
    add_common(schedule);
    auto* trade = app.add_subcommand(
        "trade", "multi-year architecture trade study (rolling horizon)");
    std::vector<std::string> trade_scenarios;
    trade->add_option("--scenario", trade_scenarios,
                      "architecture scenario JSON (repeatable)")
        ->required();
    add_common(trade, true);
    auto* validate = app.add_subcommand("validate", "scenario lint");
    add_common(validate);
    auto* exportmps =
        app.add_subcommand("export-mps", "dump the MILP without solving");
    add_common(exportmps);

    CLI11_PARSE(app, argc, argv);
    try {
        if (schedule->parsed()) return cmd_schedule(o);
        if (trade->parsed()) return cmd_trade(trade_scenarios, o);
        if (validate->parsed()) return cmd_validate(o);
        if (exportmps->parsed()) return cmd_export_mps(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
