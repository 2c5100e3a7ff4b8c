#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "oos/report.hpp"

namespace oos {

struct CommittedAction {
    enum class Kind { Flight, Hold, Launch, ServiceStart };
    Kind kind = Kind::Hold;
    Day t = 0;
    Day t_end = 0;
    int vehicle = -1;
    std::string from, to;
    std::string need_id;       // ServiceStart
    double revenue_usd = 0.0;  // cash realized at t
    double cost_usd = 0.0;
};

struct ReplanEvent {
    Day t = 0;
    std::string trigger;  // initial | quiet_timer | random:<ids>
    int model_vars = 0;
    int model_rows = 0;
    double wall_time_s = 0.0;
};

struct ValuePoint {
    Day t = 0;
    double cum_revenue_usd = 0.0;
    double cum_cost_usd = 0.0;
    double value_usd = 0.0;  // revenue - cost - initial investment
};

struct RunResult {
    std::string scenario_name;
    std::uint64_t seed = 0;
    double initial_investment_usd = 0.0;
    std::vector<CommittedAction> committed;
    std::vector<ReplanEvent> replans;
    std::vector<ValuePoint> series;  // one point per interval boundary
    std::vector<ServiceOutcome> services;
    InfrastructureState final_state;

    double final_value_usd = 0.0;
    double total_revenue_usd = 0.0;
    double total_cost_usd = 0.0;
    int services_served = 0;
    int services_declined = 0;
};

struct RunOptions {
    std::string solver_cmd;  // empty: scenario setting, then built-in default
    double gap = -1.0;       // <0: scenario setting
    double time_limit_s = -1.0;
    std::filesystem::path workdir;  // empty: temp dir
    bool forecast_random = false;   // single-PH mode treats random needs as known
};

/// Event-triggered rolling horizon: optimize the planning horizon,
/// commit until the next random need (or the control-horizon timer),
/// propagate the infrastructure state, repeat until the scheduling
/// horizon ends.
RunResult run(const Scenario& scenario, std::uint64_t seed,
              const RunOptions& options = {});

/// Flow-implied state at `until`: arrivals of every commodity and
/// vehicle at that date plus the services still underway. Throws
/// StateCorruption when a negative quantity would result.
InfrastructureState propagate(const InfrastructureState& state,
                              const DynamicNetwork& net, const MilpModel& model,
                              const Solution& solution, Day until);

/// Paired architecture comparison: every scenario is run against the
/// identical demand realization per seed. Scenarios must share the
/// satellite fleet and service-type tables.
std::vector<RunResult> compare_architectures(std::span<const Scenario> scenarios,
                                             std::span<const std::uint64_t> seeds,
                                             const RunOptions& options = {},
                                             int workers = 1);

void write_value_series_csv(const RunResult& result, std::ostream& out);
std::string run_summary_json(const RunResult& result);

}  // namespace oos
