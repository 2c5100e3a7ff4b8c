#pragma once

#include "oos/model.hpp"
#include "oos/solve.hpp"

namespace oos {

/// Hard limits for the exhaustive search; exceeding any raises
/// InstanceTooLarge.
struct OracleBudget {
    int max_servicers = 2;
    int max_services = 4;
    int max_orbital_nodes = 4;
    int max_intervals = 3;
    long max_assignments = 2000000;
};

/// Exhaustive optimum for a tiny launch-free instance: enumerates every
/// service assignment satisfying the at-most-once and one-per-satellite
/// rules, checks each against exhaustively enumerated servicer
/// itineraries (pinning, tool carriage, propellant burn, cargo pickup
/// and delivery, depot refills), and returns the best Eq.-(20) profit.
///
/// The returned values vector carries the chosen h/b assignment; flow
/// variables are left at zero (the oracle asserts objective equality,
/// not a full flow witness).
///
/// Preconditions beyond size (all checked): no launch vehicle, no fixed
/// services, one unit per servicer, commodity stocks ample enough that
/// vehicles never compete for them, and tool allocation unambiguous
/// (each servicer can claim its own copy of any tool kind at its start
/// node).
Solution solve_exhaustive(const PlanningInputs& inputs, const MilpModel& model,
                          const OracleBudget& budget = {});

/// Profit of the always-feasible all-declined plan (pure operating
/// costs; the baseline of the feasibility-dominance property).
double all_declined_profit(const PlanningInputs& inputs);

}  // namespace oos
