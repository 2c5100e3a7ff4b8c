#pragma once

#include <span>
#include <string>
#include <vector>

#include "oos/model.hpp"
#include "oos/network.hpp"

namespace oos {

struct ResidualReport {
    double max_violation = 0.0;
    int worst_row = -1;
    int violated_rows = 0;  // above the tolerance used in ok()

    bool ok(double tol = 1e-6) const { return max_violation <= tol; }
};

/// Constraint residuals of raw variable values against the model rows,
/// computed directly (never via the solver).
ResidualReport constraint_residuals(const MilpModel& model,
                                    std::span<const double> values);

double objective_value(const MilpModel& model, std::span<const double> values);

/// Profit components of Eq.-(20) form, re-accounted from the scenario
/// tables and arc/service structure rather than the objective row.
struct CostBreakdown {
    double revenues = 0.0;
    double pdm = 0.0;
    double launch = 0.0;
    double delay = 0.0;
    double depots = 0.0;
    double servicers = 0.0;

    double profit() const {
        return revenues - pdm - launch - delay - depots - servicers;
    }
};

CostBreakdown reaccount(const MilpModel& model, const DynamicNetwork& net,
                        const Scenario& scenario,
                        std::span<const double> values);

/// Recomputes every dispatch value from the assignments and occupancy
/// parameters; true when they all match the solved values exactly.
bool dispatch_consistent(const MilpModel& model, std::span<const double> values);

/// Post-solution schedule checks: every started service inside its
/// window, at most one service per satellite per step, servicer pinned
/// at the customer node during occupancy. Returns human-readable
/// violations (empty = pass).
std::vector<std::string> validate_schedule(const MilpModel& model,
                                           const DynamicNetwork& net,
                                           std::span<const double> values);

}  // namespace oos
