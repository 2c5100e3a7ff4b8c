#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "oos/model.hpp"

namespace oos {

enum class SolveStatus { Optimal, FeasibleAtLimit, Infeasible, Error };

std::string to_string(SolveStatus s);

struct Solution {
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    std::vector<double> values;  // aligned with model.vars
    double gap_achieved = 0.0;
    double wall_time_s = 0.0;
    std::string detail;  // raw status text / diagnostics
};

struct SolveRequest {
    const MilpModel* model = nullptr;
    double gap = 0.01;
    double time_limit_s = 7200.0;
    std::uint64_t seed = 0;
    std::string solver_cmd;  // template: {mps} {sol} {gap} {timelimit} {seed}
    std::filesystem::path workdir;
};

/// Deterministic fixed-format MPS. Field columns 2/5/15/25/40; names are
/// positional ("x%07d"/"c%07d"); integer variables sit inside INTORG
/// markers with explicit bounds; MAXIMIZE via OBJSENSE.
void write_mps(const MilpModel& model, std::ostream& out);
std::string write_mps_string(const MilpModel& model);

/// Reads fixed-format MPS back into a structural model (names, senses,
/// rhs, entries, bounds, integrality). write(read(write(m))) is
/// byte-identical to write(m).
MilpModel read_mps(std::istream& in);

/// Runs the configured solver command on an MPS file and parses the
/// solution file it writes. The returned objective is cross-checked by
/// re-evaluating the objective row on the returned values; integer
/// variables are repaired to integrality within 1e-6 and re-checked
/// against their bounds, else the result is demoted to Error.
Solution solve_external(const SolveRequest& request);

/// Parses a solution file: either the bundled driver's format (status /
/// objective / gap headers followed by "name value" lines) or a plain
/// Gurobi-style .sol ("# comments" + "name value" lines).
Solution parse_solution_file(std::istream& in, const MilpModel& model);

/// Default solver command template (the bundled scipy/HiGHS driver) or
/// empty when the driver cannot be located.
std::string default_solver_command();

}  // namespace oos
