#include "oos/solve.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "oos/errors.hpp"

namespace oos {

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleAtLimit: return "feasible_at_limit";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Error: return "error";
    }
    return "error";
}

std::string default_solver_command() {
#ifdef OOS_SOLVER_DRIVER
    return std::string("python3 ") + OOS_SOLVER_DRIVER +
           " --mps {mps} --out {sol} --gap {gap} --time-limit {timelimit}";
#else
    return {};
#endif
}

namespace {

std::string substitute(std::string templ, const std::string& key,
                       const std::string& value) {
    std::string token = "{" + key + "}";
    size_t pos;
    while ((pos = templ.find(token)) != std::string::npos)
        templ.replace(pos, token.size(), value);
    return templ;
}

}  // namespace

Solution parse_solution_file(std::istream& in, const MilpModel& model) {
    Solution sol;
    sol.values.assign(model.vars.size(), 0.0);
    std::map<std::string, int> names;
    for (size_t i = 0; i < model.vars.size(); ++i)
        names[model.var_name(static_cast<int>(i))] = static_cast<int>(i);

    bool have_status = false, have_any_value = false;
    std::string line;
    std::string captured;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (captured.size() < 4000) captured += line + "\n";
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string first;
        is >> first;
        if (first.empty()) continue;
        if (first[0] == '#' || first[0] == '*') {
            // Comment; the driver reports the gap in one of these.
            std::string key;
            std::istringstream cs(line.substr(1));
            cs >> key;
            if (key == "gap" || key == "Gap") cs >> sol.gap_achieved;
            continue;
        }
        if (first == "status" || first == "Status") {
            std::string st;
            is >> st;
            have_status = true;
            if (st == "optimal" || st == "Optimal") sol.status = SolveStatus::Optimal;
            else if (st == "feasible_at_limit" || st == "TimeLimit")
                sol.status = SolveStatus::FeasibleAtLimit;
            else if (st == "infeasible" || st == "Infeasible")
                sol.status = SolveStatus::Infeasible;
            else sol.status = SolveStatus::Error;
            sol.detail = st;
            continue;
        }
        if (first == "objective" || first == "Objective") {
            is >> sol.objective;
            continue;
        }
        // Generic "VARNAME VALUE" line (also Gurobi .sol format).
        double value;
        if (!(is >> value)) continue;
        auto it = names.find(first);
        if (it != names.end()) {
            sol.values[it->second] = value;
            have_any_value = true;
        }
    }
    if (!have_status) {
        // Plain name/value listing: treat presence of values as optimal.
        if (!have_any_value && !model.vars.empty())
            throw ProtocolError("solution file had no recognizable content:\n" +
                                captured);
        sol.status = SolveStatus::Optimal;
    }
    return sol;
}

Solution solve_external(const SolveRequest& req) {
    if (!req.model) throw std::invalid_argument("missing model");
    std::string cmd_template =
        req.solver_cmd.empty() ? default_solver_command() : req.solver_cmd;
    if (cmd_template.empty())
        throw BackendUnavailable("no solver command configured");

    std::filesystem::path dir =
        req.workdir.empty() ? std::filesystem::temp_directory_path() : req.workdir;
    std::filesystem::create_directories(dir);
    const auto mps_path = dir / "model.mps";
    const auto sol_path = dir / "model.sol";
    std::error_code ec;
    std::filesystem::remove(sol_path, ec);

    {
        std::ofstream mps(mps_path);
        if (!mps)
            throw BackendUnavailable("cannot write " + mps_path.string());
        write_mps(*req.model, mps);
    }

    std::string cmd = cmd_template;
    cmd = substitute(cmd, "mps", mps_path.string());
    cmd = substitute(cmd, "sol", sol_path.string());
    cmd = substitute(cmd, "gap", std::to_string(req.gap));
    cmd = substitute(cmd, "timelimit", std::to_string(req.time_limit_s));
    cmd = substitute(cmd, "seed", std::to_string(req.seed));

    const auto start = std::chrono::steady_clock::now();
    int rc = std::system(cmd.c_str());
    const auto elapsed = std::chrono::steady_clock::now() - start;

    if (!std::filesystem::exists(sol_path)) {
        if (rc != 0)
            throw BackendUnavailable("solver command failed (exit " +
                                     std::to_string(rc) + "): " + cmd);
        throw ProtocolError("solver produced no solution file: " + cmd);
    }

    std::ifstream in(sol_path);
    Solution sol = parse_solution_file(in, *req.model);
    sol.wall_time_s =
        std::chrono::duration_cast<std::chrono::duration<double>>(elapsed)
            .count();

    if (sol.status == SolveStatus::Infeasible ||
        sol.status == SolveStatus::Error)
        return sol;

    // Integrality repair within 1e-6, then hard re-check of bounds.
    const MilpModel& m = *req.model;
    for (size_t i = 0; i < m.vars.size(); ++i) {
        const VarInfo& v = m.vars[i];
        double& val = sol.values[i];
        if (v.integer) {
            double rounded = std::round(val);
            if (std::abs(val - rounded) > 1e-6) {
                sol.status = SolveStatus::Error;
                sol.detail = "integrality violation on " +
                             m.var_name(static_cast<int>(i));
                return sol;
            }
            val = rounded;
        }
        if (val < v.lb - 1e-6 || val > v.ub + 1e-6) {
            sol.status = SolveStatus::Error;
            sol.detail = "bound violation on " + m.var_name(static_cast<int>(i));
            return sol;
        }
    }

    // The reported objective must match the objective row on the returned
    // values; anything else is a protocol fault, not a tolerance issue.
    double recomputed = 0.0;
    for (const auto& [var, coeff] : m.objective)
        recomputed += coeff * sol.values[var];
    const double tol = 1e-6 * std::max(1.0, std::abs(recomputed));
    if (std::abs(recomputed - sol.objective) > tol) {
        sol.status = SolveStatus::Error;
        sol.detail = "reported objective " + std::to_string(sol.objective) +
                     " disagrees with re-evaluated " + std::to_string(recomputed);
        return sol;
    }
    sol.objective = recomputed;
    return sol;
}

}  // namespace oos
