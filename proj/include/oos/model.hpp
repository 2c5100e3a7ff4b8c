#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oos/network.hpp"
#include "oos/state.hpp"

namespace oos {

enum class VarKind : std::uint8_t {
    FlowXOut,   // x+ : commodity leaving a node on an arc
    FlowXIn,    // x- : commodity arriving; materialized only where the
                //      flow transformation is non-identity
    FlowYOut,   // y+ : vehicle count on an arc (y- is identical)
    AssignH,    // h_sv(tau)
    DispatchB,  // b_svt
};

struct VarInfo {
    VarKind kind;
    int arc = -1;        // flow kinds
    int commodity = -1;  // flow-x kinds
    int service = -1;    // h/b
    int vehicle = -1;    // h/b
    Day time = 0;        // tau for h, t for b
    double lb = 0.0;
    double ub = std::numeric_limits<double>::infinity();
    bool integer = false;
};

enum class RowSense : char { LE = 'L', GE = 'G', EQ = 'E' };

struct RowInfo {
    RowSense sense;
    double rhs = 0.0;
    std::string tag;  // human-readable origin, exported to the name map
};

/// One service need prepared for model assembly: window and occupancy
/// clipped to the dynamic network, commercial terms resolved. Fixed
/// entries pin an in-progress service from an earlier horizon.
struct PlannedService {
    std::string id;
    int node = -1;       // customer node in the network
    int type = -1;       // scenario service-type id
    Day occurrence = 0;  // tau_s
    double revenue_usd = 0.0;
    double delay_usd_per_day = 0.0;
    int tool_commodity = -1;
    int demand_commodity = -1;
    double demand_quantity = 0.0;
    std::vector<Day> window;                        // admissible starts
    std::vector<std::vector<Day>> occupancy;        // per window member
    std::vector<Day> occupancy_end;                 // unclipped end per member
    bool fixed = false;
    int fixed_vehicle = -1;
};

/// Solver-independent sparse MILP: variables, rows, objective
/// (maximize). Coefficients are snapped to their fixed-format MPS
/// rendering at insertion, so file and memory never disagree.
struct MilpModel {
    std::vector<VarInfo> vars;
    std::vector<RowInfo> rows;
    std::vector<std::vector<std::pair<int, double>>> entries;  // per row
    std::vector<std::pair<int, double>> objective;
    bool maximize = true;

    std::vector<PlannedService> services;

    std::string var_name(int i) const;
    std::string row_name(int i) const;
    std::string describe_var(int i, const DynamicNetwork& net) const;
    std::string stats() const;

    int find_y(int arc) const;
    int find_x_out(int arc, int commodity) const;
    int find_x_in(int arc, int commodity) const;  // -1 when aliased to x+
    /// Arrival variable: x- when materialized, else x+.
    int arrival_x(int arc, int commodity) const;
    int find_h(int service, int vehicle, Day tau) const;
    int find_b(int service, int vehicle, Day t) const;

    std::unordered_map<std::uint64_t, int> index;  // packed key -> var
};

struct PlanningInputs {
    const DynamicNetwork* net = nullptr;
    const Scenario* scenario = nullptr;
    std::vector<PlannedService> services;
    InfrastructureState state;
};

/// Resolve needs against the network: window/occupancy construction and
/// clipping, commercial terms. Needs whose clipped window is empty are
/// skipped (they cannot start in this horizon).
std::vector<PlannedService> plan_services(const std::vector<ServiceNeed>& needs,
                                          const Scenario& scenario,
                                          const DynamicNetwork& net);

/// Fixed carry-over entries for in-progress services (zero revenue; the
/// cash was realized when the service started).
std::vector<PlannedService> plan_fixed_services(
    const std::vector<InProgressService>& in_progress, const Scenario& scenario,
    const DynamicNetwork& net);

/// Assembles the complete model: flow variables over the dynamic
/// network, mass balance, flow transformation, concurrency, service
/// linking, assignment limits, tool presence, and the profit objective.
class ModelBuilder {
public:
    ModelBuilder(const DynamicNetwork& net, const Scenario& scenario,
                 InfrastructureState state, std::vector<PlannedService> services);

    void create_flow_variables();
    void create_service_variables();
    void add_mass_balance();
    void add_flow_transformation();
    void add_concurrency();
    void add_service_linking();
    void add_assignment_constraints();
    void add_tool_presence();
    void build_objective();

    MilpModel finish();

private:
    int add_var(VarInfo info);
    int add_row(RowSense sense, double rhs, std::string tag,
                std::vector<std::pair<int, double>> terms);
    bool commodity_allowed(const StaticArc& sa, const DynArc& a, int k) const;
    double vehicle_total(int v) const;
    double commodity_total(int k) const;

    const DynamicNetwork& net_;
    const Scenario& sc_;
    InfrastructureState state_;
    MilpModel model_;
    bool flows_done_ = false;
    bool services_done_ = false;
};

MilpModel assemble(const PlanningInputs& inputs);

/// Variable/row name map as a JSON document (names are positional in the
/// MPS file; this restores their meaning).
std::string name_map_json(const MilpModel& model, const DynamicNetwork& net);

}  // namespace oos
