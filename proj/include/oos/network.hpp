#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "oos/scenario.hpp"
#include "oos/timegrid.hpp"

namespace oos {

enum class NodeKind { Customer, Parking, Earth };

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Customer;
    double longitude_deg = 0.0;  // orbital nodes only
    std::string label;
    int satellite = -1;  // customer nodes: index into the satellite table
};

enum class ArcKind { Transport, Holdover };

/// One static flow lane for one vehicle. Transport arcs between orbital
/// nodes carry the phasing delta-V computed at build time (the geometry
/// is time-invariant on a shared circular orbit); launch arcs are
/// transport arcs leaving an Earth node with delta-V 0 and an
/// availability period. `carries_cargo` gates x-variable creation (a
/// spent launcher parked at a depot node must not store anything).
struct StaticArc {
    int vehicle = -1;
    int from = -1;
    int to = -1;
    ArcKind kind = ArcKind::Transport;
    double delta_v_kms = 0.0;
    double alpha_rad = 0.0;
    int launch_period_days = 0;  // >0: departures only at k*period
    bool carries_cargo = true;
};

struct StaticNetwork {
    std::vector<Node> nodes;
    std::vector<StaticArc> arcs;
    std::vector<std::string> warnings;  // omitted infeasible transfers

    int node_id(const std::string& id) const;
    bool is_orbital(int node) const {
        return nodes[node].kind != NodeKind::Earth;
    }
};

/// One arc instance in the time-expanded network.
struct DynArc {
    int static_arc = -1;
    int vehicle = -1;
    int from = -1;
    int to = -1;
    Day depart = 0;
    Day arrive = 0;
    ArcKind kind = ArcKind::Transport;
    double delta_v_kms = 0.0;

    int duration_days() const { return arrive - depart; }
    bool is_holdover() const { return kind == ArcKind::Holdover; }
};

/// Static network replicated over the time grid. Transport arcs live on
/// spaceflight steps only; holdover arcs bridge consecutive time nodes
/// including across the service step.
struct DynamicNetwork {
    StaticNetwork base;
    TimeGrid grid;
    Day t0 = 0;
    int horizon_days = 0;

    std::vector<Day> times;  // sorted time nodes
    std::vector<DynArc> arcs;

    // (node, time index) -> arc ids, filled at expansion.
    std::vector<std::vector<int>> out_arcs;  // departing at that node/time
    std::vector<std::vector<int>> in_arcs;   // arriving at that node/time

    int time_index(Day t) const;
    int nt_slot(int node, int time_idx) const {
        return node * static_cast<int>(times.size()) + time_idx;
    }
    Day end_day() const { return t0 + horizon_days; }
};

/// Static OOS network from the scenario: Earth->parking launch arcs,
/// servicer arcs between all orbital node pairs, holdover arcs.
/// Transfers with no feasible phasing solution inside one spaceflight
/// step are omitted with a warning record.
StaticNetwork build_static(const Scenario& scenario);

/// Drop customer nodes with no need in the planning horizon, keeping
/// nodes occupied per the incoming infrastructure state.
StaticNetwork prune_to_demand(const StaticNetwork& net,
                              const std::vector<ServiceNeed>& needs,
                              const std::set<std::string>& occupied_nodes);

DynamicNetwork expand(const StaticNetwork& net, const TimeGrid& grid, Day t0,
                      int horizon_days);

/// Edge-list debug dump (one arc instance per line).
void write_edge_list(const DynamicNetwork& net, std::ostream& out);

}  // namespace oos
