#pragma once

#include <map>
#include <string>
#include <vector>

#include "oos/timegrid.hpp"

namespace oos {

/// Rolling-horizon lengths, all multiples of T. CH is the automatic
/// re-plan period when no random need interrupts.
struct HorizonConfig {
    int planning_days = 100;    // PH
    int control_days = 60;      // CH
    int scheduling_days = 1825; // SH

    void validate() const;
};

/// Everything stored at one static node at one date.
struct NodeStock {
    std::map<int, int> vehicles;        // vehicle id -> count
    std::map<int, double> commodities;  // commodity id -> kg or units
};

/// A service started in an earlier planning horizon whose occupancy
/// extends past the hand-off date. The servicer stays pinned at `node`
/// for the remaining occupancy nodes; cash was realized at the start.
struct InProgressService {
    std::string need_id;
    int vehicle = -1;
    int service_type = -1;
    Day start_day = 0;
    std::string node;
    std::vector<Day> remaining_occupancy;
};

/// Position and quantity of every commodity at `date`; the object handed
/// from one control horizon to the next planning horizon.
struct InfrastructureState {
    Day date = 0;
    std::map<std::string, NodeStock> stock;  // node id -> contents
    std::vector<InProgressService> in_progress;
};

}  // namespace oos
