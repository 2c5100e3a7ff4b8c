#pragma once

#include <vector>

namespace oos {

/// Absolute simulation date in whole days.
using Day = int;

/// Discretization of the planning horizon. Each service interval of T
/// days opens with n spaceflight steps of dt days each (vehicles may fly
/// only there); the remaining T - n*dt days form the flight-free service
/// step. Time nodes per interval starting at k*T are
/// {kT, kT+dt, ..., kT+n*dt}; the horizon end contributes its boundary
/// node only.
struct TimeGrid {
    int dt_days = 1;        // spaceflight step length (delta-t)
    int interval_days = 10; // service time interval (T)
    int flight_steps = 2;   // spaceflight steps per interval (n)

    void validate() const;

    /// All time nodes of a dynamic network spanning [t0, t0 + horizon].
    /// t0 and horizon must be multiples of T.
    std::vector<Day> time_nodes(Day t0, int horizon_days) const;

    /// True when t is a time node of a grid anchored at a multiple of T.
    bool is_node(Day t) const;

    /// True when a transport arc may depart at t (t = kT + j*dt, j < n).
    bool is_flight_departure(Day t) const;

    /// The next time node strictly after t (t must be a node).
    Day next_node(Day t) const;

    /// Round-half-up to the nearest multiple of T.
    Day snap_to_interval(double date) const;
};

}  // namespace oos
