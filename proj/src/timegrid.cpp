#include "oos/timegrid.hpp"

#include <cmath>
#include <stdexcept>

namespace oos {

void TimeGrid::validate() const {
    if (dt_days <= 0 || interval_days <= 0 || flight_steps <= 0)
        throw std::invalid_argument("time grid fields must be positive");
    if (flight_steps * dt_days >= interval_days)
        throw std::invalid_argument(
            "time grid requires n*dt < T (a nonempty service step)");
}

std::vector<Day> TimeGrid::time_nodes(Day t0, int horizon_days) const {
    validate();
    if (t0 % interval_days != 0 || horizon_days % interval_days != 0 ||
        horizon_days <= 0)
        throw std::invalid_argument(
            "t0 and horizon must be positive multiples of T");
    std::vector<Day> nodes;
    const int intervals = horizon_days / interval_days;
    nodes.reserve(static_cast<size_t>(intervals) * (flight_steps + 1) + 1);
    for (int k = 0; k < intervals; ++k)
        for (int j = 0; j <= flight_steps; ++j)
            nodes.push_back(t0 + k * interval_days + j * dt_days);
    nodes.push_back(t0 + horizon_days);
    return nodes;
}

bool TimeGrid::is_node(Day t) const {
    int rel = t % interval_days;
    if (rel < 0) rel += interval_days;
    return rel % dt_days == 0 && rel <= flight_steps * dt_days;
}

bool TimeGrid::is_flight_departure(Day t) const {
    int rel = t % interval_days;
    if (rel < 0) rel += interval_days;
    return rel % dt_days == 0 && rel < flight_steps * dt_days;
}

Day TimeGrid::next_node(Day t) const {
    if (!is_node(t)) throw std::invalid_argument("t is not a time node");
    int rel = t % interval_days;
    if (rel < 0) rel += interval_days;
    if (rel < flight_steps * dt_days) return t + dt_days;
    return t + (interval_days - flight_steps * dt_days);
}

Day TimeGrid::snap_to_interval(double date) const {
    return static_cast<Day>(std::floor(date / interval_days + 0.5)) *
           interval_days;
}

}  // namespace oos
