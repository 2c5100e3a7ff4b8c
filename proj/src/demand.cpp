#include "oos/demand.hpp"

#include <cmath>
#include <stdexcept>

namespace oos {

namespace {

// splitmix64; stable across platforms, unlike std::distributions.
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t satellite,
                            std::uint64_t type, std::uint64_t purpose) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= (satellite + 1) * 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= (type + 1) * 0xc2b2ae3d27d4eb4fULL;
    h ^= splitmix64(s);
    s ^= (purpose + 1) * 0x165667b19e3779f9ULL;
    h ^= splitmix64(s);
    return h;
}

double uniform_draw(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double exponential_draw(std::uint64_t& state, double mean) {
    if (!(mean > 0.0)) throw std::invalid_argument("exponential mean must be > 0");
    return -mean * std::log1p(-uniform_draw(state));
}

std::vector<Day> build_window(const ServiceNeed& need, const ServiceType& type,
                              const TimeGrid& grid) {
    if (need.occurrence_day % grid.interval_days != 0)
        throw std::invalid_argument(
            "service occurrence must fall on an interval boundary");
    std::vector<Day> window;
    const int offset = grid.flight_steps * grid.dt_days;
    for (Day kt = need.occurrence_day;
         kt <= need.occurrence_day + type.window_days;
         kt += grid.interval_days)
        window.push_back(kt + offset);
    return window;
}

std::vector<Day> build_occupancy(const ServiceType& type, Day start,
                                 const TimeGrid& grid) {
    const int T = grid.interval_days;
    const Day base = (start / T - (start % T < 0 ? 1 : 0)) * T;  // floor
    const int spans = (type.duration_days + T - 1) / T;          // ceil
    const Day end = base + spans * T;
    std::vector<Day> occupied;
    for (Day t = start; t < end; t = grid.next_node(t)) occupied.push_back(t);
    return occupied;
}

std::vector<ServiceNeed> generate_deterministic(
    const std::vector<Satellite>& satellites,
    const std::vector<ServiceType>& types, const TimeGrid& grid,
    int horizon_days, Day t0, std::uint64_t seed,
    const std::vector<std::optional<double>>& satellite_offsets) {
    std::vector<ServiceNeed> needs;
    for (size_t si = 0; si < satellites.size(); ++si) {
        for (size_t ti = 0; ti < types.size(); ++ti) {
            const ServiceType& type = types[ti];
            if (type.kind != ServiceKind::Deterministic) continue;
            if (!(type.interoccurrence_days > 0.0)) continue;
            double offset;
            if (si < satellite_offsets.size() && satellite_offsets[si])
                offset = *satellite_offsets[si];
            else {
                std::uint64_t stream = derive_stream(seed, si, ti, 0xDE7);
                offset = uniform_draw(stream) * type.interoccurrence_days;
            }
            int counter = 0;
            for (double date = offset; ; date += type.interoccurrence_days) {
                Day snapped = grid.snap_to_interval(date);
                if (date > t0 + horizon_days || snapped > t0 + horizon_days)
                    break;
                if (snapped < t0) continue;
                needs.push_back(ServiceNeed{
                    satellites[si].name + "/" + type.name + "#" +
                        std::to_string(counter++),
                    static_cast<int>(si), static_cast<int>(ti), snapped});
            }
        }
    }
    return needs;
}

std::vector<ServiceNeed> generate_random(
    const std::vector<Satellite>& satellites,
    const std::vector<ServiceType>& types, const TimeGrid& grid,
    int horizon_days, Day t0, std::uint64_t seed) {
    std::vector<ServiceNeed> needs;
    for (size_t si = 0; si < satellites.size(); ++si) {
        for (size_t ti = 0; ti < types.size(); ++ti) {
            const ServiceType& type = types[ti];
            if (type.kind != ServiceKind::Random) continue;
            if (!(type.interoccurrence_days > 0.0) ||
                !std::isfinite(type.interoccurrence_days))
                continue;
            std::uint64_t stream = derive_stream(seed, si, ti, 0xA4D);
            int counter = 0;
            for (double date = t0 + exponential_draw(stream, type.interoccurrence_days);
                 ; date += exponential_draw(stream, type.interoccurrence_days)) {
                Day snapped = grid.snap_to_interval(date);
                if (date > t0 + horizon_days || snapped > t0 + horizon_days)
                    break;
                if (snapped < t0) snapped = t0;  // half-down snap at the edge
                needs.push_back(ServiceNeed{
                    satellites[si].name + "/" + type.name + "#" +
                        std::to_string(counter++),
                    static_cast<int>(si), static_cast<int>(ti), snapped});
            }
        }
    }
    return needs;
}

}  // namespace oos
