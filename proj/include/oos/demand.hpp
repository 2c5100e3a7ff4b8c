#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oos/timegrid.hpp"

namespace oos {

enum class ServiceKind { Deterministic, Random };

/// One of the seven notional service categories plus its commercial
/// terms. `interoccurrence_days` is the fixed spacing for deterministic
/// needs or the exponential mean for random ones; <= 0 disables
/// generation for that type.
struct ServiceType {
    std::string name;
    ServiceKind kind = ServiceKind::Deterministic;
    double revenue_usd = 0.0;
    double delay_penalty_usd_per_day = 0.0;
    int duration_days = 10;
    int window_days = 30;
    double interoccurrence_days = 0.0;
    int tool_commodity = -1;        // the single tool able to provide it
    int demand_commodity = -1;      // commodity consumed at the customer
    double demand_quantity = 0.0;   // kg or unit count
};

struct Satellite {
    std::string name;
    double longitude_deg = 0.0;  // deg East in [-180, 180)
    double wet_mass_kg = 0.0;
    std::string stationkeeping_propellant;  // informational
};

/// A dated request for one service at one satellite. `occurrence_day`
/// is always an interval boundary (kT).
struct ServiceNeed {
    std::string id;
    int satellite = -1;      // index into the scenario's satellite table
    int type = -1;           // index into the service-type table
    Day occurrence_day = 0;  // tau_s
};

/// Admissible start nodes: {kT + n*dt : tau_s <= kT <= tau_s + window}.
std::vector<Day> build_window(const ServiceNeed& need, const ServiceType& type,
                              const TimeGrid& grid);

/// Time nodes t with beta = 1 for a service started at `start`:
/// start <= t < floor(start/T)*T + ceil(duration/T)*T. Unclipped; the
/// model intersects with its own node set.
std::vector<Day> build_occupancy(const ServiceType& type, Day start,
                                 const TimeGrid& grid);

/// Regularly spaced needs per (satellite, deterministic type), phased by
/// a seeded uniform offset in [0, interoccurrence) unless an explicit
/// offset is supplied, snapped to interval boundaries.
std::vector<ServiceNeed> generate_deterministic(
    const std::vector<Satellite>& satellites,
    const std::vector<ServiceType>& types, const TimeGrid& grid,
    int horizon_days, Day t0, std::uint64_t seed,
    const std::vector<std::optional<double>>& satellite_offsets = {});

/// Poisson-process needs per (satellite, random type): i.i.d. exponential
/// interarrival gaps with the configured mean, snapped to interval
/// boundaries. Fully reproducible from the seed.
std::vector<ServiceNeed> generate_random(
    const std::vector<Satellite>& satellites,
    const std::vector<ServiceType>& types, const TimeGrid& grid,
    int horizon_days, Day t0, std::uint64_t seed);

/// Deterministic uniform double in [0, 1) from a dedicated stream; also
/// the primitive behind the exponential draws (inverse CDF).
double uniform_draw(std::uint64_t& state);

/// Derive an independent RNG state for (seed, satellite, type, purpose).
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t satellite,
                            std::uint64_t type, std::uint64_t purpose);

double exponential_draw(std::uint64_t& state, double mean);

}  // namespace oos
