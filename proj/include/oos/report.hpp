#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oos/solve.hpp"
#include "oos/verify.hpp"

namespace oos {

struct ItineraryEntry {
    Day t = 0;
    int vehicle = -1;
    std::string location;
    std::string activity;  // hold | transfer-><node> | launch-><node> | service:<id>
    double fuel_kg = 0.0;  // servicer propellant aboard on the departing arc
};

struct ServiceOutcome {
    std::string id;
    std::string satellite;
    std::string type;
    Day occurrence = 0;
    bool served = false;
    Day start = 0;       // when served
    Day end = 0;         // occupancy end
    int vehicle = -1;
    double revenue_usd = 0.0;
    double delay_penalty_usd = 0.0;
};

/// Solved plan in reporting form: per-servicer itineraries, service
/// outcomes, and the re-accounted objective breakdown.
struct ScheduleReport {
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    double gap = 0.0;
    double wall_time_s = 0.0;
    CostBreakdown breakdown;
    std::vector<ItineraryEntry> itinerary;
    std::vector<ServiceOutcome> services;
    std::vector<std::string> validation;  // empty when all checks pass
};

ScheduleReport build_report(const MilpModel& model, const DynamicNetwork& net,
                            const Scenario& scenario, const Solution& solution);

void write_itinerary_csv(const ScheduleReport& report, std::ostream& out);

/// Demand-history export: s, satellite, type, tau_s, chosen tau or
/// "declined", revenue, delay penalty incurred.
void write_services_csv(const std::vector<ServiceOutcome>& services,
                        std::ostream& out);

std::string report_summary_json(const ScheduleReport& report);

}  // namespace oos
