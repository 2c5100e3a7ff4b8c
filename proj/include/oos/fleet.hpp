#pragma once

#include <string>
#include <vector>

namespace oos {

enum class CommodityClass { Continuous, Integer };

/// Non-vehicle commodity: propellants (continuous, tracked in kg) or
/// spares/tools (integer, tracked in units of `unit_mass_kg` each).
struct CommoditySpec {
    std::string name;
    CommodityClass cls = CommodityClass::Continuous;
    double unit_mass_kg = 1.0;     // per unit for integer commodities
    double pdm_usd_per_kg = 0.0;   // purchase/development/manufacturing
    bool is_tool = false;

    double mass_of(double quantity) const {
        return cls == CommodityClass::Continuous ? quantity
                                                 : quantity * unit_mass_kg;
    }
};

enum class VehicleKind { Servicer, Depot, LaunchVehicle };

/// Vehicle commodity. Servicers maneuver and provide services; depots
/// hold position and store commodities; launch vehicles fly
/// Earth->parking only.
struct VehicleSpec {
    std::string name;
    VehicleKind kind = VehicleKind::Servicer;
    double dry_mass_kg = 0.0;                // structure mass s_v (= m_v)
    double pdm_cost_usd = 0.0;               // c_v^pdm per unit
    double operating_cost_usd_per_day = 0.0; // c_v^serv / c_v^depot

    // Servicer fields.
    double isp_s = 0.0;
    double tank_capacity_kg = 0.0;       // own maneuver propellant
    double cargo_propellant_kg = 0.0;    // customer propellant bay
    double cargo_bay_kg = 0.0;           // spares bay, by mass
    int tool_slots = 0;
    std::vector<int> tool_commodities;   // integrated tools (commodity ids)

    // Depot fields.
    double stationkeeping_kg_per_day = 0.0;
    double storage_propellant_servicer_kg = 0.0;  // servicer-fuel store
    double storage_propellant_customer_kg = 0.0;  // customer-fuel store
    int storage_spares = 0;
    int storage_tool_slots = 0;

    // Launch vehicle fields.
    double launch_capacity_kg = 0.0;

    bool is_servicer() const { return kind == VehicleKind::Servicer; }
    bool is_depot() const { return kind == VehicleKind::Depot; }
    bool is_launcher() const { return kind == VehicleKind::LaunchVehicle; }
};

}  // namespace oos
