#include <doctest.h>

#include "helpers.hpp"
#include "oos/scenario.hpp"

using namespace oos;
using namespace testkit;

TEST_CASE("scenario JSON save/load round-trip") {
    TinyOpts o;
    o.customers = 3;
    o.servicers = 2;
    o.with_launcher = true;
    Scenario sc = make_tiny(o);
    sc.name = "roundtrip";
    sc.deterministic_offsets[1] = 42.0;

    Scenario back = parse_scenario(scenario_to_json(sc));
    CHECK(back.name == sc.name);
    CHECK(back.grid.dt_days == sc.grid.dt_days);
    CHECK(back.satellites.size() == sc.satellites.size());
    CHECK(back.vehicles.size() == sc.vehicles.size());
    CHECK(back.launch.vehicle == sc.launch.vehicle);
    CHECK(back.deterministic_offsets[1] == sc.deterministic_offsets[1]);
    REQUIRE(back.service_types.size() == sc.service_types.size());
    for (size_t i = 0; i < sc.service_types.size(); ++i) {
        CHECK(back.service_types[i].revenue_usd ==
              sc.service_types[i].revenue_usd);
        CHECK(back.service_types[i].delay_penalty_usd_per_day ==
              sc.service_types[i].delay_penalty_usd_per_day);
        CHECK(back.service_types[i].duration_days ==
              sc.service_types[i].duration_days);
        CHECK(back.service_types[i].window_days ==
              sc.service_types[i].window_days);
        CHECK(back.service_types[i].demand_quantity ==
              sc.service_types[i].demand_quantity);
    }
    const NodeStock& a = sc.initial_state.stock.at("parking");
    const NodeStock& b = back.initial_state.stock.at("parking");
    CHECK(a.vehicles == b.vehicles);
    CHECK(a.commodities == b.commodities);

    // Twice through the serializer is stable text.
    CHECK(scenario_to_json(back) == scenario_to_json(sc));
}

TEST_CASE("missing required fields name the field") {
    const char* no_rev = R"({
      "commodities": [{"name": "T1", "class": "integer", "tool": true},
                       {"name": "bipropellant", "class": "continuous"},
                       {"name": "monopropellant", "class": "continuous"}],
      "parking_nodes": [{"name": "pk", "longitude_deg": 0}],
      "service_types": [{"name": "x", "kind": "deterministic",
                          "duration_days": 10, "window_days": 30, "tool": "T1"}]
    })";
    try {
        parse_scenario(no_rev);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("revenue_usd_m") != std::string::npos);
    }
}

TEST_CASE("schema violations carry field paths") {
    Scenario sc = make_tiny({});
    SUBCASE("tool must be integer-class") {
        sc.commodities[kBiprop].is_tool = true;
        CHECK_THROWS_AS(sc.validate(), ScenarioError);
    }
    SUBCASE("longitude range") {
        sc.satellites[0].longitude_deg = 181.0;
        CHECK_THROWS_AS(sc.validate(), ScenarioError);
    }
    SUBCASE("horizons must be T-multiples") {
        sc.horizons.planning_days = 35;
        sc.horizons.control_days = 35;
        sc.horizons.scheduling_days = 35;
        CHECK_THROWS_AS(sc.validate(), ScenarioError);
    }
    SUBCASE("in-progress servicer must sit at the customer node") {
        InProgressService ip;
        ip.need_id = "pre";
        ip.vehicle = sc.vehicle_id("S1");
        ip.service_type = kRefuel;
        ip.node = "sat1";  // but S1 is placed at parking
        sc.initial_state.in_progress.push_back(ip);
        CHECK_THROWS_AS(sc.validate(), ScenarioError);
    }
    SUBCASE("launch period must align with the interval") {
        TinyOpts o;
        o.with_launcher = true;
        Scenario lsc = make_tiny(o);
        lsc.launch.period_days = 25;
        CHECK_THROWS_AS(lsc.validate(), ScenarioError);
    }
}

TEST_CASE("initial investment covers pre-deployed pdm and launch") {
    TinyOpts o;
    o.customers = 1;
    o.servicers = 1;
    o.fuel_stock_kg = 1000.0;
    o.mono_stock_kg = 0.0;
    o.spare_stock = 0;
    Scenario sc = make_tiny(o);
    sc.initial_state.stock["parking"].commodities[kTool] = 1;
    // vehicles: S1 (50M + 11300*2000) + depot (200M + 11300*5000)
    // commodities: biprop 1000 kg * (180 + 11300) + tool 100 kg * (1000 + 11300)
    const double expect = 50e6 + 11300.0 * 2000.0 + 200e6 + 11300.0 * 5000.0 +
                          1000.0 * (180.0 + 11300.0) + 100.0 * (1000.0 + 11300.0);
    CHECK(initial_investment_usd(sc) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("save/load through a file") {
    Scenario sc = make_tiny({});
    auto dir = fresh_workdir("scenario");
    save_scenario(sc, dir / "s.json");
    Scenario back = load_scenario(dir / "s.json");
    CHECK(back.satellites.size() == sc.satellites.size());
    CHECK_THROWS_AS(load_scenario(dir / "missing.json"), ScenarioError);
}
