#include <algorithm>
#include <set>
#include <sstream>

#include <doctest.h>

#include "helpers.hpp"
#include "oos/network.hpp"

using namespace oos;
using namespace testkit;

TEST_CASE("minimal network: launch plus holdover arcs only") {
    TinyOpts o;
    o.customers = 0;
    o.servicers = 0;
    o.with_launcher = true;
    Scenario sc = make_tiny(o);
    StaticNetwork net = build_static(sc);
    REQUIRE(net.nodes.size() == 2);  // earth + parking
    bool launch = false;
    int holdovers = 0;
    for (const auto& a : net.arcs) {
        if (a.kind == ArcKind::Transport) {
            CHECK(net.nodes[a.from].kind == NodeKind::Earth);
            CHECK(net.nodes[a.to].kind == NodeKind::Parking);
            launch = true;
        } else {
            ++holdovers;
        }
    }
    CHECK(launch);
    CHECK(holdovers >= 1);  // depot holdover at parking (plus spent-LV lane)
}

TEST_CASE("equal longitudes give a zero delta-v inter-customer arc") {
    TinyOpts o;
    o.customers = 2;
    Scenario sc = make_tiny(o);
    sc.satellites[1].longitude_deg = sc.satellites[0].longitude_deg;
    StaticNetwork net = build_static(sc);
    const int a = net.node_id("sat1"), b = net.node_id("sat2");
    bool found = false;
    for (const auto& arc : net.arcs)
        if (arc.kind == ArcKind::Transport && arc.from == a && arc.to == b) {
            CHECK(arc.delta_v_kms == doctest::Approx(0.0).epsilon(1e-12));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("arc delta-v matches the phasing solver in both directions") {
    Scenario sc = make_tiny({});
    sc.parking_nodes[0].longitude_deg = -170.0;
    sc.satellites[0].longitude_deg = -100.0;
    StaticNetwork net = build_static(sc);
    const double tof = sc.grid.dt_days * constants::seconds_per_day;
    const int p = net.node_id("parking"), c = net.node_id("sat1");
    int checked = 0;
    for (const auto& arc : net.arcs) {
        if (arc.kind != ArcKind::Transport) continue;
        if ((arc.from == p && arc.to == c) || (arc.from == c && arc.to == p)) {
            const double alpha =
                transfer_alpha_rad(net.nodes[arc.from].longitude_deg,
                                   net.nodes[arc.to].longitude_deg);
            auto expect = solve_phasing(alpha, sc.geometry, tof);
            CHECK(arc.delta_v_kms ==
                  doctest::Approx(expect.delta_v_kms).epsilon(1e-12));
            ++checked;
        }
    }
    CHECK(checked >= 2);
}

TEST_CASE("infeasible transfers are omitted with a warning") {
    Scenario sc = make_tiny({});
    sc.geometry.r_crit_km = 41000.0;  // floor close to GEO: tight phasing only
    sc.grid.dt_days = 1;              // within one sidereal day
    StaticNetwork net = build_static(sc);
    CHECK(!net.warnings.empty());
}

TEST_CASE("pruning keeps needy and occupied customers") {
    TinyOpts o;
    o.customers = 4;
    Scenario sc = make_tiny(o);
    StaticNetwork net = build_static(sc);
    std::vector<ServiceNeed> needs{need(sc, "n1", "sat2", kQuick, 0)};

    SUBCASE("only the needy satellite is retained") {
        StaticNetwork pruned = prune_to_demand(net, needs, {});
        CHECK(pruned.node_id("sat2") >= 0);
        CHECK(pruned.node_id("sat1") < 0);
        CHECK(pruned.node_id("sat3") < 0);
        CHECK(pruned.node_id("parking") >= 0);
    }
    SUBCASE("occupied nodes survive") {
        StaticNetwork pruned = prune_to_demand(net, needs, {"sat3"});
        CHECK(pruned.node_id("sat3") >= 0);
        CHECK(pruned.node_id("sat1") < 0);
    }
    SUBCASE("zero needs leave infrastructure nodes only") {
        StaticNetwork pruned = prune_to_demand(net, {}, {});
        for (const auto& n : pruned.nodes)
            CHECK(n.kind != NodeKind::Customer);
    }
    SUBCASE("all needy is the identity on nodes") {
        std::vector<ServiceNeed> all;
        for (int i = 1; i <= 4; ++i)
            all.push_back(need(sc, "n" + std::to_string(i),
                               "sat" + std::to_string(i), kQuick, 0));
        StaticNetwork pruned = prune_to_demand(net, all, {});
        CHECK(pruned.nodes.size() == net.nodes.size());
        CHECK(pruned.arcs.size() == net.arcs.size());
    }
}

TEST_CASE("expansion instantiates transport arcs on flight steps only") {
    TinyOpts o;
    o.customers = 1;
    o.dt = 1;
    o.horizon = 20;
    Scenario sc = make_tiny(o);
    DynamicNetwork dyn = expand(build_static(sc), sc.grid, 0, 20);
    CHECK(dyn.times == std::vector<Day>{0, 1, 2, 10, 11, 12, 20});

    for (const auto& a : dyn.arcs) {
        CHECK(dyn.time_index(a.depart) >= 0);
        CHECK(dyn.time_index(a.arrive) >= 0);
        if (!a.is_holdover()) {
            CHECK(sc.grid.is_flight_departure(a.depart));
            CHECK(a.arrive == a.depart + sc.grid.dt_days);
        } else {
            CHECK(a.arrive == sc.grid.next_node(a.depart));
        }
    }

    // A transport arc departing t=10 arrives at an existing node t=11.
    bool seen = false;
    for (const auto& a : dyn.arcs)
        if (!a.is_holdover() && a.depart == 10) {
            CHECK(a.arrive == 11);
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("holdover lanes exist at every orbital node and time") {
    TinyOpts o;
    o.customers = 2;
    o.horizon = 30;
    Scenario sc = make_tiny(o);
    DynamicNetwork dyn = expand(build_static(sc), sc.grid, 0, 30);
    for (size_t ni = 0; ni < dyn.base.nodes.size(); ++ni) {
        if (dyn.base.nodes[ni].kind == NodeKind::Earth) continue;
        for (Day t : dyn.times) {
            if (t >= 30) break;
            bool any = false;
            for (const auto& a : dyn.arcs)
                if (a.is_holdover() && a.from == static_cast<int>(ni) &&
                    a.depart == t)
                    any = true;
            CHECK(any);
        }
    }
}

TEST_CASE("launch arcs appear only at launch windows") {
    TinyOpts o;
    o.customers = 1;
    o.with_launcher = true;
    o.dt = 2;
    o.horizon = 60;
    Scenario sc = make_tiny(o);
    DynamicNetwork dyn = expand(build_static(sc), sc.grid, 0, 60);
    std::set<Day> launch_departs;
    for (const auto& a : dyn.arcs)
        if (!a.is_holdover() &&
            dyn.base.nodes[a.from].kind == NodeKind::Earth)
            launch_departs.insert(a.depart);
    CHECK(launch_departs == std::set<Day>{0, 30});
}

TEST_CASE("degenerate grid is rejected") {
    Scenario sc = make_tiny({});
    TimeGrid bad{1, 10, 0};
    CHECK_THROWS(expand(build_static(sc), bad, 0, 30));
}

TEST_CASE("edge list export lists every arc") {
    TinyOpts o;
    o.customers = 1;
    o.horizon = 20;
    Scenario sc = make_tiny(o);
    DynamicNetwork dyn = expand(build_static(sc), sc.grid, 0, 20);
    std::ostringstream os;
    write_edge_list(dyn, os);
    std::string text = os.str();
    size_t lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == dyn.arcs.size() + 1);  // header
}

TEST_CASE("arc count grows linearly with the horizon") {
    TinyOpts o;
    o.customers = 2;
    auto arcs_at = [&](int horizon) {
        Scenario sc = make_tiny(o);
        return expand(build_static(sc), sc.grid, 0, horizon).arcs.size();
    };
    const size_t a30 = arcs_at(30), a60 = arcs_at(60), a90 = arcs_at(90);
    CHECK(a60 - a30 == a90 - a60);  // constant increment per interval
}

TEST_CASE("duplicate node ids are rejected") {
    Scenario sc = make_tiny({});
    sc.satellites[0].name = "parking";
    CHECK_THROWS(build_static(sc));
}
