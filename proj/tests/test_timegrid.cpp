#include <doctest.h>

#include "oos/timegrid.hpp"

using namespace oos;

TEST_CASE("time nodes match the notional expansion") {
    TimeGrid g{1, 10, 2};
    CHECK(g.time_nodes(0, 20) == std::vector<Day>{0, 1, 2, 10, 11, 12, 20});
    CHECK(g.time_nodes(20, 10) == std::vector<Day>{20, 21, 22, 30});
}

TEST_CASE("grid invariants reject degenerate shapes") {
    CHECK_THROWS(TimeGrid{1, 10, 0}.validate());   // no flight steps
    CHECK_THROWS(TimeGrid{5, 10, 2}.validate());   // n*dt == T, empty service step
    CHECK_THROWS(TimeGrid{2, 10, 2}.time_nodes(5, 20));  // off-boundary start
    CHECK_THROWS(TimeGrid{2, 10, 2}.time_nodes(0, 15));  // horizon not k*T
}

TEST_CASE("flight departures and node stepping") {
    TimeGrid g{2, 10, 2};
    CHECK(g.is_flight_departure(0));
    CHECK(g.is_flight_departure(2));
    CHECK(!g.is_flight_departure(4));   // last node of the flight window
    CHECK(!g.is_flight_departure(5));   // not a node at all
    CHECK(g.is_flight_departure(30));
    CHECK(g.next_node(0) == 2);
    CHECK(g.next_node(4) == 10);        // across the service step
    CHECK(g.next_node(10) == 12);
    CHECK(g.is_node(14));
    CHECK(!g.is_node(16));
}

TEST_CASE("round-half-up interval snapping") {
    TimeGrid g{1, 10, 2};
    CHECK(g.snap_to_interval(55.0) == 60);
    CHECK(g.snap_to_interval(54.9) == 50);
    CHECK(g.snap_to_interval(0.0) == 0);
    CHECK(g.snap_to_interval(4.999) == 0);
    CHECK(g.snap_to_interval(5.0) == 10);
}
