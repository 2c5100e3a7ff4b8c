#include <cmath>
#include <map>

#include <doctest.h>

#include "oos/demand.hpp"

using namespace oos;

namespace {

ServiceType refueling_40d() {
    ServiceType t;
    t.name = "refueling";
    t.kind = ServiceKind::Deterministic;
    t.duration_days = 40;
    t.window_days = 10;
    return t;
}

}  // namespace

TEST_CASE("service window offsets by the flight steps") {
    TimeGrid grid{1, 10, 2};
    ServiceNeed need{"s0", 0, 0, 20};
    auto w = build_window(need, refueling_40d(), grid);
    CHECK(w == std::vector<Day>{22, 32});

    ServiceType zero = refueling_40d();
    zero.window_days = 0;
    CHECK(build_window(need, zero, grid) == std::vector<Day>{22});

    TimeGrid grid2{2, 10, 2};
    ServiceNeed at0{"s1", 0, 0, 0};
    ServiceType w30 = refueling_40d();
    w30.window_days = 30;
    CHECK(build_window(at0, w30, grid2) == std::vector<Day>{4, 14, 24, 34});
}

TEST_CASE("occupancy rows reproduce the notional 40-day service") {
    TimeGrid grid{1, 10, 2};
    auto row22 = build_occupancy(refueling_40d(), 22, grid);
    CHECK(row22 == std::vector<Day>{22, 30, 31, 32, 40, 41, 42, 50, 51, 52});
    auto row32 = build_occupancy(refueling_40d(), 32, grid);
    CHECK(row32 == std::vector<Day>{32, 40, 41, 42, 50, 51, 52, 60, 61, 62});
}

TEST_CASE("occupancy of a one-interval service is its start node only") {
    TimeGrid grid{1, 10, 2};
    ServiceType t = refueling_40d();
    t.duration_days = 10;
    CHECK(build_occupancy(t, 22, grid) == std::vector<Day>{22});
    // Duration rounding is conservative: 11 days occupy two intervals.
    t.duration_days = 11;
    CHECK(build_occupancy(t, 22, grid) ==
          std::vector<Day>{22, 30, 31, 32, 40, 41, 42});
}

TEST_CASE("deterministic needs are regularly spaced and snapped") {
    TimeGrid grid{1, 10, 2};
    std::vector<Satellite> sats{{"sat", 0.0, 2000.0, ""}};
    ServiceType t;
    t.name = "svc";
    t.kind = ServiceKind::Deterministic;

    SUBCASE("long interoccurrence fires once") {
        t.interoccurrence_days = 2100.0;
        auto needs = generate_deterministic(sats, {t}, grid, 1820, 0, 7,
                                            {std::optional<double>(0.0)});
        REQUIRE(needs.size() == 1);
        CHECK(needs[0].occurrence_day == 0);
    }
    SUBCASE("arithmetic progression") {
        t.interoccurrence_days = 100.0;
        auto needs = generate_deterministic(sats, {t}, grid, 360, 0, 7,
                                            {std::optional<double>(0.0)});
        REQUIRE(needs.size() == 4);
        CHECK(needs[0].occurrence_day == 0);
        CHECK(needs[1].occurrence_day == 100);
        CHECK(needs[2].occurrence_day == 200);
        CHECK(needs[3].occurrence_day == 300);
    }
    SUBCASE("offset 55 snaps half-up to 60") {
        t.interoccurrence_days = 1000.0;
        auto needs = generate_deterministic(sats, {t}, grid, 900, 0, 7,
                                            {std::optional<double>(55.0)});
        REQUIRE(!needs.empty());
        CHECK(needs[0].occurrence_day == 60);
    }
}

TEST_CASE("random needs are reproducible and disabled by a nonpositive mean") {
    TimeGrid grid{1, 10, 2};
    std::vector<Satellite> sats{{"a", 0.0, 0.0, ""}, {"b", 10.0, 0.0, ""}};
    ServiceType t;
    t.name = "repair";
    t.kind = ServiceKind::Random;
    t.interoccurrence_days = 400.0;

    auto n1 = generate_random(sats, {t}, grid, 1820, 0, 42);
    auto n2 = generate_random(sats, {t}, grid, 1820, 0, 42);
    REQUIRE(n1.size() == n2.size());
    for (size_t i = 0; i < n1.size(); ++i) {
        CHECK(n1[i].id == n2[i].id);
        CHECK(n1[i].occurrence_day == n2[i].occurrence_day);
        CHECK(n1[i].occurrence_day % grid.interval_days == 0);
    }
    auto n3 = generate_random(sats, {t}, grid, 1820, 0, 43);
    CHECK(n1.size() != n3.size());  // different realization (holds for these seeds)

    t.interoccurrence_days = 0.0;  // disabled sentinel
    CHECK(generate_random(sats, {t}, grid, 1820, 0, 42).empty());
}

TEST_CASE("empirical interarrival mean within 5% over 1000 draws") {
    const double mean = 9020.0;
    double total = 0.0;
    int count = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::uint64_t state = derive_stream(seed, 3, 1, 0xA4D);
        for (int i = 0; i < 100; ++i) {
            total += exponential_draw(state, mean);
            ++count;
        }
    }
    CHECK(count == 1000);
    const double empirical = total / count;
    CHECK(std::abs(empirical - mean) / mean < 0.05);
}

TEST_CASE("law of large numbers for the fleet repair rate") {
    // 142 satellites, 5-year horizon, mean 9020 days: expected count per
    // realization is 142*1825/9020, about 28.7.
    TimeGrid grid{2, 10, 2};
    std::vector<Satellite> sats;
    for (int i = 0; i < 142; ++i)
        sats.push_back({"sat" + std::to_string(i), i * 2.0 - 140.0, 0.0, ""});
    ServiceType t;
    t.name = "repair";
    t.kind = ServiceKind::Random;
    t.interoccurrence_days = 9020.0;

    double total = 0.0;
    const int reps = 60;
    for (std::uint64_t seed = 1; seed <= reps; ++seed)
        total += static_cast<double>(
            generate_random(sats, {t}, grid, 1820, 0, seed).size());
    const double expected = 142.0 * 1820.0 / 9020.0;
    CHECK(std::abs(total / reps - expected) / expected < 0.05);
}
