#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "stripes/grid_set.hpp"
#include "stripes/periodic_set.hpp"

using namespace stripes;

TEST_CASE("empty and full sets") {
    auto e = PeriodicSet1D::empty(3.0);
    auto f = PeriodicSet1D::full(3.0);
    CHECK(e.is_empty());
    CHECK(f.is_full());
    CHECK(e.measure() == 0.0);
    CHECK(f.measure() == 3.0);
    CHECK(e.perimeter_count() == 0);
    CHECK(f.perimeter_count() == 0);
    CHECK_FALSE(e.contains(1.0));
    CHECK(f.contains(1.0));
    CHECK(e.complement() == f);
    CHECK(f.complement() == e);
    CHECK(e.boundary().empty());
    CHECK(e.min_feature() == 0.0);
    CHECK_THROWS_AS(PeriodicSet1D::empty(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicSet1D::empty(-1.0), std::invalid_argument);
}

TEST_CASE("single interval: arcs, membership, boundary features") {
    PeriodicSet1D s(3.0, {{1.0, 2.0}});
    CHECK(s.measure() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.arc_count() == 1);
    CHECK(s.perimeter_count() == 2);
    // right-continuous: the set is [1, 2)
    CHECK(s.contains(1.0));
    CHECK(s.contains(1.999));
    CHECK_FALSE(s.contains(2.0));
    CHECK_FALSE(s.contains(0.5));
    CHECK(s.contains(4.5)); // periodicity: 4.5 = 1.5 mod 3

    auto bd = s.boundary();
    REQUIRE(bd.size() == 2);
    CHECK(bd[0].x == 1.0);
    CHECK(bd[0].is_left);
    CHECK(bd[0].width == doctest::Approx(1.0));
    CHECK(bd[0].gap == doctest::Approx(2.0));
    CHECK(bd[1].x == 2.0);
    CHECK_FALSE(bd[1].is_left);
    CHECK(bd[1].width == doctest::Approx(1.0));
    CHECK(bd[1].gap == doctest::Approx(2.0));
    CHECK(s.min_feature() == doctest::Approx(1.0));
}

TEST_CASE("touching intervals merge; tiny gaps stay gaps") {
    PeriodicSet1D merged(3.0, {{0.0, 1.0}, {1.0, 2.0}});
    CHECK(merged.arc_count() == 1);
    CHECK(merged.measure() == doctest::Approx(2.0));

    PeriodicSet1D gapped(3.0, {{0.0, 1.0}, {1.0 + 1e-7, 2.0}});
    CHECK(gapped.arc_count() == 2);
    CHECK(gapped.perimeter_count() == 4);
}

TEST_CASE("arcs crossing the period seam merge into one wrapping arc") {
    PeriodicSet1D s(3.0, {{0.0, 1.0}, {2.0, 3.0}});
    CHECK(s.arc_count() == 1);
    CHECK(s.perimeter_count() == 2);
    CHECK(s.measure() == doctest::Approx(2.0));
    CHECK(s.contains(0.0));
    CHECK(s.contains(2.5));
    CHECK(s.contains(0.999));
    CHECK_FALSE(s.contains(1.0)); // exit point, right-continuous
    CHECK_FALSE(s.contains(1.5));
    CHECK(s.contains(2.0));

    auto a = s.arcs();
    REQUIRE(a.size() == 1);
    CHECK(a[0].first == doctest::Approx(2.0));
    CHECK(a[0].second == doctest::Approx(4.0));

    auto parts = s.split_intervals();
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == doctest::Approx(0.0));
    CHECK(parts[0].second == doctest::Approx(1.0));
    CHECK(parts[1].first == doctest::Approx(2.0));
    CHECK(parts[1].second == doctest::Approx(3.0));

    auto bd = s.boundary();
    REQUIRE(bd.size() == 2);
    // left endpoint of the wrap arc at x = 2, gap before it is (1, 2)
    CHECK(bd[0].x == doctest::Approx(2.0));
    CHECK(bd[0].is_left);
    CHECK(bd[0].width == doctest::Approx(2.0));
    CHECK(bd[0].gap == doctest::Approx(1.0));
    CHECK(bd[1].x == doctest::Approx(1.0));
    CHECK_FALSE(bd[1].is_left);
}

TEST_CASE("interval wrapping in the input is normalized") {
    PeriodicSet1D a(3.0, {{2.5, 3.5}});
    CHECK(a.arc_count() == 1);
    CHECK(a.measure() == doctest::Approx(1.0));
    CHECK(a.contains(0.25));
    CHECK(a.contains(2.75));
    CHECK_FALSE(a.contains(1.0));

    PeriodicSet1D b(3.0, {{-0.5, 0.5}});
    CHECK(b == a);

    // a full cover through one long interval
    PeriodicSet1D c(3.0, {{0.5, 3.5}});
    CHECK(c.is_full());
    CHECK_THROWS_AS(PeriodicSet1D(3.0, {{1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("translation and complement") {
    PeriodicSet1D s(3.0, {{1.0, 2.0}});
    auto t = s.translated(2.0); // [3, 4] = [0, 1] mod 3
    CHECK(t.contains(0.5));
    CHECK_FALSE(t.contains(1.5));
    CHECK(t.measure() == doctest::Approx(1.0));

    auto u = s.translated(-1.5); // [-0.5, 0.5]: wraps
    CHECK(u.arc_count() == 1);
    CHECK(u.contains(0.25));
    CHECK(u.contains(2.75));

    auto c = s.complement();
    CHECK(c.measure() == doctest::Approx(2.0));
    CHECK(c.arc_count() == 1);
    CHECK(c.contains(0.5));
    CHECK_FALSE(c.contains(1.5));
    CHECK(c.contains(2.0)); // boundary flips to the complement's interior
    CHECK(c.complement() == s);
}

TEST_CASE("stripe construction") {
    auto s = make_stripes(0.5, 3.0);
    CHECK(s.arc_count() == 3);
    CHECK(s.perimeter_count() == 6);
    CHECK(s.measure() == doctest::Approx(1.5));
    CHECK(s.contains(0.25));
    CHECK_FALSE(s.contains(0.75));
    CHECK(s.contains(1.25));
    for (const auto& bp : s.boundary()) {
        CHECK(bp.width == doctest::Approx(0.5));
        CHECK(bp.gap == doctest::Approx(0.5));
    }

    auto cell = make_stripes(1.3);
    CHECK(cell.period() == doctest::Approx(2.6));
    CHECK(cell.arc_count() == 1);
    CHECK(cell.measure() == doctest::Approx(1.3));

    // half-period survives a slightly perturbed but commensurate request
    auto snapped = make_stripes(0.5 * (1 + 2e-10), 3.0);
    CHECK(snapped == s);
}

TEST_CASE("incommensurate stripe requests carry the nearest alternatives") {
    try {
        make_stripes(0.7, 3.0); // L/(2h) = 2.142857...
        FAIL("expected IncommensurateError");
    } catch (const IncommensurateError& err) {
        CHECK(err.nearest_narrower() == doctest::Approx(0.5));  // N = 3
        CHECK(err.nearest_wider() == doctest::Approx(0.75));    // N = 2
    }
    try {
        make_stripes(2.0, 3.0); // L/(2h) = 0.75 < 1
        FAIL("expected IncommensurateError");
    } catch (const IncommensurateError& err) {
        CHECK(err.nearest_narrower() == doctest::Approx(1.5)); // N = 1
        CHECK(std::isinf(err.nearest_wider()));
    }
    CHECK_THROWS_AS(make_stripes(-1.0, 3.0), std::invalid_argument);
}

TEST_CASE("intersection and symmetric difference") {
    PeriodicSet1D a(3.0, {{0.0, 1.0}, {1.5, 2.0}});
    PeriodicSet1D b(3.0, {{0.5, 1.8}});
    // overlap: [0.5, 1.0] and [1.5, 1.8]
    CHECK(intersection_measure(a, b) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(sym_diff_measure(a, b) == doctest::Approx(1.5 + 1.3 - 1.6).epsilon(1e-14));
    CHECK(sym_diff_measure(a, a) == doctest::Approx(0.0));

    // partition identity |E ^ F| + |E ^ F^c| = |E|, including wrap arcs
    PeriodicSet1D w(3.0, {{2.5, 3.6}});
    for (const auto* e : {&a, &b, &w}) {
        for (const auto* f : {&a, &b, &w}) {
            double lhs = intersection_measure(*e, *f) + intersection_measure(*e, f->complement());
            CHECK(lhs == doctest::Approx(e->measure()).epsilon(1e-13));
        }
    }

    PeriodicSet1D other(2.0, {{0.0, 1.0}});
    CHECK_THROWS_AS(intersection_measure(a, other), std::invalid_argument);
}

TEST_CASE("overlap cap at boundary points") {
    PeriodicSet1D s(3.0, {{0.0, 1.0}, {1.5, 2.0}});
    // right endpoint x = 1: arc of width 1 on the left, gap 0.5 on the right
    CHECK(overlap_cap(s, 1.0, 0.3) == doctest::Approx(0.3));
    CHECK(overlap_cap(s, 1.0, 2.0) == doctest::Approx(1.0));
    CHECK(overlap_cap(s, 1.0, -0.2) == doctest::Approx(0.2));
    CHECK(overlap_cap(s, 1.0, -0.7) == doctest::Approx(0.5));
    CHECK(overlap_cap(s, 1.0, 0.0) == doctest::Approx(0.0));
    // left endpoint x = 1.5: gap 0.5 on the left, arc 0.5 on the right
    CHECK(overlap_cap(s, 1.5, 0.3) == doctest::Approx(0.3));
    CHECK(overlap_cap(s, 1.5, 0.8) == doctest::Approx(0.5));
    CHECK(overlap_cap(s, 1.5, -0.1) == doctest::Approx(0.1));
    CHECK(overlap_cap(s, 1.5, -3.0) == doctest::Approx(0.5));
    // left endpoint x = 0 of the first arc: gap before it is (2, 3)
    CHECK(overlap_cap(s, 0.0, 0.4) == doctest::Approx(0.4));
    CHECK(overlap_cap(s, 3.0, 0.4) == doctest::Approx(0.4)); // same point mod L
    CHECK(overlap_cap(s, 0.0, -5.0) == doctest::Approx(1.0));

    CHECK_THROWS_AS(overlap_cap(s, 0.7, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(s.boundary_at(2.6), std::invalid_argument);
    CHECK(s.boundary_at(2.0 + 1e-10).x == doctest::Approx(2.0));
}

TEST_CASE("difference profile of the canonical stripe cell") {
    auto s = make_stripes(1.0); // [0, 1) in a period of 2
    auto prof = difference_profile(s);
    CHECK(prof.period == doctest::Approx(2.0));
    // tent: 2z on [0, 1], 2(2 - z) on [1, 2]
    CHECK(prof(0.0) == doctest::Approx(0.0));
    CHECK(prof(0.25) == doctest::Approx(0.5));
    CHECK(prof(1.0) == doctest::Approx(2.0));
    CHECK(prof(1.75) == doctest::Approx(0.5));
    CHECK(prof(2.25) == doctest::Approx(0.5));  // periodic continuation
    CHECK(prof(-0.25) == doctest::Approx(0.5)); // negative arguments
    CHECK(prof.mean() == doctest::Approx(1.0));
    CHECK(prof.max_value() == doctest::Approx(2.0));
    CHECK(prof.min_value() == doctest::Approx(0.0));
}

TEST_CASE("difference profile is exact between breakpoints") {
    PeriodicSet1D s(3.0, {{0.2, 1.0}, {1.7, 2.3}});
    auto prof = difference_profile(s);
    for (double z : {0.13, 0.37, 0.91, 1.46, 2.08, 2.77}) {
        double direct = sym_diff_measure(s, s.translated(-z));
        CHECK(prof(z) == doctest::Approx(direct).epsilon(1e-12));
    }
    CHECK(prof(0.0) == doctest::Approx(0.0));
    // difference profile of the complement is identical
    auto cprof = difference_profile(s.complement());
    for (double z : {0.37, 1.46, 2.77}) CHECK(cprof(z) == doctest::Approx(prof(z)).epsilon(1e-12));

    auto eprof = difference_profile(PeriodicSet1D::empty(3.0));
    CHECK(eprof(1.3) == 0.0);
    CHECK(eprof.mean() == 0.0);
}

TEST_CASE("periodic set JSON round trip") {
    PeriodicSet1D wrap(3.0, {{2.5, 3.6}});
    nlohmann::ordered_json j;
    to_json(j, wrap);
    CHECK(j["L"] == 3.0);
    CHECK(j["intervals"].size() == 2);
    CHECK(j["fill"] == false);
    CHECK(set_from_json(j) == wrap);

    nlohmann::ordered_json je;
    to_json(je, PeriodicSet1D::empty(2.0));
    CHECK(set_from_json(je).is_empty());
    nlohmann::ordered_json jf;
    to_json(jf, PeriodicSet1D::full(2.0));
    CHECK(set_from_json(jf).is_full());

    auto parsed = set_from_json(nlohmann::json::parse(R"({"L":3,"intervals":[[0,1]],"fill":false})"));
    CHECK(parsed.measure() == doctest::Approx(1.0));
    CHECK_THROWS(set_from_json(nlohmann::json::parse(R"({"L":3,"intervals":[[0]],"fill":false})")));
}

TEST_CASE("grid sets: construction, volume, cyclic indexing") {
    GridSetND g = GridSetND::filled(2, 4, 2.0, false);
    CHECK(g.cell_count() == 16);
    CHECK(g.volume() == 0.0);
    g.set(std::array{1, 2}, true);
    g.set(std::array{3, 0}, true);
    CHECK(g.volume() == doctest::Approx(2 * 0.25));
    CHECK(g.at(std::array{1, 2}));
    CHECK(g.at(std::array{-3, 6})); // cyclic: (-3, 6) = (1, 2) mod 4
    CHECK_FALSE(g.at(std::array{0, 0}));
    CHECK_THROWS_AS(GridSetND(2, 3, 2.0, std::vector<std::uint8_t>(8, 0)), std::invalid_argument);
    CHECK_THROWS_AS(GridSetND(2, 3, -1.0, std::vector<std::uint8_t>(9, 0)), std::invalid_argument);
}

TEST_CASE("grid slices produce periodic sets, wrapping across the seam") {
    GridSetND g = GridSetND::filled(2, 4, 2.0, false);
    // row i1 = 1 occupied at i0 in {0, 1, 3}: slice along axis 0 wraps
    g.set(std::array{0, 1}, true);
    g.set(std::array{1, 1}, true);
    g.set(std::array{3, 1}, true);
    auto line = g.slice(0, std::array{1});
    CHECK(line.period() == doctest::Approx(2.0));
    CHECK(line.measure() == doctest::Approx(1.5));
    CHECK(line.arc_count() == 1);
    CHECK(line.perimeter_count() == 2);
    CHECK(line.contains(0.1));
    CHECK(line.contains(1.9));
    CHECK_FALSE(line.contains(1.2));

    auto empty_line = g.slice(0, std::array{2});
    CHECK(empty_line.is_empty());

    auto col = g.slice(1, std::array{0}); // i0 = 0 row: occupied at i1 = 1 only
    CHECK(col.measure() == doctest::Approx(0.5));
    CHECK(col.arc_count() == 1);

    for (int i = 0; i < 4; ++i) g.set(std::array{i, 3}, true);
    CHECK(g.slice(0, std::array{3}).is_full());
    CHECK_THROWS_AS(g.slice(2, std::array{0}), std::invalid_argument);
}

TEST_CASE("grid directional perimeter counts sign changes") {
    // vertical stripes of one-cell width h = 0.5 on a 4x4 grid over [0, 2]^2
    GridSetND g = GridSetND::filled(2, 4, 2.0, false);
    for (int i0 = 0; i0 < 4; ++i0)
        for (int i1 : {0, 1}) g.set(std::array{i0, i1}, true);
    CHECK(g.directional_perimeter(0) == doctest::Approx(0.0));
    CHECK(g.directional_perimeter(1) == doctest::Approx(4.0)); // two interfaces x length 2
    CHECK(g.perimeter_l1() == doctest::Approx(4.0));

    GridSetND g3 = GridSetND::filled(3, 2, 1.0, false);
    g3.set(std::array{0, 0, 0}, true);
    for (int a = 0; a < 3; ++a)
        CHECK(g3.directional_perimeter(a) == doctest::Approx(2 * 0.25)); // two faces of w^2
    CHECK(g3.volume() == doctest::Approx(0.125));
    auto lz = g3.slice(2, std::array{0, 0});
    CHECK(lz.measure() == doctest::Approx(0.5));
}

TEST_CASE("grid JSON round trip") {
    GridSetND g = GridSetND::filled(2, 3, 1.5, false);
    g.set(std::array{0, 2}, true);
    g.set(std::array{2, 1}, true);
    nlohmann::ordered_json j;
    to_json(j, g);
    CHECK(j["d"] == 2);
    CHECK(j["n"] == 3);
    CHECK(j["mask"].size() == 9);
    CHECK(grid_from_json(j) == g);
}
