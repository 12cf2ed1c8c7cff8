#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "convexdyn/polytope.hpp"
#include "convexdyn/vecmath.hpp"

using namespace convexdyn;

namespace {

int brute_nearest(const Polytope& p, const Vec& x) {
    int best = 0;
    double bd = dist2(x, p.vertex(0));
    for (int i = 1; i < p.size(); ++i) {
        const double d = dist2(x, p.vertex(i));
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("presets have the documented shapes") {
    const Polytope interval = preset("interval");
    CHECK(interval.dim() == 1);
    CHECK(interval.size() == 2);
    CHECK(interval.vertex(0) == Vec{0.0});
    CHECK(interval.vertex(1) == Vec{1.0});

    const Polytope cube = preset("cube(3)");
    CHECK(cube.dim() == 3);
    CHECK(cube.size() == 8);
    // binary-counter order: bit c of the index is coordinate c
    CHECK(cube.vertex(5) == Vec{1.0, 0.0, 1.0});
    CHECK(cube.vertex(6) == Vec{0.0, 1.0, 1.0});

    const Polytope simplex = preset("simplex(3)");
    CHECK(simplex.dim() == 3);
    CHECK(simplex.size() == 4);
    CHECK(simplex.vertex(0) == Vec{0.0, 0.0, 0.0});
    CHECK(simplex.vertex(2) == Vec{0.0, 1.0, 0.0});

    const Polytope tri = preset("tristimulus");
    CHECK(tri.dim() == 3);
    CHECK(tri.size() == 8);

    const Polytope square = preset("square");
    CHECK(square.size() == 4);
    CHECK(square.vertex(2) == Vec{1.0, 1.0});

    const Polytope pent = preset("pentagon");
    CHECK(pent.size() == 5);
    for (int i = 0; i < pent.size(); ++i) CHECK(norm(pent.vertex(i)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(preset("nonagon"), std::invalid_argument);
}

TEST_CASE("octa3d preset matches the explicit constructor") {
    const Polytope a = preset("octa3d");
    const Polytope b = make_octa3d(0.25);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == 12);
    for (int i = 0; i < a.size(); ++i) CHECK(a.vertex(i) == b.vertex(i));

    const Polytope c = preset("octa3d(0.3)");
    const Polytope d = make_octa3d(0.3);
    for (int i = 0; i < c.size(); ++i) CHECK(c.vertex(i) == d.vertex(i));

    // every vertex satisfies the two cut planes and the unit box
    for (int i = 0; i < a.size(); ++i) {
        const Vec v = a.vertex(i);
        const double s = v[0] + v[1] - v[2];
        CHECK(s >= 0.25 - 1e-15);
        CHECK(s <= 0.75 + 1e-15);
        for (double coord : v) {
            CHECK(coord >= -1e-15);
            CHECK(coord <= 1.0 + 1e-15);
        }
    }

    CHECK_THROWS_AS(make_octa3d(0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_octa3d(0.0), std::invalid_argument);
}

TEST_CASE("nearest_vertex agrees with brute force and breaks ties low") {
    const Polytope square = preset("square");
    Rng rng(7);
    for (int k = 0; k < 500; ++k) {
        const Vec x = {rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
        const int got = nearest_vertex(square, x);
        const int want = brute_nearest(square, x);
        const double dg = dist2(x, square.vertex(got));
        const double dw = dist2(x, square.vertex(want));
        // ties may legitimately differ from brute force; distances may not
        CHECK(dg <= dw + 1e-12 * (1.0 + std::max(dg, dw)));
    }

    // exact ties resolve to the smallest index
    CHECK(nearest_vertex(square, Vec{0.5, 0.5}) == 0);
    CHECK(nearest_vertex(square, Vec{0.5, 0.0}) == 0);
    CHECK(nearest_vertex(square, Vec{1.0, 0.5}) == 1);
    CHECK(nearest_vertex(preset("interval"), Vec{0.5}) == 0);
}

TEST_CASE("voronoi halfspaces carve the nearest-vertex cell") {
    const Polytope square = preset("square");
    Rng rng(11);
    for (int i = 0; i < square.size(); ++i) {
        const auto hs = voronoi_halfspaces(square, i);
        CHECK(hs.size() == 3);
        for (const auto& h : hs) CHECK(norm(h.normal) == doctest::Approx(1.0).epsilon(1e-12));
        for (int k = 0; k < 200; ++k) {
            const Vec x = {rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)};
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& h : hs) worst = std::min(worst, h.offset - dot(h.normal, x));
            const int bn = brute_nearest(square, x);
            if (worst > 1e-9) {
                // strictly inside the cell: vertex i is (weakly) nearest
                CHECK(dist2(x, square.vertex(i)) <= dist2(x, square.vertex(bn)) + 1e-12);
            }
            if (worst < -1e-9) {
                // strictly outside: some other vertex is strictly nearer
                CHECK(dist2(x, square.vertex(bn)) < dist2(x, square.vertex(i)));
            }
        }
    }
}

TEST_CASE("diameter is the max pairwise vertex distance") {
    CHECK(diameter(preset("interval")) == doctest::Approx(1.0));
    CHECK(diameter(preset("square")) == doctest::Approx(std::sqrt(2.0)));
    CHECK(diameter(preset("cube(3)")) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("translation shifts vertices and preserves nearest indices") {
    const Polytope square = preset("square");
    const Vec c = {2.5, -1.25};
    const Polytope moved = translate(square, c);
    for (int i = 0; i < square.size(); ++i) CHECK(moved.vertex(i) == add(square.vertex(i), c));

    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        const Vec x = {rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
        CHECK(nearest_vertex(square, x) == nearest_vertex(moved, add(x, c)));
    }
}

TEST_CASE("polytope text round trip") {
    const Polytope pent = preset("pentagon");
    std::ostringstream out;
    write_polytope(out, pent);
    std::istringstream in(out.str());
    const Polytope back = parse_polytope(in);
    REQUIRE(back.size() == pent.size());
    REQUIRE(back.dim() == pent.dim());
    for (int i = 0; i < pent.size(); ++i) CHECK(back.vertex(i) == pent.vertex(i));
}

TEST_CASE("polytope parser rejects malformed input") {
    std::istringstream empty("# only a comment\n\n");
    CHECK_THROWS_AS(parse_polytope(empty), std::runtime_error);
    std::istringstream ragged("0 0\n1 2 3\n");
    CHECK_THROWS_AS(parse_polytope(ragged), std::runtime_error);
}

TEST_CASE("extreme-point certificate accepts hulls and flags interior vertices") {
    Rng rng(19);
    std::string msg;
    CHECK(certify_extreme_points(preset("square"), rng, 32, &msg));
    CHECK(certify_extreme_points(preset("octa3d"), rng, 32, &msg));

    // centroid appended as a bogus fifth vertex is not extreme
    std::vector<Vec> vs;
    const Polytope square = preset("square");
    for (int i = 0; i < square.size(); ++i) vs.push_back(square.vertex(i));
    vs.push_back(square.centroid());
    const Polytope bogus(2, vs);
    CHECK(!certify_extreme_points(bogus, rng, 32, &msg));
    CHECK(!msg.empty());
}

TEST_CASE("centroid is the vertex mean") {
    const Polytope square = preset("square");
    const Vec c = square.centroid();
    CHECK(c[0] == doctest::Approx(0.5));
    CHECK(c[1] == doctest::Approx(0.5));
}
