#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "convexdyn/classical.hpp"
#include "convexdyn/dynamics.hpp"
#include "convexdyn/vecmath.hpp"

using namespace convexdyn;

namespace {

std::string bits_as_string(const BitSequence& seq) {
    std::string s;
    for (int b : seq.bits) s += static_cast<char>('0' + b);
    return s;
}

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

}  // namespace

TEST_CASE("one third produces the period-3 word starting 001") {
    const BitSequence seq = sturmian(1.0 / 3.0, 0.0, 9);
    CHECK(bits_as_string(seq) == "001001001");
}

TEST_CASE("bit sequences validate their inputs") {
    CHECK_THROWS_AS(sturmian(0.0, 0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(sturmian(1.0, 0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(sturmian(-0.2, 0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(sturmian(0.5, 0.0, 0), std::invalid_argument);
}

TEST_CASE("a dyadic demand settles into the alternating word") {
    const BitSequence seq = sturmian(0.5, 0.0, 12);
    // ties at 1/2 quantize low, so the alternation starts one step late
    for (size_t k = 1; k + 2 < seq.bits.size(); ++k) CHECK(seq.bits[k] == seq.bits[k + 2]);
}

TEST_CASE("golden-ratio coding is balanced with the right density") {
    // Start inside the absorbing interval [gamma - 1/2, gamma + 1/2].
    const long n = 20000;
    const BitSequence seq = sturmian(kGolden, 0.5, n);
    const SturmianStats st = sturmian_stats(seq, 100);
    CHECK(st.n == n);
    CHECK(std::abs(st.ones_freq - kGolden) <= 2.0 / static_cast<double>(n));
    CHECK(st.lmax == 100);
    CHECK(st.max_defect <= 1);
    CHECK(st.worst_len >= 1);
}

TEST_CASE("a start outside the absorbing interval costs one out-of-phase bit") {
    // x0 = 0 sits below gamma - 1/2, so its coding bit disagrees with the
    // rotation phase; the single transient bit bumps the defect to 2.
    const BitSequence seq = sturmian(kGolden, 0.0, 2000);
    const SturmianStats st = sturmian_stats(seq, 100);
    CHECK(st.max_defect == 2);
    // The image of 0 is gamma itself; the word from there on is balanced.
    const BitSequence tail = sturmian(kGolden, kGolden, 1999);
    const SturmianStats ts = sturmian_stats(tail, 100);
    CHECK(ts.max_defect <= 1);
}

TEST_CASE("a rational demand has bounded but nonzero defect") {
    const BitSequence seq = sturmian(1.0 / 3.0, 0.0, 3000);
    const SturmianStats st = sturmian_stats(seq, 50);
    CHECK(st.ones_freq == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
    CHECK(st.max_defect <= 1);
}

TEST_CASE("bit output is one line of ascii digits") {
    const BitSequence seq = sturmian(1.0 / 3.0, 0.0, 6);
    std::ostringstream out;
    write_bits(out, seq);
    CHECK(out.str() == "001001\n");
}

TEST_CASE("the halfwidth interval absorbs the constant-demand walk") {
    const AbsorbReport rep = absorbing_interval_check(0.5, 100.0, 1000, 100);
    CHECK(rep.lo == doctest::Approx(0.0));
    CHECK(rep.hi == doctest::Approx(1.0));
    CHECK(rep.entered);
    CHECK(rep.entry_step == 198);  // x(k) = 100 - k/2 exactly, first x <= 1 at k = 198
    CHECK(rep.stayed);
    CHECK(rep.min_margin >= -1e-12);
}

TEST_CASE("absorption is reported immediately when starting inside") {
    const AbsorbReport rep = absorbing_interval_check(0.25, 0.3, 100, 50);
    CHECK(rep.entered);
    CHECK(rep.entry_step == 0);
    CHECK(rep.stayed);
}

TEST_CASE("absorption fails honestly when the horizon is too short") {
    const AbsorbReport rep = absorbing_interval_check(0.5, 100.0, 50, 10);
    CHECK(!rep.entered);
    CHECK(rep.entry_step == -1);
}

TEST_CASE("pursuit means close in on each other with an exact gap identity") {
    const Polytope p = preset("square");
    Rng rng(4242);
    std::vector<Vec> gammas;
    for (int k = 0; k <= 4000; ++k) gammas.push_back(random_gamma(p, rng));
    const PursuitResult r = pursuit(p, gammas, p.vertex(0), p.vertex(1));

    CHECK(r.steps == 4000);
    REQUIRE(r.p.size() == static_cast<size_t>(r.steps));
    REQUIRE(r.q.size() == static_cast<size_t>(r.steps));
    CHECK(r.max_identity_error <= 1e-9);
    CHECK(r.final_distance == r.distance.back());
    CHECK(r.final_distance < 0.1);
    CHECK(r.distance.back() < r.distance.front());

    // the running means stay inside the polytope's bounding box
    for (const Vec& m : r.p) {
        CHECK(m[0] >= -1e-12);
        CHECK(m[0] <= 1.0 + 1e-12);
    }
}

TEST_CASE("pursuit on the interval matches a hand-rolled mean recursion") {
    const Polytope p = preset("interval");
    const std::vector<Vec> gammas(7, Vec{1.0 / 3.0});
    const PursuitResult r = pursuit(p, gammas, p.vertex(0), p.vertex(1));
    CHECK(r.steps == 6);

    // replicate: eps/vertex updates with gamma(k), demand mean with gamma(k+1)
    Vec eps = {0.0};
    double pm = 0.0, qm = 1.0;
    for (long n = 1; n <= 6; ++n) {
        const double g = 1.0 / 3.0;
        const int vid = nearest_vertex(p, Vec{eps[0] + g});
        eps[0] += g - p.vertex(vid)[0];
        pm += (p.vertex(vid)[0] - pm) / static_cast<double>(n);
        qm += (g - qm) / static_cast<double>(n + 1);
        CHECK(r.p[static_cast<size_t>(n - 1)][0] == doctest::Approx(pm).epsilon(1e-12));
        CHECK(r.q[static_cast<size_t>(n - 1)][0] == doctest::Approx(qm).epsilon(1e-12));
    }

    CHECK_THROWS_AS(pursuit(p, {Vec{0.5}}, p.vertex(0), p.vertex(1)), std::invalid_argument);
}
