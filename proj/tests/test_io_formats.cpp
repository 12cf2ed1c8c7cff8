#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "convexdyn/classical.hpp"
#include "convexdyn/diffusion.hpp"
#include "convexdyn/dynamics.hpp"
#include "convexdyn/raster.hpp"
#include "convexdyn/regions.hpp"
#include "convexdyn/report.hpp"

using namespace convexdyn;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name) : path(fs::temp_directory_path() / name) {}
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
    std::string str() const { return path.string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("pgm round trip preserves every byte") {
    ByteImage img;
    img.width = 8;
    img.height = 4;
    img.channels = 1;
    img.data.resize(32);
    for (size_t k = 0; k < img.data.size(); ++k) img.data[k] = static_cast<unsigned char>(k * 8 + 1);

    TempFile f("convexdyn_roundtrip.pgm");
    write_pnm(f.str(), img);
    const ByteImage back = read_pnm(f.str());
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.channels == 1);
    CHECK(back.data == img.data);
}

TEST_CASE("ppm round trip preserves interleaved channels") {
    ByteImage img;
    img.width = 3;
    img.height = 2;
    img.channels = 3;
    img.data = {0, 1, 2, 10, 11, 12, 20, 21, 22, 30, 31, 32, 40, 41, 42, 50, 51, 52};

    TempFile f("convexdyn_roundtrip.ppm");
    write_pnm(f.str(), img);
    const ByteImage back = read_pnm(f.str());
    CHECK(back.channels == 3);
    CHECK(back.data == img.data);
}

TEST_CASE("pnm reader insists on 8-bit maxval and a known magic") {
    TempFile f("convexdyn_bad.pgm");
    {
        std::ofstream out(f.str(), std::ios::binary);
        out << "P5\n2 2\n65535\n";
        out.write("\0\0\0\0\0\0\0\0", 8);
    }
    CHECK_THROWS_AS(read_pnm(f.str()), std::runtime_error);

    {
        std::ofstream out(f.str(), std::ios::binary);
        out << "P3\n2 2\n255\n0 0 0 0 0 0 0 0 0 0 0 0\n";
    }
    CHECK_THROWS_AS(read_pnm(f.str()), std::runtime_error);

    CHECK_THROWS_AS(read_pnm("/nonexistent/convexdyn.pgm"), std::runtime_error);
}

TEST_CASE("polytope files support comments and round trip through disk") {
    TempFile f("convexdyn_poly.txt");
    {
        std::ofstream out(f.str());
        out << "# a lopsided quadrilateral\n";
        out << "0 0\n1.5 0\n1.25 2  # inline trailing fields are data, not comments\n";
    }
    // the inline '#' cuts the rest of the line
    const Polytope p = load_polytope_file(f.str());
    CHECK(p.size() == 3);
    CHECK(p.vertex(2) == Vec{1.25, 2.0});

    TempFile g("convexdyn_poly_rt.txt");
    {
        std::ofstream out(g.str());
        write_polytope(out, preset("pentagon"));
    }
    const Polytope back = load_polytope_file(g.str());
    const Polytope pent = preset("pentagon");
    REQUIRE(back.size() == pent.size());
    for (int i = 0; i < pent.size(); ++i) CHECK(back.vertex(i) == pent.vertex(i));

    // resolve: preset names win, otherwise the argument is a path
    CHECK(resolve_polytope("square").size() == 4);
    CHECK(resolve_polytope(g.str()).size() == 5);
}

TEST_CASE("scheme files round trip and validate on load") {
    TempFile f("convexdyn_scheme.txt");
    {
        std::ofstream out(f.str());
        write_scheme(out, NeighborhoodScheme::fs3());
    }
    const NeighborhoodScheme s = load_scheme_file(f.str());
    REQUIRE(s.taps.size() == 3);
    CHECK(s.taps[0].row_offset == 0);
    CHECK(s.taps[0].col_offset == -1);
    CHECK(s.taps[0].weight == doctest::Approx(7.0 / 16.0));

    TempFile bad("convexdyn_scheme_bad.txt");
    {
        std::ofstream out(bad.str());
        out << "0 -1 0.25\n1 0 0.25\n";  // weights sum to 1/2
    }
    CHECK_THROWS_AS(load_scheme_file(bad.str()), std::invalid_argument);
}

TEST_CASE("trace csv carries one header and one row per step") {
    const Polytope p = preset("square");
    Rng rng(1);
    std::vector<Vec> gammas;
    for (int k = 0; k < 5; ++k) gammas.push_back(random_gamma(p, rng));
    const Trace t = run_orbit(p, gammas, p.centroid());

    std::ostringstream out;
    write_trace_csv(out, t);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "k,gamma_0,gamma_1,vid,eps_0,eps_1,eps_norm");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("pursuit csv starts with the documented header") {
    const Polytope p = preset("interval");
    const std::vector<Vec> gammas(4, Vec{0.25});
    const PursuitResult r = pursuit(p, gammas, p.vertex(0), p.vertex(1));
    std::ostringstream out;
    write_pursuit_csv(out, r);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "n,p_0,q_0,distance,eps_norm");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("region boundaries export as arc and seg lines") {
    const Omega2D omega = build_omega_2d(preset("square"));
    const ConvexRegion2D q = build_q_infinity(omega, 4.0);
    std::ostringstream out;
    write_boundary(out, q);
    std::istringstream in(out.str());
    std::string line;
    int arcs = 0, segs = 0;
    while (std::getline(in, line)) {
        if (line.rfind("arc ", 0) == 0)
            ++arcs;
        else if (line.rfind("seg ", 0) == 0)
            ++segs;
        else
            FAIL("unexpected boundary line: " << line);
    }
    CHECK(arcs == 8);
    CHECK(segs == 24);
}

TEST_CASE("fnv1a matches published reference digests") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("run reports serialize with a fixed key order and no timing") {
    RunReport r;
    r.command = "demo";
    r.seed = 42;
    r.config["alpha"] = 1;
    r.metrics["beta"] = 2.5;
    r.add("works", true, "sample detail");
    CHECK(r.all_pass());
    r.add("fails", false);
    CHECK(!r.all_pass());

    const Json j = r.to_json();
    const std::string s = j.dump(2);
    const size_t p_tool = s.find("\"tool\"");
    const size_t p_version = s.find("\"version\"");
    const size_t p_command = s.find("\"command\"");
    const size_t p_seed = s.find("\"seed\"");
    const size_t p_config = s.find("\"config\"");
    const size_t p_hash = s.find("\"config_hash\"");
    const size_t p_metrics = s.find("\"metrics\"");
    const size_t p_assert = s.find("\"assertions\"");
    const size_t p_pass = s.rfind("\"pass\"");  // the top-level verdict is the last key
    REQUIRE(p_tool != std::string::npos);
    CHECK(p_tool < p_version);
    CHECK(p_version < p_command);
    CHECK(p_command < p_seed);
    CHECK(p_seed < p_config);
    CHECK(p_config < p_hash);
    CHECK(p_hash < p_metrics);
    CHECK(p_metrics < p_assert);
    CHECK(p_assert < p_pass);
    CHECK(s.find("time") == std::string::npos);

    // identical content hashes identically, changed config does not
    RunReport r2 = r;
    CHECK(r2.to_json() == j);
    r2.config["alpha"] = 2;
    CHECK(r2.to_json()["config_hash"] != j["config_hash"]);
}

TEST_CASE("write_report produces parseable json with a trailing newline") {
    RunReport r;
    r.command = "demo";
    r.add("ok", true);
    TempFile f("convexdyn_report.json");
    write_report(f.str(), r);
    const std::string text = slurp(f.str());
    REQUIRE(!text.empty());
    CHECK(text.back() == '\n');
    const Json j = Json::parse(text);
    CHECK(j["tool"] == "convexdyn");
    CHECK(j["pass"] == true);
}
