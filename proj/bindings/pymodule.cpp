#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "convexdyn/classical.hpp"
#include "convexdyn/diffusion.hpp"
#include "convexdyn/dynamics.hpp"
#include "convexdyn/polytope.hpp"
#include "convexdyn/raster.hpp"
#include "convexdyn/regions.hpp"

namespace py = pybind11;
using namespace convexdyn;

namespace {

Raster raster_from_rows(const std::vector<std::vector<Vec>>& rows) {
    if (rows.empty() || rows[0].empty() || rows[0][0].empty()) throw std::invalid_argument("image must be H x W x C");
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows[0].size());
    const int c = static_cast<int>(rows[0][0].size());
    Raster r(w, h, c);
    for (int i = 0; i < h; ++i) {
        if (static_cast<int>(rows[i].size()) != w) throw std::invalid_argument("ragged image rows");
        for (int j = 0; j < w; ++j) {
            if (static_cast<int>(rows[i][j].size()) != c) throw std::invalid_argument("ragged image pixels");
            for (int k = 0; k < c; ++k) r.at(i, j, k) = rows[i][j][k];
        }
    }
    return r;
}

std::vector<std::vector<int>> ids_to_rows(const OutputRaster& out) {
    std::vector<std::vector<int>> rows(static_cast<size_t>(out.height));
    for (int i = 0; i < out.height; ++i) {
        rows[static_cast<size_t>(i)].resize(static_cast<size_t>(out.width));
        for (int j = 0; j < out.width; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = out.at(i, j);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(convexdyn, m) {
    m.doc() = "greedy vertex quantization toolkit";

    py::class_<Polytope>(m, "Polytope")
        .def(py::init<int, std::vector<Vec>>(), py::arg("dim"), py::arg("vertices"))
        .def_property_readonly("dim", &Polytope::dim)
        .def("__len__", &Polytope::size)
        .def("vertex", &Polytope::vertex, py::arg("i"))
        .def("vertices",
             [](const Polytope& p) {
                 std::vector<Vec> vs;
                 for (int i = 0; i < p.size(); ++i) vs.push_back(p.vertex(i));
                 return vs;
             })
        .def("centroid", &Polytope::centroid);

    m.def("preset", &preset, py::arg("name"));
    m.def("load_polytope", &load_polytope_file, py::arg("path"));
    m.def("nearest_vertex", py::overload_cast<const Polytope&, const Vec&>(&nearest_vertex),
          py::arg("polytope"), py::arg("x"));
    m.def("diameter", &diameter);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &Rng::next)
        .def("uniform01", &Rng::uniform01);
    m.def("random_gamma", &random_gamma, py::arg("polytope"), py::arg("rng"));

    m.def("phi", &phi, py::arg("polytope"), py::arg("gamma"), py::arg("x"));
    m.def(
        "greedy_step",
        [](const Polytope& p, const Vec& eps, const Vec& gamma) {
            const StepResult r = greedy_step(p, eps, gamma);
            return py::make_tuple(r.eps, r.vid);
        },
        py::arg("polytope"), py::arg("eps"), py::arg("gamma"));
    m.def(
        "general_step",
        [](const Polytope& p, const std::vector<Vec>& history, const std::vector<double>& weights, const Vec& gamma) {
            const StepResult r = general_step(p, history, weights, gamma);
            return py::make_tuple(r.eps, r.vid);
        },
        py::arg("polytope"), py::arg("history"), py::arg("weights"), py::arg("gamma"));

    py::class_<Trace>(m, "Trace")
        .def_readonly("xs", &Trace::xs)
        .def_readonly("vids", &Trace::vids)
        .def_readonly("epss", &Trace::epss)
        .def_readonly("gammas", &Trace::gammas)
        .def("__len__", &Trace::size);
    m.def("run_orbit", &run_orbit, py::arg("polytope"), py::arg("gammas"), py::arg("x0"));
    m.def("average_gap", &average_gap, py::arg("polytope"), py::arg("trace"), py::arg("n"));
    m.def("sup_error", &sup_error, py::arg("trace"));

    m.def(
        "halftone",
        [](const std::vector<std::vector<Vec>>& image, const Polytope& p, const std::string& scheme) {
            const Raster r = raster_from_rows(image);
            const HalftoneResult res =
                scheme == "simple" ? halftone_simple(r, p) : halftone_general(r, p, NeighborhoodScheme::named(scheme));
            return ids_to_rows(res.out);
        },
        py::arg("image"), py::arg("polytope"), py::arg("scheme") = "simple",
        "Quantize an H x W x C sample grid; returns the chosen vertex ids per pixel.");

    py::class_<IntervalRegionResult>(m, "IntervalRegionResult")
        .def_readonly("lo", &IntervalRegionResult::lo)
        .def_readonly("hi", &IntervalRegionResult::hi)
        .def_readonly("invariant", &IntervalRegionResult::invariant)
        .def_readonly("witness_x", &IntervalRegionResult::witness_x)
        .def_readonly("witness_gamma", &IntervalRegionResult::witness_gamma)
        .def_readonly("witness_image", &IntervalRegionResult::witness_image);
    m.def("interval_region", &interval_region, py::arg("polytope"), py::arg("t"));

    py::class_<Witness>(m, "Witness")
        .def_readonly("x", &Witness::x)
        .def_readonly("gamma", &Witness::gamma)
        .def_readonly("image", &Witness::image)
        .def_readonly("violation", &Witness::violation);
    py::class_<InvarianceReport>(m, "InvarianceReport")
        .def_readonly("ok", &InvarianceReport::ok)
        .def_readonly("exact", &InvarianceReport::exact)
        .def_readonly("min_margin", &InvarianceReport::min_margin)
        .def_readonly("x_samples", &InvarianceReport::x_samples)
        .def_readonly("gamma_samples", &InvarianceReport::gamma_samples)
        .def_readonly("witness", &InvarianceReport::witness);

    py::class_<HalfspaceRegion>(m, "HalfspaceRegion")
        .def_readonly("corners", &HalfspaceRegion::corners)
        .def("margin", [](const HalfspaceRegion& r, const Vec& x) { return r.margin(x.data()); }, py::arg("x"));
    m.def("polygon_region", &polygon_region, py::arg("polytope"), py::arg("t"));
    m.def("polygon_invariance_exact", &polygon_invariance_exact, py::arg("region"), py::arg("polytope"));
    m.def(
        "find_min_t",
        [](const Polytope& p, double resolution) { return find_min_t(p, resolution); },
        py::arg("polytope"), py::arg("resolution") = 1e-3);

    py::class_<Omega2D>(m, "Omega2D")
        .def_readonly("marked", &Omega2D::marked)
        .def_readonly("theta", &Omega2D::theta)
        .def_readonly("min_gap", &Omega2D::min_gap);
    m.def("build_omega_2d", &build_omega_2d, py::arg("polytope"), py::arg("theta") = 0.0);
    py::class_<ConvexRegion2D>(m, "ConvexRegion2D")
        .def_readonly("rho", &ConvexRegion2D::rho)
        .def_readonly("marked", &ConvexRegion2D::marked)
        .def_readonly("perimeter", &ConvexRegion2D::perimeter)
        .def("margin", [](const ConvexRegion2D& r, const Vec& x) { return r.margin(x.data()); }, py::arg("x"))
        .def("boundary_point", &ConvexRegion2D::boundary_point, py::arg("u"))
        .def("boundary_text", [](const ConvexRegion2D& r) {
            std::ostringstream out;
            write_boundary(out, r);
            return out.str();
        });
    m.def("build_q_infinity", &build_q_infinity, py::arg("omega"), py::arg("rho"));
    m.def("convexity_exact", &convexity_exact, py::arg("region"));
    m.def(
        "verify_invariance",
        [](const ConvexRegion2D& r, const Polytope& p, int boundary_samples, int gamma_samples, std::uint64_t seed) {
            Rng rng(seed);
            return verify_invariance(r, p, boundary_samples, gamma_samples, rng);
        },
        py::arg("region"), py::arg("polytope"), py::arg("boundary_samples") = 256, py::arg("gamma_samples") = 32,
        py::arg("seed") = 12345);

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("t_top", &SweepCell::t_top)
        .def_readonly("t_side", &SweepCell::t_side)
        .def_readonly("fail_edge_mid", &SweepCell::fail_edge_mid)
        .def_readonly("fail_box_corner", &SweepCell::fail_box_corner)
        .def_readonly("viol_edge_mid", &SweepCell::viol_edge_mid)
        .def_readonly("viol_box_corner", &SweepCell::viol_box_corner);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("c1", &SweepResult::c1)
        .def_readonly("cells", &SweepResult::cells)
        .def_readonly("pass_count", &SweepResult::pass_count);
    m.def("counterexample_sweep", &counterexample_sweep, py::arg("c1"), py::arg("tops"), py::arg("sides"));

    py::class_<BitSequence>(m, "BitSequence")
        .def_readonly("gamma", &BitSequence::gamma)
        .def_readonly("x0", &BitSequence::x0)
        .def_readonly("bits", &BitSequence::bits);
    m.def("sturmian", &sturmian, py::arg("gamma"), py::arg("x0"), py::arg("n"));
    py::class_<SturmianStats>(m, "SturmianStats")
        .def_readonly("n", &SturmianStats::n)
        .def_readonly("ones_freq", &SturmianStats::ones_freq)
        .def_readonly("lmax", &SturmianStats::lmax)
        .def_readonly("max_defect", &SturmianStats::max_defect)
        .def_readonly("worst_len", &SturmianStats::worst_len);
    m.def("sturmian_stats", &sturmian_stats, py::arg("sequence"), py::arg("lmax"));

    py::class_<AbsorbReport>(m, "AbsorbReport")
        .def_readonly("lo", &AbsorbReport::lo)
        .def_readonly("hi", &AbsorbReport::hi)
        .def_readonly("entered", &AbsorbReport::entered)
        .def_readonly("entry_step", &AbsorbReport::entry_step)
        .def_readonly("stayed", &AbsorbReport::stayed)
        .def_readonly("min_margin", &AbsorbReport::min_margin);
    m.def("absorbing_interval_check", &absorbing_interval_check, py::arg("gamma"), py::arg("x0"),
          py::arg("horizon"), py::arg("stay_steps"));

    py::class_<PursuitResult>(m, "PursuitResult")
        .def_readonly("steps", &PursuitResult::steps)
        .def_readonly("p", &PursuitResult::p)
        .def_readonly("q", &PursuitResult::q)
        .def_readonly("distance", &PursuitResult::distance)
        .def_readonly("eps_norm", &PursuitResult::eps_norm)
        .def_readonly("max_identity_error", &PursuitResult::max_identity_error)
        .def_readonly("final_distance", &PursuitResult::final_distance);
    m.def("pursuit", &pursuit, py::arg("polytope"), py::arg("gammas"), py::arg("p0"), py::arg("q0"));
}
