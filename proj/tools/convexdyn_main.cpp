#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "convexdyn/classical.hpp"
#include "convexdyn/diffusion.hpp"
#include "convexdyn/dynamics.hpp"
#include "convexdyn/polytope.hpp"
#include "convexdyn/raster.hpp"
#include "convexdyn/regions.hpp"
#include "convexdyn/report.hpp"

using namespace convexdyn;

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

/* CONVEXDYN_SEED wins over --seed so harnesses can pin runs externally. */
std::uint64_t resolve_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("CONVEXDYN_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw std::runtime_error("CONVEXDYN_SEED must be an unsigned integer");
        return v;
    }
    return cli_seed;
}

Vec parse_vec(const std::string& s) {
    Vec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::runtime_error("bad number in vector literal: " + tok);
    }
    if (v.empty()) throw std::runtime_error("empty vector literal");
    return v;
}

/* "start:stop:step", half-open: start, start+step, ..., < stop */
std::vector<double> parse_range(const std::string& s) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        size_t used = 0;
        parts.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::runtime_error("bad number in range: " + tok);
    }
    if (parts.size() != 3) throw std::runtime_error("range must be start:stop:step");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || !(stop > start)) throw std::runtime_error("range needs stop > start and step > 0");
    const long count = static_cast<long>(std::ceil((stop - start) / step - 1e-9));
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) vals.push_back(start + static_cast<double>(i) * step);
    return vals;
}

std::vector<Vec> load_demands(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open demands file: " + path);
    std::vector<Vec> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Vec v;
        double c;
        while (ls >> c) v.push_back(c);
        if (!ls.eof()) throw std::runtime_error("demands file: bad token in line: " + line);
        if (v.empty()) continue;
        if (static_cast<int>(v.size()) != dim) throw std::runtime_error("demands file: row dimension mismatch");
        rows.push_back(std::move(v));
    }
    if (rows.empty()) throw std::runtime_error("demands file is empty: " + path);
    return rows;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

double vec_norm_kind(const Vec& v, const std::string& kind) {
    if (kind == "l2") return norm(v);
    if (kind == "l1") {
        double s = 0.0;
        for (double c : v) s += std::abs(c);
        return s;
    }
    if (kind == "linf") {
        double s = 0.0;
        for (double c : v) s = std::max(s, std::abs(c));
        return s;
    }
    throw std::runtime_error("unknown norm: " + kind + " (expected l2, l1, linf)");
}

Json witness_json(const Witness& w) {
    Json j;
    j["x"] = w.x;
    j["gamma"] = w.gamma;
    j["image"] = w.image;
    j["violation"] = w.violation;
    return j;
}

void maybe_certify(const Polytope& p, bool strict, std::uint64_t seed, RunReport& rep) {
    if (!strict) return;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::string msg;
    const bool ok = certify_extreme_points(p, rng, 8, &msg);
    rep.add("vertices_extreme", ok, msg);
}

// ---------------------------------------------------------------- halftone

struct HalftoneOpts {
    std::string in, synthetic, out, report, scheme = "simple", polytope;
    int width = 256, height = 256, channels = 1;
    double level = 128.0;
    std::vector<int> scaling;
    int anchor_stride = 1;
    std::uint64_t seed = kDefaultSeed;
    bool strict = false;
};

int run_halftone(HalftoneOpts& o) {
    o.seed = resolve_seed(o.seed);
    Rng rng(o.seed);
    ByteImage img;
    if (!o.in.empty()) {
        img = read_pnm(o.in);
    } else if (o.synthetic == "constant" || o.synthetic == "random") {
        if (o.width < 1 || o.height < 1 || (o.channels != 1 && o.channels != 3)) {
            throw std::runtime_error("halftone: synthetic images need width, height >= 1 and 1 or 3 channels");
        }
        img.width = o.width;
        img.height = o.height;
        img.channels = o.channels;
        img.data.resize(static_cast<size_t>(o.width) * o.height * o.channels);
        if (o.synthetic == "constant") {
            const int b = std::clamp(static_cast<int>(std::lround(o.level)), 0, 255);
            std::fill(img.data.begin(), img.data.end(), static_cast<unsigned char>(b));
        } else {
            for (auto& u : img.data) u = static_cast<unsigned char>(rng.next() & 0xff);
        }
    } else {
        throw std::runtime_error("halftone: need --in or --synthetic constant|random");
    }

    const bool tri = o.polytope == "tristimulus";
    const Polytope p = o.polytope.empty() ? preset(img.channels == 1 ? "interval" : "cube(3)")
                                          : resolve_polytope(o.polytope);
    const Raster gam = to_inputs(img, p, tri);

    const bool simple = o.scheme == "simple";
    NeighborhoodScheme scheme;
    if (!simple) {
        try {
            scheme = NeighborhoodScheme::named(o.scheme);
        } catch (const std::invalid_argument&) {
            scheme = load_scheme_file(o.scheme);
        }
        scheme.validate();
    }
    const HalftoneResult res = simple ? halftone_simple(gam, p) : halftone_general(gam, p, scheme);
    if (!o.out.empty()) write_pnm(o.out, render_output(res.out, p));

    RunReport rep;
    rep.command = "halftone";
    rep.seed = o.seed;
    rep.config["in"] = o.in;
    rep.config["synthetic"] = o.synthetic;
    rep.config["width"] = img.width;
    rep.config["height"] = img.height;
    rep.config["channels"] = img.channels;
    rep.config["level"] = o.level;
    rep.config["polytope"] = o.polytope;
    rep.config["scheme"] = o.scheme;
    rep.config["scaling"] = o.scaling;
    rep.config["anchor_stride"] = o.anchor_stride;
    rep.metrics["max_error_norm"] = max_error_norm(res.eps);
    rep.metrics["mean_fidelity_gap"] = mean_fidelity_gap(gam, res.out, p);
    if (!o.scaling.empty()) {
        const ScalingResult sc = scaling_experiment(gam, p, simple ? nullptr : &scheme, o.scaling, o.anchor_stride);
        Json j;
        j["sizes"] = sc.sizes;
        j["maxima"] = sc.maxima;
        j["anchor_counts"] = sc.anchor_counts;
        j["slope"] = sc.slope;
        j["sigma"] = sc.sigma;
        j["degenerate"] = sc.degenerate;
        rep.metrics["scaling"] = std::move(j);
    }
    maybe_certify(p, o.strict, o.seed, rep);
    if (!o.report.empty()) write_report(o.report, rep);
    return rep.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------- schedule

struct ScheduleOpts {
    std::string polytope = "interval", demands, x0, norm = "l2", out, report;
    long steps = 1000;
    std::uint64_t seed = kDefaultSeed;
    bool strict = false;
};

int run_schedule(ScheduleOpts& o) {
    o.seed = resolve_seed(o.seed);
    const Polytope p = resolve_polytope(o.polytope);
    Rng rng(o.seed);
    std::vector<Vec> gammas;
    if (!o.demands.empty()) {
        gammas = load_demands(o.demands, p.dim());
    } else {
        if (o.steps < 1) throw std::runtime_error("schedule: need --steps >= 1");
        gammas.reserve(static_cast<size_t>(o.steps));
        for (long k = 0; k < o.steps; ++k) gammas.push_back(random_gamma(p, rng));
    }
    const bool default_x0 = o.x0.empty();
    const Vec x0 = default_x0 ? gammas.front() : parse_vec(o.x0);
    if (static_cast<int>(x0.size()) != p.dim()) throw std::runtime_error("schedule: --x0 dimension mismatch");

    const Trace tr = run_orbit(p, gammas, x0);
    if (!o.out.empty()) {
        auto out = open_out(o.out);
        write_trace_csv(out, tr);
    }

    const std::size_t n = tr.size();
    double sup_l2 = 0.0, sup_kind = 0.0;
    for (const auto& e : tr.epss) {
        sup_l2 = std::max(sup_l2, norm(e));
        sup_kind = std::max(sup_kind, vec_norm_kind(e, o.norm));
    }
    const double gap = average_gap(p, tr, n);

    RunReport rep;
    rep.command = "schedule";
    rep.seed = o.seed;
    rep.config["polytope"] = o.polytope;
    rep.config["demands"] = o.demands;
    rep.config["steps"] = static_cast<long>(n);
    rep.config["norm"] = o.norm;
    rep.config["x0"] = o.x0;
    rep.metrics["sup_error"] = sup_l2;
    rep.metrics["sup_error_" + o.norm] = sup_kind;
    rep.metrics["average_gap"] = gap;
    rep.metrics["gap_bound"] = 2.0 * sup_l2 / static_cast<double>(n);
    // The telescoping bound needs the orbit to start at the first demand.
    if (default_x0) rep.add("average_gap_bound", gap <= 2.0 * sup_l2 / static_cast<double>(n), "");
    maybe_certify(p, o.strict, o.seed, rep);
    if (!o.report.empty()) write_report(o.report, rep);
    return rep.all_pass() ? 0 : 1;
}

// ------------------------------------------------------------------ region

struct RegionOpts {
    std::string polytope = "square";
    std::vector<std::string> shared;
    bool find_min_t = false;
    double resolution = 1e-3;
    double polygon_t = 0.0;
    bool has_polygon_t = false;
    double interval_t = 0.0;
    bool has_interval_t = false;
    bool q_infinity = false;
    double theta = 0.0;
    double rho = 0.0;
    int boundary_samples = 512, gamma_samples = 64;
    bool absorb = false;
    std::string x0;
    double margin_frac = 0.2;
    long max_steps = 100000, stay_steps = 10000;
    std::string boundary_out, report_out;
    std::uint64_t seed = kDefaultSeed;
    bool strict = false;
};

void export_polygon_boundary(const std::string& path, const HalfspaceRegion& q) {
    auto out = open_out(path);
    out.precision(17);
    for (size_t k = 0; k < q.corners.size(); ++k) {
        const Vec& a = q.corners[k];
        const Vec& b = q.corners[(k + 1) % q.corners.size()];
        out << "seg " << a[0] << ' ' << a[1] << ' ' << b[0] << ' ' << b[1] << '\n';
    }
}

int run_region(RegionOpts& o) {
    o.seed = resolve_seed(o.seed);
    const Polytope p = resolve_polytope(o.polytope);
    std::vector<Polytope> all;
    all.push_back(p);
    for (const auto& s : o.shared) all.push_back(resolve_polytope(s));
    Rng rng(o.seed);

    const int actions = static_cast<int>(o.find_min_t) + static_cast<int>(o.has_polygon_t) +
                        static_cast<int>(o.has_interval_t) + static_cast<int>(o.q_infinity);
    if (actions != 1) {
        throw std::runtime_error("region: choose exactly one of --find-min-t, --polygon-t, --interval-t, --q-infinity");
    }

    Json verdict;
    bool pass = false;
    std::unique_ptr<Region> region;

    if (o.find_min_t) {
        double lo = 0.0;
        const double t = find_min_t(p, o.resolution, &lo);
        HalfspaceRegion q = polygon_region(p, t);
        const InvarianceReport r = polygon_invariance_exact(q, p);
        pass = r.ok;
        verdict["t"] = t;
        verdict["pass"] = pass;
        verdict["margin"] = r.min_margin;
        verdict["samples"] = r.x_samples * r.gamma_samples;
        verdict["bracket_lo"] = lo;
        if (!o.boundary_out.empty()) export_polygon_boundary(o.boundary_out, q);
        region = std::make_unique<HalfspaceRegion>(std::move(q));
    } else if (o.has_polygon_t) {
        HalfspaceRegion q = polygon_region(p, o.polygon_t);
        const InvarianceReport ex = polygon_invariance_exact(q, p);
        const InvarianceReport sm = verify_invariance(q, p, o.boundary_samples, o.gamma_samples, rng);
        pass = ex.ok && sm.ok;
        verdict["t"] = o.polygon_t;
        verdict["pass"] = pass;
        verdict["margin"] = std::min(ex.min_margin, sm.min_margin);
        verdict["samples"] = ex.x_samples * ex.gamma_samples + sm.x_samples * sm.gamma_samples;
        if (ex.witness) {
            verdict["witness"] = witness_json(*ex.witness);
        } else if (sm.witness) {
            verdict["witness"] = witness_json(*sm.witness);
        }
        if (!o.boundary_out.empty()) export_polygon_boundary(o.boundary_out, q);
        region = std::make_unique<HalfspaceRegion>(std::move(q));
    } else if (o.has_interval_t) {
        const IntervalRegionResult r = interval_region(p, o.interval_t);
        pass = r.invariant;
        verdict["t"] = o.interval_t;
        verdict["pass"] = pass;
        const double spread = r.hi - r.lo - 2.0 * o.interval_t;  // v1 - v0
        verdict["margin"] = o.interval_t - 0.5 * spread;
        verdict["samples"] = 0;
        if (!r.invariant) {
            Json w;
            w["x"] = Vec{r.witness_x};
            w["gamma"] = Vec{r.witness_gamma};
            w["image"] = Vec{r.witness_image};
            w["violation"] = std::max(r.witness_image - r.hi, r.lo - r.witness_image);
            verdict["witness"] = std::move(w);
        }
        region = std::make_unique<IntervalRegion>(r.lo, r.hi);
    } else {
        std::vector<const Polytope*> ps;
        for (const auto& q : all) ps.push_back(&q);
        const Omega2D om = build_omega_union(ps, o.theta);
        double dmax = 0.0;
        for (const auto* q : ps) dmax = std::max(dmax, diameter(*q));
        const double rho0 = o.rho > 0.0 ? o.rho : dmax;
        const double cap = o.rho > 0.0 ? o.rho : 100.0 * dmax;
        bool found = false;
        double rho = rho0;
        ConvexRegion2D reg;
        double min_margin = 0.0;
        long evals = 0;
        std::optional<Witness> witness;
        for (; rho <= cap * (1.0 + 1e-12); rho *= 2.0) {
            reg = build_q_infinity(om, rho);
            bool ok = true;
            min_margin = std::numeric_limits<double>::infinity();
            witness.reset();
            for (const auto* q : ps) {
                const InvarianceReport r = verify_invariance(reg, *q, o.boundary_samples, o.gamma_samples, rng);
                evals += r.x_samples * r.gamma_samples;
                min_margin = std::min(min_margin, r.min_margin);
                if (!r.ok) {
                    ok = false;
                    if (!witness) witness = r.witness;
                }
            }
            if (ok) {
                found = true;
                break;
            }
        }
        const bool convex_ok = convexity_exact(reg);
        pass = found && convex_ok;
        verdict["rho"] = found ? rho : 0.0;
        verdict["pass"] = pass;
        verdict["margin"] = min_margin;
        verdict["samples"] = evals;
        verdict["marked"] = static_cast<long>(om.marked.size());
        verdict["theta"] = om.theta;
        verdict["convex_exact"] = convex_ok;
        if (witness) verdict["witness"] = witness_json(*witness);
        if (!o.boundary_out.empty()) {
            auto out = open_out(o.boundary_out);
            write_boundary(out, reg);
        }
        region = std::make_unique<ConvexRegion2D>(std::move(reg));
    }

    if (o.absorb) {
        if (o.x0.empty()) throw std::runtime_error("region: --absorb needs --x0");
        const Vec x0 = parse_vec(o.x0);
        const AbsorptionReport ar = absorption_test(*region, p, o.margin_frac, x0, o.max_steps, o.stay_steps, rng);
        verdict["entered"] = ar.entered;
        verdict["entry_step"] = ar.entry_step;
        verdict["stayed"] = ar.stayed;
        verdict["min_margin_after"] = ar.entered ? ar.min_margin_after : 0.0;
        pass = pass && ar.entered && ar.stayed;
        verdict["pass"] = pass;
    }

    if (!o.report_out.empty()) {
        auto out = open_out(o.report_out);
        out << verdict.dump(2) << '\n';
    } else {
        std::cout << verdict.dump(2) << '\n';
    }
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- sturmian

struct SturmianOpts {
    double gamma = 0.0, x0 = 0.0;
    long n = 1000, lmax = 0, horizon = 1000000, stay = 10000;
    std::vector<double> absorb_x0;
    std::string out, report;
    std::uint64_t seed = kDefaultSeed;
};

int run_sturmian(SturmianOpts& o) {
    o.seed = resolve_seed(o.seed);
    const BitSequence seq = sturmian(o.gamma, o.x0, o.n);
    if (!o.out.empty()) {
        auto out = open_out(o.out);
        write_bits(out, seq);
    } else {
        write_bits(std::cout, seq);
    }

    RunReport rep;
    rep.command = "sturmian";
    rep.seed = o.seed;
    rep.config["gamma"] = o.gamma;
    rep.config["x0"] = o.x0;
    rep.config["n"] = o.n;
    rep.config["lmax"] = o.lmax;
    rep.config["horizon"] = o.horizon;
    rep.config["stay"] = o.stay;
    rep.config["absorb_x0"] = o.absorb_x0;
    rep.metrics["ones_freq"] = static_cast<double>(std::count(seq.bits.begin(), seq.bits.end(), 1)) /
                               static_cast<double>(seq.bits.size());
    if (o.lmax > 0) {
        const SturmianStats st = sturmian_stats(seq, o.lmax);
        rep.metrics["lmax"] = st.lmax;
        rep.metrics["max_defect"] = st.max_defect;
        rep.metrics["worst_len"] = st.worst_len;
    }
    if (!o.absorb_x0.empty()) {
        Json arr = Json::array();
        bool all_ok = true;
        for (double x : o.absorb_x0) {
            const AbsorbReport ar = absorbing_interval_check(o.gamma, x, o.horizon, o.stay);
            Json e;
            e["x0"] = x;
            e["lo"] = ar.lo;
            e["hi"] = ar.hi;
            e["entered"] = ar.entered;
            e["entry_step"] = ar.entry_step;
            e["stayed"] = ar.stayed;
            e["min_margin"] = ar.entered ? ar.min_margin : 0.0;
            arr.push_back(std::move(e));
            all_ok = all_ok && ar.entered && ar.stayed;
        }
        rep.metrics["absorb"] = std::move(arr);
        rep.add("absorbed_all", all_ok, "");
    }
    if (!o.report.empty()) write_report(o.report, rep);
    return rep.all_pass() ? 0 : 1;
}

// ----------------------------------------------------------------- pursuit

struct PursuitOpts {
    std::string polytope = "square", p0, q0, out, report;
    long n = 10000;
    double threshold = 0.05;
    std::uint64_t seed = kDefaultSeed;
    bool strict = false;
};

int run_pursuit(PursuitOpts& o) {
    o.seed = resolve_seed(o.seed);
    const Polytope p = resolve_polytope(o.polytope);
    if (o.n < 1) throw std::runtime_error("pursuit: need --n >= 1");
    Rng rng(o.seed);
    std::vector<Vec> gammas;
    gammas.reserve(static_cast<size_t>(o.n) + 1);
    for (long k = 0; k <= o.n; ++k) gammas.push_back(random_gamma(p, rng));
    const Vec p0 = o.p0.empty() ? p.vertex(0) : parse_vec(o.p0);
    const Vec q0 = o.q0.empty() ? p.vertex(1) : parse_vec(o.q0);

    const PursuitResult r = pursuit(p, gammas, p0, q0);
    if (!o.out.empty()) {
        auto out = open_out(o.out);
        write_pursuit_csv(out, r);
    }

    RunReport rep;
    rep.command = "pursuit";
    rep.seed = o.seed;
    rep.config["polytope"] = o.polytope;
    rep.config["n"] = o.n;
    rep.config["p0"] = o.p0;
    rep.config["q0"] = o.q0;
    rep.config["threshold"] = o.threshold;
    rep.metrics["final_distance"] = r.final_distance;
    rep.metrics["max_identity_error"] = r.max_identity_error;
    rep.metrics["max_eps_norm"] = *std::max_element(r.eps_norm.begin(), r.eps_norm.end());
    rep.add("identity_telescopes", r.max_identity_error <= 1e-9, "");
    rep.add("means_converged", r.final_distance < o.threshold, "");
    maybe_certify(p, o.strict, o.seed, rep);
    if (!o.report.empty()) write_report(o.report, rep);
    return rep.all_pass() ? 0 : 1;
}

// ----------------------------------------------------------- counterexample

struct CounterOpts {
    std::string sweep = "0:2:0.05", sweep_side, out, report;
    double c1 = 0.25;
    std::uint64_t seed = kDefaultSeed;
};

int run_counterexample(CounterOpts& o) {
    o.seed = resolve_seed(o.seed);
    const std::vector<double> tops = parse_range(o.sweep);
    const std::vector<double> sides = o.sweep_side.empty() ? tops : parse_range(o.sweep_side);
    const SweepResult s = counterexample_sweep(o.c1, tops, sides);

    if (!o.out.empty()) {
        auto out = open_out(o.out);
        out.precision(17);
        out << "t_top,t_side,fail_a,fail_b,viol_a,viol_b\n";
        for (const auto& c : s.cells) {
            out << c.t_top << ',' << c.t_side << ',' << (c.fail_edge_mid ? 1 : 0) << ','
                << (c.fail_box_corner ? 1 : 0) << ',' << c.viol_edge_mid << ',' << c.viol_box_corner << '\n';
        }
    }

    long fa = 0, fb = 0;
    for (const auto& c : s.cells) {
        fa += c.fail_edge_mid ? 1 : 0;
        fb += c.fail_box_corner ? 1 : 0;
    }
    RunReport rep;
    rep.command = "counterexample";
    rep.seed = o.seed;
    rep.config["c1"] = o.c1;
    rep.config["sweep"] = o.sweep;
    rep.config["sweep_side"] = o.sweep_side.empty() ? o.sweep : o.sweep_side;
    rep.metrics["cells"] = static_cast<long>(s.cells.size());
    rep.metrics["invariant_cells"] = s.pass_count;
    rep.metrics["fail_a_cells"] = fa;
    rep.metrics["fail_b_cells"] = fb;
    rep.add("every_cell_escapes", s.pass_count == 0,
            "translations where both probes stay inside: " + std::to_string(s.pass_count));
    if (!o.report.empty()) write_report(o.report, rep);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy vertex quantization toolkit"};
    app.require_subcommand(1);

    HalftoneOpts ho;
    auto* ht = app.add_subcommand("halftone", "quantize an image onto polytope vertices with error carry");
    ht->add_option("--in", ho.in, "input PGM (P5) or PPM (P6), maxval 255");
    ht->add_option("--synthetic", ho.synthetic, "generate the input: constant|random");
    ht->add_option("--width", ho.width, "synthetic width");
    ht->add_option("--height", ho.height, "synthetic height");
    ht->add_option("--channels", ho.channels, "synthetic channels (1 or 3)");
    ht->add_option("--level", ho.level, "synthetic constant gray level, 0..255");
    ht->add_option("--polytope", ho.polytope, "preset name or vertex file (default: interval / cube(3) by channels)");
    ht->add_option("--scheme", ho.scheme, "simple, tap1, fs3, uniform12, or a scheme file");
    ht->add_option("--out", ho.out, "output image path");
    ht->add_option("--scaling", ho.scaling, "window sizes for the growth experiment")->delimiter(',');
    ht->add_option("--anchor-stride", ho.anchor_stride, "window anchor stride (1 = every position)");
    ht->add_option("--report", ho.report, "JSON run report path");
    ht->add_option("--seed", ho.seed, "RNG seed");
    ht->add_flag("--strict", ho.strict, "also certify the polytope vertices are extreme");

    ScheduleOpts so;
    auto* sc = app.add_subcommand("schedule", "run one greedy orbit over a demand sequence");
    sc->add_option("--polytope", so.polytope, "preset name or vertex file");
    sc->add_option("--steps", so.steps, "number of random demands when no file is given");
    sc->add_option("--demands", so.demands, "demand file, one vector per line");
    sc->add_option("--x0", so.x0, "start state, comma-separated (default: first demand)");
    sc->add_option("--norm", so.norm, "error norm to report: l2, l1, linf");
    sc->add_option("--out", so.out, "trace CSV path");
    sc->add_option("--report", so.report, "JSON run report path");
    sc->add_option("--seed", so.seed, "RNG seed");
    sc->add_flag("--strict", so.strict, "also certify the polytope vertices are extreme");

    RegionOpts ro;
    auto* rg = app.add_subcommand("region", "build and check invariant regions");
    rg->add_option("--polytope", ro.polytope, "preset name or vertex file");
    rg->add_option("--shared", ro.shared, "additional polytopes sharing the region (repeatable)");
    rg->add_flag("--find-min-t", ro.find_min_t, "bisect for the smallest invariant outward translation");
    rg->add_option("--resolution", ro.resolution, "bisection resolution for --find-min-t");
    auto* pt = rg->add_option("--polygon-t", ro.polygon_t, "check the polygon region at this translation");
    auto* it = rg->add_option("--interval-t", ro.interval_t, "check the 1-D interval region at this translation");
    rg->add_flag("--q-infinity", ro.q_infinity, "build the notched-disc region over the marked directions");
    rg->add_option("--theta", ro.theta, "notch half-angle (default: a third of the smallest gap)");
    rg->add_option("--rho", ro.rho, "fixed region scale (default: doubling search up to 100x diameter)");
    rg->add_option("--boundary-samples", ro.boundary_samples, "boundary points for sampled checks");
    rg->add_option("--gamma-samples", ro.gamma_samples, "random demands per point for sampled checks");
    rg->add_flag("--absorb", ro.absorb, "run an absorption test into the built region");
    rg->add_option("--x0", ro.x0, "absorption start state, comma-separated");
    rg->add_option("--margin", ro.margin_frac, "demand shrink fraction toward the centroid");
    rg->add_option("--max-steps", ro.max_steps, "absorption horizon");
    rg->add_option("--stay-steps", ro.stay_steps, "steps the orbit must stay inside after entry");
    rg->add_option("--boundary", ro.boundary_out, "boundary export path (arc/seg lines)");
    rg->add_option("--report", ro.report_out, "verdict JSON path (default: stdout)");
    rg->add_option("--seed", ro.seed, "RNG seed");
    rg->add_flag("--strict", ro.strict, "reserved");

    SturmianOpts to;
    auto* st = app.add_subcommand("sturmian", "emit the coding of the interval rotation orbit");
    st->add_option("--gamma", to.gamma, "demand in (0, 1)")->required();
    st->add_option("--x0", to.x0, "start state");
    st->add_option("--n", to.n, "number of bits");
    st->add_option("--lmax", to.lmax, "report window balance up to this length");
    st->add_option("--absorb-x0", to.absorb_x0, "also test absorption from these starts (repeatable)");
    st->add_option("--horizon", to.horizon, "absorption horizon");
    st->add_option("--stay", to.stay, "absorption stay window");
    st->add_option("--out", to.out, "bits output path (default: stdout)");
    st->add_option("--report", to.report, "JSON run report path");
    st->add_option("--seed", to.seed, "RNG seed");

    PursuitOpts po;
    auto* pu = app.add_subcommand("pursuit", "track the vertex mean against the demand mean");
    pu->add_option("--polytope", po.polytope, "preset name or vertex file");
    pu->add_option("--n", po.n, "steps");
    pu->add_option("--p0", po.p0, "vertex-mean seed (default: vertex 0)");
    pu->add_option("--q0", po.q0, "demand-mean seed (default: vertex 1)");
    pu->add_option("--threshold", po.threshold, "final mean-distance bound asserted in the report");
    pu->add_option("--out", po.out, "CSV path");
    pu->add_option("--report", po.report, "JSON run report path");
    pu->add_option("--seed", po.seed, "RNG seed");
    pu->add_flag("--strict", po.strict, "also certify the polytope vertices are extreme");

    CounterOpts co;
    auto* ce = app.add_subcommand("counterexample", "sweep face translations of the truncated-cube solid");
    ce->add_option("--sweep", co.sweep, "t_top range start:stop:step (half-open)");
    ce->add_option("--sweep-side", co.sweep_side, "t_side range (default: same as --sweep)");
    ce->add_option("--c1", co.c1, "truncation depth in (0, 1/2)");
    ce->add_option("--out", co.out, "per-cell CSV path");
    ce->add_option("--report", co.report, "JSON run report path");
    ce->add_option("--seed", co.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    ro.has_polygon_t = pt->count() > 0;
    ro.has_interval_t = it->count() > 0;

    const auto t0 = std::chrono::steady_clock::now();
    int code = 2;
    try {
        if (app.got_subcommand(ht)) code = run_halftone(ho);
        else if (app.got_subcommand(sc)) code = run_schedule(so);
        else if (app.got_subcommand(rg)) code = run_region(ro);
        else if (app.got_subcommand(st)) code = run_sturmian(to);
        else if (app.got_subcommand(pu)) code = run_pursuit(po);
        else if (app.got_subcommand(ce)) code = run_counterexample(co);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = 2;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "[convexdyn] wall_ms=" << ms << '\n';
    return code;
}
