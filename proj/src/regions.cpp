#include "convexdyn/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace convexdyn {

namespace {

constexpr double kViolationTol = 1e-9;

Vec udir(double a) { return {std::cos(a), std::sin(a)}; }
Vec tdir(double a) { return {-std::sin(a), std::cos(a)}; }

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    if (a >= 2.0 * M_PI) a = 0.0;
    return a;
}

// Intersection of the two constraint boundary lines; false when parallel.
bool line_intersection(const Halfspace& a, const Halfspace& b, Vec& out) {
    const double det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
    if (std::abs(det) < 1e-12) return false;
    out = {(a.offset * b.normal[1] - b.offset * a.normal[1]) / det,
           (a.normal[0] * b.offset - b.normal[0] * a.offset) / det};
    return true;
}

double min_margin_2d(const std::vector<Halfspace>& cons, const Vec& x) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& h : cons) m = std::min(m, h.offset - (h.normal[0] * x[0] + h.normal[1] * x[1]));
    return m;
}

// Feasible corners of a 2-D half-space intersection (pairwise boundary
// intersections kept when inside all constraints), deduplicated.
std::vector<Vec> enumerate_corners(const std::vector<Halfspace>& cons) {
    double scale = 1.0;
    for (const auto& h : cons) scale = std::max(scale, std::abs(h.offset));
    const double tol = 1e-9 * scale;
    std::vector<Vec> corners;
    Vec x;
    for (size_t a = 0; a < cons.size(); ++a) {
        for (size_t b = a + 1; b < cons.size(); ++b) {
            if (!line_intersection(cons[a], cons[b], x)) continue;
            if (min_margin_2d(cons, x) < -tol) continue;
            bool dup = false;
            for (const auto& c : corners) {
                if (dist2(c, x) <= 1e-18 * (1.0 + dot(c, c))) { dup = true; break; }
            }
            if (!dup) corners.push_back(x);
        }
    }
    return corners;
}

void sort_ccw(std::vector<Vec>& pts) {
    Vec mean = {0.0, 0.0};
    for (const auto& p : pts) { mean[0] += p[0]; mean[1] += p[1]; }
    mean[0] /= static_cast<double>(pts.size());
    mean[1] /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Vec& a, const Vec& b) {
        return std::atan2(a[1] - mean[1], a[0] - mean[0]) < std::atan2(b[1] - mean[1], b[0] - mean[0]);
    });
}

}  // namespace

IntervalRegion::IntervalRegion(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw std::invalid_argument("IntervalRegion: need lo < hi");
}

double IntervalRegion::margin(const double* x) const { return std::min(x[0] - lo, hi - x[0]); }

Vec IntervalRegion::boundary_point(double u) const { return {u < 0.5 ? lo : hi}; }

double HalfspaceRegion::margin(const double* x) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& h : cons) m = std::min(m, h.offset - dot(h.normal.data(), x, h.normal.size()));
    return m;
}

void HalfspaceRegion::finalize() {
    if (ambient != 2) throw std::logic_error("HalfspaceRegion: corner walk is 2-D only");
    corners = enumerate_corners(cons);
    if (corners.size() < 3) throw std::runtime_error("HalfspaceRegion: empty or degenerate region");
    sort_ccw(corners);
    cumlen.assign(corners.size() + 1, 0.0);
    for (size_t k = 0; k < corners.size(); ++k) {
        const Vec& a = corners[k];
        const Vec& b = corners[(k + 1) % corners.size()];
        cumlen[k + 1] = cumlen[k] + std::sqrt(dist2(a, b));
    }
}

Vec HalfspaceRegion::boundary_point(double u) const {
    if (corners.empty()) throw std::logic_error("HalfspaceRegion: finalize() before boundary walks");
    const double per = cumlen.back();
    double s = (u - std::floor(u)) * per;
    size_t k = 0;
    while (k + 1 < corners.size() && cumlen[k + 1] < s) ++k;
    const Vec& a = corners[k];
    const Vec& b = corners[(k + 1) % corners.size()];
    const double len = cumlen[k + 1] - cumlen[k];
    const double f = len > 0.0 ? (s - cumlen[k]) / len : 0.0;
    return {a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])};
}

Vec HalfspaceRegion::inner_point() const {
    if (corners.empty()) throw std::logic_error("HalfspaceRegion: finalize() before inner_point");
    Vec mean = {0.0, 0.0};
    for (const auto& p : corners) { mean[0] += p[0]; mean[1] += p[1]; }
    mean[0] /= static_cast<double>(corners.size());
    mean[1] /= static_cast<double>(corners.size());
    return mean;
}

IntervalRegionResult interval_region(const Polytope& p, double t) {
    if (p.dim() != 1 || p.size() != 2) throw std::invalid_argument("interval_region: need a 1-D polytope with two vertices");
    if (t < 0.0) throw std::invalid_argument("interval_region: need t >= 0");
    const double v0 = std::min(p.vertex(0)[0], p.vertex(1)[0]);
    const double v1 = std::max(p.vertex(0)[0], p.vertex(1)[0]);
    IntervalRegionResult r;
    r.lo = v0 - t;
    r.hi = v1 + t;
    // The midpoint cell maps across the gap by the full vertex spread, so the
    // region absorbs it iff the outward slack covers half the spread.
    r.invariant = 2.0 * t >= v1 - v0;
    r.witness_x = 0.0;
    r.witness_gamma = 0.0;
    r.witness_image = 0.0;
    if (!r.invariant) {
        const double mid = 0.5 * (v0 + v1);
        const double tie = p.vertex(nearest_vertex(p, &mid))[0];
        r.witness_x = mid;
        r.witness_gamma = tie == v0 ? v1 : v0;
        r.witness_image = mid + r.witness_gamma - tie;
    }
    return r;
}

HalfspaceRegion polygon_region(const Polytope& p, double t) {
    if (p.dim() != 2) throw std::invalid_argument("polygon_region: need a 2-D polytope");
    if (p.size() < 3) throw std::invalid_argument("polygon_region: need at least three vertices");
    std::vector<Vec> verts;
    verts.reserve(p.size());
    for (int i = 0; i < p.size(); ++i) verts.push_back(p.vertex(i));
    sort_ccw(verts);
    const double d = diameter(p);
    for (size_t k = 0; k < verts.size(); ++k) {
        const Vec& a = verts[k];
        const Vec& b = verts[(k + 1) % verts.size()];
        const Vec& c = verts[(k + 2) % verts.size()];
        const Vec e1 = {b[0] - a[0], b[1] - a[1]};
        const Vec e2 = {c[0] - b[0], c[1] - b[1]};
        if (cross2(e1, e2) <= 1e-12 * d * d) throw std::invalid_argument("polygon_region: collinear vertex set (need strictly convex position)");
    }
    HalfspaceRegion q;
    q.ambient = 2;
    for (size_t k = 0; k < verts.size(); ++k) {
        const Vec& a = verts[k];
        const Vec& b = verts[(k + 1) % verts.size()];
        Vec e = {b[0] - a[0], b[1] - a[1]};
        const double len = std::sqrt(dot(e, e));
        Vec n = {e[1] / len, -e[0] / len};  // outward for a CCW polygon
        q.cons.push_back({n, dot(n, a) + t});
    }
    q.finalize();
    return q;
}

namespace {

// Exact invariance verdict for a 2-vertex 1-D polytope on [lo, hi]: the map
// splits at the vertex midpoint into two translations, and the binding images
// are mid +- (v1 - v0) together with requiring the split point inside.
InvarianceReport interval_invariance_exact(const IntervalRegion& reg, const Polytope& p) {
    const double v0 = std::min(p.vertex(0)[0], p.vertex(1)[0]);
    const double v1 = std::max(p.vertex(0)[0], p.vertex(1)[0]);
    const double mid = 0.5 * (v0 + v1);
    const double d = v1 - v0;
    InvarianceReport rep;
    rep.exact = true;
    rep.ok = reg.lo <= mid && mid <= reg.hi && mid + d <= reg.hi && mid - d >= reg.lo;
    rep.min_margin = std::numeric_limits<double>::infinity();
    const double lox = std::max(reg.lo, std::min(reg.hi, mid));
    const double cands[5] = {lox, std::nextafter(lox, reg.lo), std::nextafter(lox, reg.hi), reg.lo, reg.hi};
    for (double x : cands) {
        if (x < reg.lo || x > reg.hi) continue;
        const double v = p.vertex(nearest_vertex(p, &x))[0];
        for (double g : {v0, v1}) {
            const double img = x + g - v;
            const double m = std::min(img - reg.lo, reg.hi - img);
            ++rep.x_samples;
            if (m < rep.min_margin) {
                rep.min_margin = m;
                if (m < 0.0) rep.witness = Witness{{x}, {g}, {img}, -m};
            }
        }
    }
    rep.gamma_samples = 2;
    if (rep.ok) rep.witness.reset();
    return rep;
}

}  // namespace

InvarianceReport verify_invariance(const Region& region, const Polytope& p,
                                   int boundary_samples, int gamma_samples, Rng& rng) {
    if (region.dim() != p.dim()) throw std::invalid_argument("verify_invariance: region/polytope dimension mismatch");
    if (const auto* ir = dynamic_cast<const IntervalRegion*>(&region); ir != nullptr && p.size() == 2) {
        return interval_invariance_exact(*ir, p);
    }
    const int dim = p.dim();
    std::vector<Vec> gammas;
    for (int i = 0; i < p.size(); ++i) gammas.push_back(p.vertex(i));
    for (int i = 0; i < gamma_samples; ++i) gammas.push_back(random_gamma(p, rng));

    const int nb = std::max(boundary_samples, 8);
    std::vector<Vec> xs;
    xs.reserve(static_cast<size_t>(nb) + static_cast<size_t>(nb) / 4);
    for (int i = 0; i < nb; ++i) xs.push_back(region.boundary_point((i + 0.5) / nb));
    const Vec inner = region.inner_point();
    for (int i = 0; i < nb / 4; ++i) {
        const double r = std::sqrt(rng.uniform01());
        Vec b = region.boundary_point(rng.uniform01());
        for (int c = 0; c < dim; ++c) b[c] = inner[c] + r * (b[c] - inner[c]);
        xs.push_back(std::move(b));
    }

    InvarianceReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.x_samples = static_cast<long>(xs.size());
    rep.gamma_samples = static_cast<long>(gammas.size());
    Vec img(static_cast<size_t>(dim));
    for (const auto& x : xs) {
        const int vid = nearest_vertex(p, x.data());
        const double* v = p.vptr(vid);
        for (const auto& g : gammas) {
            for (int c = 0; c < dim; ++c) img[static_cast<size_t>(c)] = x[static_cast<size_t>(c)] + g[static_cast<size_t>(c)] - v[c];
            const double m = region.margin(img.data());
            if (m < rep.min_margin) {
                rep.min_margin = m;
                if (m < -kViolationTol) rep.witness = Witness{x, g, img, -m};
            }
        }
    }
    rep.ok = rep.min_margin >= -kViolationTol;
    if (rep.ok) rep.witness.reset();
    return rep;
}

InvarianceReport polygon_invariance_exact(const HalfspaceRegion& q, const Polytope& p) {
    if (q.ambient != 2 || p.dim() != 2) throw std::invalid_argument("polygon_invariance_exact: 2-D only");
    InvarianceReport rep;
    rep.exact = true;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.gamma_samples = p.size();
    Vec img(2);
    for (int i = 0; i < p.size(); ++i) {
        std::vector<Halfspace> cons = q.cons;
        for (auto& h : voronoi_halfspaces(p, i)) cons.push_back(std::move(h));
        const std::vector<Vec> corners = enumerate_corners(cons);
        rep.x_samples += static_cast<long>(corners.size());
        const double* vi = p.vptr(i);
        for (const auto& x : corners) {
            for (int g = 0; g < p.size(); ++g) {
                const double* vg = p.vptr(g);
                img[0] = x[0] + vg[0] - vi[0];
                img[1] = x[1] + vg[1] - vi[1];
                const double m = q.margin(img.data());
                if (m < rep.min_margin) {
                    rep.min_margin = m;
                    if (m < -kViolationTol) rep.witness = Witness{x, p.vertex(g), img, -m};
                }
            }
        }
    }
    rep.ok = rep.min_margin >= -kViolationTol;
    if (rep.ok) rep.witness.reset();
    return rep;
}

double find_min_t(const Polytope& p, double resolution, double* lo_out) {
    if (resolution <= 0.0) throw std::invalid_argument("find_min_t: need resolution > 0");
    auto passes = [&](double t) { return polygon_invariance_exact(polygon_region(p, t), p).ok; };
    if (passes(0.0)) {
        if (lo_out) *lo_out = 0.0;
        return 0.0;
    }
    const double cap = 64.0 * diameter(p);
    double hi = diameter(p);
    while (!passes(hi)) {
        hi *= 2.0;
        if (hi > cap) throw std::runtime_error("find_min_t: no invariant translation found below the search cap");
    }
    double lo = 0.0;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        if (passes(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if (!passes(hi) || passes(lo)) throw std::runtime_error("find_min_t: non-monotone verdicts at the bracket ends");
    if (lo_out) *lo_out = lo;
    return hi;
}

namespace {

Omega2D finish_omega(std::vector<double> angs, double theta) {
    if (angs.empty()) throw std::invalid_argument("marked direction set is empty");
    std::sort(angs.begin(), angs.end());
    std::vector<double> marked;
    for (double a : angs) {
        if (marked.empty() || a - marked.back() > 1e-9) marked.push_back(a);
    }
    if (marked.size() > 1 && (marked.front() + 2.0 * M_PI) - marked.back() <= 1e-9) marked.pop_back();
    Omega2D om;
    om.marked = std::move(marked);
    om.min_gap = 2.0 * M_PI;
    const size_t k = om.marked.size();
    if (k > 1) {
        for (size_t i = 0; i < k; ++i) {
            const double next = i + 1 < k ? om.marked[i + 1] : om.marked[0] + 2.0 * M_PI;
            om.min_gap = std::min(om.min_gap, next - om.marked[i]);
        }
    }
    om.theta = theta <= 0.0 ? om.min_gap / 3.0 : theta;
    if (om.theta >= om.min_gap / 2.0) {
        std::ostringstream msg;
        msg << "notch half-angle " << om.theta << " interferes with the smallest marked-direction gap " << om.min_gap;
        throw std::invalid_argument(msg.str());
    }
    return om;
}

void append_pair_normals(const Polytope& p, std::vector<double>& angs) {
    for (int i = 0; i < p.size(); ++i) {
        for (int j = i + 1; j < p.size(); ++j) {
            const double dx = p.vptr(j)[0] - p.vptr(i)[0];
            const double dy = p.vptr(j)[1] - p.vptr(i)[1];
            const double base = std::atan2(dy, dx);
            angs.push_back(wrap_angle(base + 0.5 * M_PI));
            angs.push_back(wrap_angle(base - 0.5 * M_PI));
        }
    }
}

}  // namespace

Omega2D build_omega_2d(const Polytope& p, double theta) {
    if (p.dim() != 2) throw std::invalid_argument("build_omega_2d: need a 2-D polytope");
    std::vector<double> angs;
    append_pair_normals(p, angs);
    return finish_omega(std::move(angs), theta);
}

Omega2D build_omega_union(const std::vector<const Polytope*>& ps, double theta) {
    if (ps.empty()) throw std::invalid_argument("build_omega_union: need at least one polytope");
    std::vector<double> angs;
    for (const Polytope* p : ps) {
        if (p->dim() != 2) throw std::invalid_argument("build_omega_union: need 2-D polytopes");
        append_pair_normals(*p, angs);
    }
    return finish_omega(std::move(angs), theta);
}

ConvexRegion2D build_q_infinity(const Omega2D& omega, double rho) {
    if (rho <= 0.0) throw std::invalid_argument("build_q_infinity: need rho > 0");
    ConvexRegion2D r;
    r.rho = rho;
    r.marked = omega.marked;
    if (omega.marked.empty()) {
        BoundaryElem e;
        e.is_arc = true;
        e.a0 = 0.0;
        e.a1 = 2.0 * M_PI;
        e.length = rho * 2.0 * M_PI;
        r.boundary.push_back(e);
        r.retained.emplace_back(0.0, 2.0 * M_PI);
        r.perimeter = e.length;
        return r;
    }
    const double th = omega.theta;
    const double tan_scale = rho / std::cos(0.5 * th);
    const size_t k = omega.marked.size();
    auto seg = [&](const Vec& a, const Vec& b, double tang) {
        BoundaryElem e;
        e.is_arc = false;
        e.p0 = a;
        e.p1 = b;
        e.dir = tdir(tang);
        e.length = std::sqrt(dist2(a, b));
        r.boundary.push_back(e);
    };
    for (size_t i = 0; i < k; ++i) {
        const double a = omega.marked[i];
        const double anext = (i + 1 < k ? omega.marked[i + 1] : omega.marked[0] + 2.0 * M_PI);
        // Flattened notch: tangent chords at a - th, a, a + th meeting at the
        // pairwise tangent-line intersections.
        const Vec pm = scale(udir(a - th), rho);
        const Vec pp = scale(udir(a + th), rho);
        const Vec t1 = scale(udir(a - 0.5 * th), tan_scale);
        const Vec t2 = scale(udir(a + 0.5 * th), tan_scale);
        seg(pm, t1, a - th);
        seg(t1, t2, a);
        seg(t2, pp, a + th);
        BoundaryElem arc;
        arc.is_arc = true;
        arc.a0 = a + th;
        arc.a1 = anext - th;
        arc.length = rho * (arc.a1 - arc.a0);
        r.boundary.push_back(arc);
        r.retained.emplace_back(arc.a0, arc.a1);
    }
    for (const auto& e : r.boundary) r.perimeter += e.length;
    return r;
}

double ConvexRegion2D::margin(const double* x) const {
    // Support of x over the retained direction set, compared against rho.
    double s = -std::numeric_limits<double>::infinity();
    for (double m : marked) {
        const Vec u = udir(m);
        s = std::max(s, u[0] * x[0] + u[1] * x[1]);
    }
    const double nx = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    double ang = std::atan2(x[1], x[0]);
    if (ang < 0.0) ang += 2.0 * M_PI;
    for (const auto& [a0, a1] : retained) {
        if ((ang >= a0 && ang <= a1) || (ang + 2.0 * M_PI >= a0 && ang + 2.0 * M_PI <= a1)) {
            s = std::max(s, nx);
        } else {
            const Vec u0 = udir(a0);
            const Vec u1 = udir(a1);
            s = std::max(s, u0[0] * x[0] + u0[1] * x[1]);
            s = std::max(s, u1[0] * x[0] + u1[1] * x[1]);
        }
    }
    return rho - s;
}

Vec ConvexRegion2D::boundary_point(double u) const {
    double s = (u - std::floor(u)) * perimeter;
    for (const auto& e : boundary) {
        if (s > e.length) {
            s -= e.length;
            continue;
        }
        const double f = e.length > 0.0 ? s / e.length : 0.0;
        if (e.is_arc) return scale(udir(e.a0 + f * (e.a1 - e.a0)), rho);
        return {e.p0[0] + f * (e.p1[0] - e.p0[0]), e.p0[1] + f * (e.p1[1] - e.p0[1])};
    }
    return scale(udir(boundary.empty() ? 0.0 : boundary.back().a1), rho);
}

bool convexity_exact(const ConvexRegion2D& r) {
    // Arc endpoint tangents coincide with the stored direction of the
    // adjacent chord (same construction angle), so the chord directions in
    // boundary order carry the full turning sequence; arcs themselves turn
    // counterclockwise because their sweep is positive.
    std::vector<const Vec*> dirs;
    for (const auto& e : r.boundary) {
        if (e.is_arc) {
            if (!(e.a1 >= e.a0)) return false;
        } else {
            dirs.push_back(&e.dir);
        }
    }
    if (dirs.size() < 2) return true;
    for (size_t i = 0; i < dirs.size(); ++i) {
        const Vec& a = *dirs[i];
        const Vec& b = *dirs[(i + 1) % dirs.size()];
        if (!(cross2(a, b) >= 0.0)) return false;
    }
    return true;
}

void write_boundary(std::ostream& out, const ConvexRegion2D& r) {
    out.precision(17);
    for (const auto& e : r.boundary) {
        if (e.is_arc) {
            out << "arc 0 0 " << r.rho << ' ' << e.a0 << ' ' << e.a1 << '\n';
        } else {
            out << "seg " << e.p0[0] << ' ' << e.p0[1] << ' ' << e.p1[0] << ' ' << e.p1[1] << '\n';
        }
    }
}

RhoSearch find_invariant_rho(const Omega2D& omega, const std::vector<const Polytope*>& ps,
                             double rho0, double cap, int boundary_samples, int gamma_samples, Rng& rng) {
    if (ps.empty()) throw std::invalid_argument("find_invariant_rho: need at least one polytope");
    if (rho0 <= 0.0 || cap < rho0) throw std::invalid_argument("find_invariant_rho: need 0 < rho0 <= cap");
    RhoSearch s;
    for (double rho = rho0; rho <= cap * (1.0 + 1e-12); rho *= 2.0) {
        s.region = build_q_infinity(omega, rho);
        InvarianceReport combined;
        combined.ok = true;
        combined.min_margin = std::numeric_limits<double>::infinity();
        for (const Polytope* p : ps) {
            InvarianceReport rep = verify_invariance(s.region, *p, boundary_samples, gamma_samples, rng);
            combined.x_samples += rep.x_samples;
            combined.gamma_samples += rep.gamma_samples;
            combined.min_margin = std::min(combined.min_margin, rep.min_margin);
            if (!rep.ok) {
                combined.ok = false;
                if (!combined.witness) combined.witness = rep.witness;
            }
        }
        s.report = combined;
        if (combined.ok) {
            s.found = true;
            s.rho = rho;
            return s;
        }
    }
    s.found = false;
    return s;
}

SweepResult counterexample_sweep(double c1, const std::vector<double>& tops, const std::vector<double>& sides) {
    if (!(c1 > 0.0 && c1 < 0.5)) throw std::invalid_argument("counterexample_sweep: need 0 < c1 < 1/2");
    const Polytope p = make_octa3d(c1);
    const double inv3 = 1.0 / std::sqrt(3.0);
    // Truncated cube: unit box faces translated by t_side, both cutting
    // planes (unit normal (1,1,-1)/sqrt(3)) translated by t_top.
    auto qmargin = [&](const double* x, double tt, double ts) {
        double m = std::min({(1.0 + ts) - x[0], x[0] + ts, (1.0 + ts) - x[1], x[1] + ts, (1.0 + ts) - x[2], x[2] + ts});
        const double h = (x[0] + x[1] - x[2]) * inv3;
        m = std::min(m, (1.0 - c1) * inv3 + tt - h);
        m = std::min(m, h - (c1 * inv3 - tt));
        return m;
    };
    const double* vc = p.vptr(0);
    const double* vb = p.vptr(1);
    const double* vd = p.vptr(2);
    const double* vg = p.vptr(6);
    SweepResult res;
    res.c1 = c1;
    Vec img(3);
    const double sqrt3 = std::sqrt(3.0);
    for (double tt : tops) {
        for (double ts : sides) {
            SweepCell cell;
            cell.t_top = tt;
            cell.t_side = ts;
            cell.fail_edge_mid = false;
            cell.fail_box_corner = false;
            cell.viol_edge_mid = 0.0;
            cell.viol_box_corner = 0.0;
            // Midpoint of the segment where the lower cutting plane crosses
            // the top box face; its cell owner maps it below that plane.
            const double sum = (c1 - sqrt3 * tt) + (1.0 + ts);
            const Vec y = {0.5 * sum, 0.5 * sum, 1.0 + ts};
            if (qmargin(y.data(), tt, ts) >= -kViolationTol && nearest_vertex(p, y.data()) == 6) {
                for (int c = 0; c < 3; ++c) img[static_cast<size_t>(c)] = y[static_cast<size_t>(c)] + vd[c] - vg[c];
                const double m = qmargin(img.data(), tt, ts);
                if (m < -kViolationTol) {
                    cell.fail_edge_mid = true;
                    cell.viol_edge_mid = -m;
                }
            }
            // Box corner above the top hexagon; its cell owner drags it out
            // through the side face.
            const Vec w = {1.0 + ts, -ts, 1.0 + ts};
            if (qmargin(w.data(), tt, ts) >= -kViolationTol && nearest_vertex(p, w.data()) == 0) {
                for (int c = 0; c < 3; ++c) img[static_cast<size_t>(c)] = w[static_cast<size_t>(c)] + vb[c] - vc[c];
                const double m = qmargin(img.data(), tt, ts);
                if (m < -kViolationTol) {
                    cell.fail_box_corner = true;
                    cell.viol_box_corner = -m;
                }
            }
            if (!cell.fail_edge_mid && !cell.fail_box_corner) ++res.pass_count;
            res.cells.push_back(cell);
        }
    }
    return res;
}

AbsorptionReport absorption_test(const Region& region, const Polytope& p, double margin_frac,
                                 const Vec& x0, long max_steps, long stay_steps, Rng& rng) {
    if (static_cast<int>(x0.size()) != p.dim() || region.dim() != p.dim()) {
        throw std::invalid_argument("absorption_test: dimension mismatch");
    }
    if (!(margin_frac >= 0.0 && margin_frac < 1.0)) throw std::invalid_argument("absorption_test: need 0 <= margin_frac < 1");
    const Vec cen = p.centroid();
    const int dim = p.dim();
    auto draw = [&]() {
        Vec g = random_gamma(p, rng);
        for (int c = 0; c < dim; ++c) {
            g[static_cast<size_t>(c)] = cen[static_cast<size_t>(c)] + (1.0 - margin_frac) * (g[static_cast<size_t>(c)] - cen[static_cast<size_t>(c)]);
        }
        return g;
    };
    auto step = [&](Vec& x) {
        const int vid = nearest_vertex(p, x.data());
        const double* v = p.vptr(vid);
        const Vec g = draw();
        for (int c = 0; c < dim; ++c) x[static_cast<size_t>(c)] += g[static_cast<size_t>(c)] - v[c];
    };
    AbsorptionReport rep;
    Vec x = x0;
    for (long k = 0; k <= max_steps; ++k) {
        if (region.margin(x.data()) >= 0.0) {
            rep.entered = true;
            rep.entry_step = k;
            break;
        }
        if (k == max_steps) break;
        step(x);
    }
    rep.final_margin = region.margin(x.data());
    if (!rep.entered) return rep;
    rep.stayed = true;
    rep.min_margin_after = std::numeric_limits<double>::infinity();
    for (long k = 0; k < stay_steps; ++k) {
        step(x);
        const double m = region.margin(x.data());
        rep.min_margin_after = std::min(rep.min_margin_after, m);
        if (m < -kViolationTol) rep.stayed = false;
    }
    rep.final_margin = region.margin(x.data());
    return rep;
}

}  // namespace convexdyn
