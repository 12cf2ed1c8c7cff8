#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "convexdyn/dynamics.hpp"
#include "convexdyn/polytope.hpp"

namespace convexdyn {

/*
 * Convex candidate region with a signed membership margin: margin(x) >= 0
 * inside, < 0 outside, measured in support units (not Euclidean distance,
 * but sign-exact). boundary_point parameterizes the boundary by u in [0,1)
 * where a boundary walk is available (1-D and 2-D region kinds here).
 */
class Region {
public:
    virtual ~Region() = default;
    virtual int dim() const = 0;
    virtual double margin(const double* x) const = 0;
    virtual Vec boundary_point(double u) const = 0;
    virtual Vec inner_point() const = 0;

    bool contains(const double* x, double tol = 0.0) const { return margin(x) >= -tol; }
};

struct IntervalRegion final : Region {
    double lo;
    double hi;

    IntervalRegion(double lo_, double hi_);
    int dim() const override { return 1; }
    double margin(const double* x) const override;
    Vec boundary_point(double u) const override;
    Vec inner_point() const override { return {0.5 * (lo + hi)}; }
};

/* Intersection of half-spaces; bounded 2-D instances additionally carry the
   corner polygon for boundary walks (call finalize after filling cons). */
struct HalfspaceRegion final : Region {
    int ambient = 2;
    std::vector<Halfspace> cons;
    std::vector<Vec> corners;      // CCW, 2-D only, filled by finalize()
    std::vector<double> cumlen;    // perimeter prefix per corner edge

    int dim() const override { return ambient; }
    double margin(const double* x) const override;
    Vec boundary_point(double u) const override;
    Vec inner_point() const override;
    void finalize();               // 2-D corner enumeration; throws if empty/unbounded
};

/* [v0 - t, v1 + t] for a 2-vertex 1-D polytope, with the exact invariance
   verdict: invariant iff 2t >= v1 - v0. Witness on the failing side is the
   cell midpoint paired with the far vertex. */
struct IntervalRegionResult {
    double lo;
    double hi;
    bool invariant;
    double witness_x;      // valid when !invariant
    double witness_gamma;
    double witness_image;
};
IntervalRegionResult interval_region(const Polytope& p, double t);

/* Edge supporting lines of a convex polygon pushed outward by t. Vertices
   may arrive in any order; they are sorted CCW and must be in strictly
   convex position (throws on collinear input). */
HalfspaceRegion polygon_region(const Polytope& p, double t);

struct Witness {
    Vec x;
    Vec gamma;
    Vec image;
    double violation;  // -margin of the image
};

struct InvarianceReport {
    bool ok = false;
    bool exact = false;       // verdict from an exact analysis, not sampling
    double min_margin = 0.0;  // worst image margin observed
    long x_samples = 0;
    long gamma_samples = 0;
    std::optional<Witness> witness;
};

/*
 * Sampled invariance check: x over a dense boundary walk plus random interior
 * points, gamma over all vertices plus random interior draws. phi_gamma(x) is
 * affine in gamma so the vertex gammas are the extreme cases; both are tested
 * anyway. A 1-D interval region with a 2-vertex polytope short-circuits to
 * the exact endpoint analysis.
 */
InvarianceReport verify_invariance(const Region& region, const Polytope& p,
                                   int boundary_samples, int gamma_samples, Rng& rng);

/*
 * Exact certificate for 2-D convex polygon regions: per polytope vertex u_i,
 * the piece Q ∩ (Voronoi cell of u_i) is a convex polygon; phi is the fixed
 * translation x + gamma - u_i there and gamma ranges over a polytope, so
 * invariance holds iff every piece corner maps into Q for every vertex gamma.
 * Corners are enumerated as pairwise constraint-line intersections.
 */
InvarianceReport polygon_invariance_exact(const HalfspaceRegion& q, const Polytope& p);

/*
 * Smallest outward translation (at the given resolution) whose polygon region
 * passes the exact certificate, by bisection; assumes pass-monotonicity in t
 * and re-verifies both bracket ends before returning. lo_out receives the
 * largest tested failing t.
 */
double find_min_t(const Polytope& p, double resolution, double* lo_out = nullptr);

/* Marked unit directions on the circle (both normals of every vertex
   difference) with the half-angle of the arcs removed around each. */
struct Omega2D {
    std::vector<double> marked;  // sorted angles in [0, 2*pi)
    double theta = 0.0;
    double min_gap = 0.0;
};

/* theta <= 0 selects the default min_gap/3; theta >= min_gap/2 throws
   (removed arcs would interfere). */
Omega2D build_omega_2d(const Polytope& p, double theta = 0.0);
Omega2D build_omega_union(const std::vector<const Polytope*>& ps, double theta = 0.0);

struct BoundaryElem {
    bool is_arc;
    double a0 = 0.0, a1 = 0.0;  // arc angles (radius = region rho, center origin)
    Vec p0, p1;                 // segment endpoints
    Vec dir;                    // segment construction tangent (unit)
    double length = 0.0;
};

/*
 * Intersection of the tangent half-planes {x . u <= rho} over the retained
 * directions: circle arcs where the direction set is retained, and per
 * removed arc a three-segment flattened notch (tangent at the arc start, at
 * the retained center, at the arc end). Membership is evaluated against the
 * exact support function of the retained set.
 */
struct ConvexRegion2D final : Region {
    double rho = 1.0;
    std::vector<double> marked;
    std::vector<std::pair<double, double>> retained;  // closed arcs [a0, a1]
    std::vector<BoundaryElem> boundary;
    double perimeter = 0.0;

    int dim() const override { return 2; }
    double margin(const double* x) const override;
    Vec boundary_point(double u) const override;
    Vec inner_point() const override { return {0.0, 0.0}; }
};

ConvexRegion2D build_q_infinity(const Omega2D& omega, double rho);

/* All cross products of consecutive boundary tangent directions are >= 0,
   compared exactly (junction tangents share the same computed vector, so
   their cross terms are exact zeros). */
bool convexity_exact(const ConvexRegion2D& r);

/* Ordered plain-text boundary: "arc cx cy r a0 a1" / "seg x0 y0 x1 y1". */
void write_boundary(std::ostream& out, const ConvexRegion2D& r);

/* Doubling search for a scale rho <= cap at which the region is (sampled-)
   invariant for every listed polytope's dynamics. */
struct RhoSearch {
    bool found = false;
    double rho = 0.0;
    ConvexRegion2D region;
    InvarianceReport report;  // report of the passing scale (or last failure)
};
RhoSearch find_invariant_rho(const Omega2D& omega, const std::vector<const Polytope*>& ps,
                             double rho0, double cap, int boundary_samples, int gamma_samples, Rng& rng);

/* Sweep of the truncated-cube solid's face translations: hexagon-plane pair
   moved outward by t_top, the six box faces by t_side. Each cell reports the
   two failure probes (edge midpoint under d-g, box corner under b-c). */
struct SweepCell {
    double t_top;
    double t_side;
    bool fail_edge_mid;    // probe at the top-face/lower-plane edge midpoint
    bool fail_box_corner;  // probe at the (1,0,1)-style box corner
    double viol_edge_mid;
    double viol_box_corner;
};
struct SweepResult {
    double c1;
    std::vector<SweepCell> cells;
    long pass_count = 0;  // cells where neither probe fails
};
SweepResult counterexample_sweep(double c1, const std::vector<double>& tops, const std::vector<double>& sides);

struct AbsorptionReport {
    bool entered = false;
    long entry_step = -1;
    bool stayed = false;
    double min_margin_after = 0.0;
    double final_margin = 0.0;
};

/* Iterate the dynamics with random gamma drawn from P shrunk toward its
   centroid by margin_frac; report first entry into the region and whether
   the next stay_steps iterates remain inside (tolerance 1e-9). */
AbsorptionReport absorption_test(const Region& region, const Polytope& p, double margin_frac,
                                 const Vec& x0, long max_steps, long stay_steps, Rng& rng);

}  // namespace convexdyn
