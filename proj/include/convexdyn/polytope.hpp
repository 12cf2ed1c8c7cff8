#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "convexdyn/rng.hpp"
#include "convexdyn/vecmath.hpp"

namespace convexdyn {

/* x satisfies the half-space iff normal . x <= offset; normal is unit length */
struct Halfspace {
    Vec normal;
    double offset;
};

/*
 * Indexed vertex set in R^N. Vertices are trusted extreme points; order is
 * the construction order and the tie rule below depends on it. No hull
 * reduction is performed (see certify_extreme_points for the opt-in check).
 */
class Polytope {
public:
    Polytope(int dim, std::vector<Vec> vertices);

    int dim() const { return dim_; }
    int size() const { return m_; }
    const double* vptr(int i) const { return flat_.data() + static_cast<std::size_t>(i) * dim_; }
    Vec vertex(int i) const;
    Vec centroid() const;

private:
    int dim_;
    int m_;
    std::vector<double> flat_;
};

/*
 * Index of the vertex minimizing Euclidean distance to x; among ties, the
 * smallest index wins. Ties are declared when squared distances differ by
 * <= 1e-12 * (1 + larger squared distance), keeping the rule scale-robust.
 */
int nearest_vertex(const Polytope& p, const double* x);
int nearest_vertex(const Polytope& p, const Vec& x);

/* Perpendicular-bisector half-spaces whose intersection is vertex i's cell.
   Returned with unit normals: ((v_j - v_i)/|..|) . x <= (|v_j|^2 - |v_i|^2) / (2 |..|). */
std::vector<Halfspace> voronoi_halfspaces(const Polytope& p, int i);

/* Max pairwise vertex distance (attained at vertices for a polytope). */
double diameter(const Polytope& p);

/*
 * Named presets:
 *   interval          [0,1] on the line
 *   cube(N)           {0,1}^N in binary-counter order (bit c of the counter
 *                     is coordinate c)
 *   simplex(N)        origin plus the N standard basis vectors
 *   tristimulus       8 color vertices K,R,G,B,C,M,Y,W in R^3
 *   octa3d / octa3d(c) unit cube truncated by the two planes
 *                     x1+x2-x3 = c and = 1-c (0 < c < 1/2, default 0.25);
 *                     12 vertices, ordered so the smallest-index tie rule
 *                     resolves the two hexagon-edge bisectors the way the
 *                     counterexample sweep probes expect
 *   square            CCW unit square (0,0),(1,0),(1,1),(0,1)
 *   triangle          (0,0),(1,0),(0,1)
 *   pentagon          regular pentagon, circumradius 1, centered at origin
 */
Polytope preset(const std::string& name);

/* The octa3d preset with an explicit truncation depth. */
Polytope make_octa3d(double c1);

/* Plain-text literal: one vertex per line, whitespace-separated decimals,
   '#' starts a comment. */
Polytope parse_polytope(std::istream& in);
Polytope load_polytope_file(const std::string& path);
void write_polytope(std::ostream& out, const Polytope& p);

/* Resolve a CLI-style spec: preset name, or a path to a literal file. */
Polytope resolve_polytope(const std::string& spec);

Polytope translate(const Polytope& p, const Vec& c);

/*
 * Sampling certificate that every vertex is an extreme point: for each i,
 * search for a direction strictly supporting v_i against all others (the
 * centroid-difference direction plus random perturbations). Returns false
 * with a message if some vertex cannot be certified; not a disproof.
 */
bool certify_extreme_points(const Polytope& p, Rng& rng, int tries, std::string* msg);

}  // namespace convexdyn
