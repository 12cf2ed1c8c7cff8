#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "convexdyn/raster.hpp"

namespace convexdyn {

/*
 * One weighted tap. row_offset counts rows ABOVE the current pixel, so tap
 * (r, c) reads the error of pixel (i - r, j + c); validity requires
 * (0, c < 0) or (r > 0, any c), which is exactly "strictly earlier in
 * lexicographic order".
 */
struct SchemeTap {
    int row_offset;
    int col_offset;
    double weight;
};

struct NeighborhoodScheme {
    std::vector<SchemeTap> taps;

    /* throws std::invalid_argument on non-causal taps, negative weights,
       duplicates, or weight sum off 1 by more than 1e-12 */
    void validate() const;

    /* {(0,-1): 1}: reduces to simple diffusion everywhere (the border rule
       falls back to the lexicographic predecessor, which is the same tap) */
    static NeighborhoodScheme single_tap();
    /* 3 taps (0,-1) 7/16, (1,0) 5/16, (1,-1) 4/16 */
    static NeighborhoodScheme fs3();
    /* all 12 taps of the two-row neighborhood at weight 1/12 */
    static NeighborhoodScheme uniform12();

    static NeighborhoodScheme named(const std::string& name);
};

/* Scheme file: lines "row_offset col_offset weight", '#' comments. */
NeighborhoodScheme parse_scheme(std::istream& in);
NeighborhoodScheme load_scheme_file(const std::string& path);
void write_scheme(std::ostream& out, const NeighborhoodScheme& s);

struct HalftoneResult {
    OutputRaster out;
    Raster eps;  // per-pixel cumulative error, channels = polytope dim
};

/* Lexicographic scan carrying one error vector across pixels and line breaks. */
HalftoneResult halftone_simple(const Raster& img, const Polytope& p);

/*
 * Weighted scan: modified input = gamma(i,j) + sum of tap weights times the
 * stored errors of the referenced pixels. Taps that fall outside the image
 * are dropped and the remaining weights renormalized; when nothing remains
 * the pixel falls back to simple diffusion (error of the lexicographic
 * predecessor, zero for the very first pixel).
 */
HalftoneResult halftone_general(const Raster& img, const Polytope& p, const NeighborhoodScheme& scheme);

/* Sum over the n x n window with top-left (i0, j0) of gamma(i,j) - chosen vertex. */
Vec local_error(const Raster& img, const OutputRaster& out, const Polytope& p, int i0, int j0, int n);

struct ScalingResult {
    std::vector<int> sizes;
    std::vector<double> maxima;     // max ||window error|| per size
    std::vector<long> anchor_counts;
    double slope = 0.0;             // least-squares slope of log max vs log n
    double sigma = 0.0;             // standard error of the slope
    bool degenerate = false;        // some window maximum is exactly zero
};

/*
 * Window-growth experiment. Windows are anchored on a stride grid
 * (stride 1 = every valid position, computed via prefix sums). scheme ==
 * nullptr selects simple diffusion.
 */
ScalingResult scaling_experiment(const Raster& img, const Polytope& p, const NeighborhoodScheme* scheme,
                                 const std::vector<int>& sizes, int anchor_stride);

/* max over pixels of ||eps(i,j)|| */
double max_error_norm(const Raster& eps);

/* per-band max of ||eps|| over `bands` consecutive row bands */
std::vector<double> band_max_error(const Raster& eps, int bands);

/* || mean input - mean output vertex || over the whole image */
double mean_fidelity_gap(const Raster& img, const OutputRaster& out, const Polytope& p);

}  // namespace convexdyn
