#pragma once

#include <iosfwd>
#include <vector>

#include "convexdyn/polytope.hpp"

namespace convexdyn {

struct StepResult {
    Vec eps;
    int vid;
};

/* phi_gamma(x) = x + gamma - v(x) */
Vec phi(const Polytope& p, const Vec& gamma, const Vec& x);

/*
 * One greedy step from cumulative error eps: quantize x = eps + gamma to the
 * nearest vertex V and return (x - v_V, V). The chosen V minimizes the next
 * error norm under the smallest-index tie rule.
 */
StepResult greedy_step(const Polytope& p, const Vec& eps, const Vec& gamma);

/* Allocation-free variant for long runs: eps is updated in place, x is a
   caller-provided scratch buffer of size p.dim(). Returns the vertex id. */
int greedy_step_inplace(const Polytope& p, double* eps, const double* gamma, double* x);

/*
 * Weighted step: modified input x = sum_i w[i] * history[i] + gamma, with
 * history[0] the most recent error. |history| == |weights|, weights a
 * probability vector (sum 1 within 1e-12, entries >= 0).
 */
StepResult general_step(const Polytope& p, const std::vector<Vec>& history,
                        const std::vector<double>& weights, const Vec& gamma);

/*
 * Orbit record. Entry k holds (gammas[k], xs[k], vids[k] = v(xs[k]),
 * epss[k] = xs[k] - vertex(vids[k])). xs[0] = x0 and
 * xs[k] = xs[k-1] + gammas[k] - vertex(vids[k-1]); gammas[0] is recorded
 * (average_gap uses it) but does not drive a step.
 */
struct Trace {
    std::vector<Vec> xs;
    std::vector<int> vids;
    std::vector<Vec> epss;
    std::vector<Vec> gammas;
    std::size_t size() const { return xs.size(); }
};

Trace run_orbit(const Polytope& p, const std::vector<Vec>& gammas, const Vec& x0);

/* || mean of gammas[0..n) - mean of chosen vertices[0..n) || */
double average_gap(const Polytope& p, const Trace& t, std::size_t n);

/* max over k of ||epss[k]|| */
double sup_error(const Trace& t);

/* CSV with columns k, gamma_0..gamma_{N-1}, vid, eps_0..eps_{N-1}, eps_norm */
void write_trace_csv(std::ostream& out, const Trace& t);

/* Uniform-ish draw inside P: convex combination of the vertices with
   Dirichlet(1,..,1) coefficients; inside P by construction. */
Vec random_gamma(const Polytope& p, Rng& rng);

}  // namespace convexdyn
