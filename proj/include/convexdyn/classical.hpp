#pragma once

#include <iosfwd>
#include <vector>

#include "convexdyn/polytope.hpp"

namespace convexdyn {

struct BitSequence {
    double gamma = 0.0;
    double x0 = 0.0;
    std::vector<int> bits;
};

/* Vertex indices emitted by the [0,1] interval dynamics along
   x(k+1) = x(k) + gamma - bit(k), bit(k) = nearest vertex of x(k). */
BitSequence sturmian(double gamma, double x0, long n);

struct SturmianStats {
    long n = 0;
    double ones_freq = 0.0;
    long lmax = 0;        // longest window length inspected
    int max_defect = 0;   // max over L <= lmax of (max - min) ones count per length-L window
    long worst_len = 0;   // a window length attaining max_defect
};
SturmianStats sturmian_stats(const BitSequence& seq, long lmax);

/* One ASCII digit per bit, single line, trailing newline. */
void write_bits(std::ostream& out, const BitSequence& seq);

struct AbsorbReport {
    double lo = 0.0;
    double hi = 0.0;
    bool entered = false;
    long entry_step = -1;
    bool stayed = false;
    double min_margin = 0.0;  // worst membership margin over the stay window
};

/* First entry of the interval orbit into [gamma - 1/2, gamma + 1/2]
   (membership tolerance 1e-12) within the horizon, then whether the next
   stay_steps iterates remain inside. */
AbsorbReport absorbing_interval_check(double gamma, double x0, long horizon, long stay_steps);

/*
 * Paired running means along one greedy orbit: p chases the observed
 * vertices, q chases the demands. Step n consumes gammas[n-1] for the orbit
 * and vertex mean, and gammas[n] for the demand mean, so steps =
 * gammas.size() - 1. Row n holds the means after n steps. The gap obeys
 * eps(n) = n * (q(n) - p(n+1)) + (gamma(1) - q(1)) exactly in exact
 * arithmetic; max_identity_error is the worst float deviation observed.
 */
struct PursuitResult {
    long steps = 0;
    std::vector<Vec> p;              // p[n-1] = vertex mean after n steps
    std::vector<Vec> q;              // q[n-1] = demand mean after n steps
    std::vector<double> distance;    // ||q - p|| per row
    std::vector<double> eps_norm;    // ||eps(n)|| per row
    double max_identity_error = 0.0;
    double final_distance = 0.0;
};
PursuitResult pursuit(const Polytope& p, const std::vector<Vec>& gammas, const Vec& p0, const Vec& q0);

/* CSV: n,p_0..p_{N-1},q_0..q_{N-1},distance,eps_norm */
void write_pursuit_csv(std::ostream& out, const PursuitResult& r);

}  // namespace convexdyn
