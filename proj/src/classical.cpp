#include "convexdyn/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace convexdyn {

BitSequence sturmian(double gamma, double x0, long n) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("sturmian: need 0 < gamma < 1");
    if (n < 1) throw std::invalid_argument("sturmian: need n >= 1");
    const Polytope p = preset("interval");
    BitSequence seq;
    seq.gamma = gamma;
    seq.x0 = x0;
    seq.bits.reserve(static_cast<size_t>(n));
    double x = x0;
    for (long k = 0; k < n; ++k) {
        const int b = nearest_vertex(p, &x);
        seq.bits.push_back(b);
        x += gamma - b;
    }
    return seq;
}

SturmianStats sturmian_stats(const BitSequence& seq, long lmax) {
    const long n = static_cast<long>(seq.bits.size());
    if (n < 1) throw std::invalid_argument("sturmian_stats: empty sequence");
    SturmianStats st;
    st.n = n;
    st.lmax = std::min(lmax, n);
    std::vector<long> pre(static_cast<size_t>(n) + 1, 0);
    for (long i = 0; i < n; ++i) pre[static_cast<size_t>(i) + 1] = pre[static_cast<size_t>(i)] + seq.bits[static_cast<size_t>(i)];
    st.ones_freq = static_cast<double>(pre.back()) / static_cast<double>(n);
    for (long len = 1; len <= st.lmax; ++len) {
        long lo = std::numeric_limits<long>::max();
        long hi = std::numeric_limits<long>::min();
        for (long i = 0; i + len <= n; ++i) {
            const long ones = pre[static_cast<size_t>(i + len)] - pre[static_cast<size_t>(i)];
            lo = std::min(lo, ones);
            hi = std::max(hi, ones);
        }
        const int defect = static_cast<int>(hi - lo);
        if (defect > st.max_defect) {
            st.max_defect = defect;
            st.worst_len = len;
        }
    }
    return st;
}

void write_bits(std::ostream& out, const BitSequence& seq) {
    for (int b : seq.bits) out << b;
    out << '\n';
}

AbsorbReport absorbing_interval_check(double gamma, double x0, long horizon, long stay_steps) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("absorbing_interval_check: need 0 < gamma < 1");
    const Polytope p = preset("interval");
    constexpr double tol = 1e-12;
    AbsorbReport rep;
    rep.lo = gamma - 0.5;
    rep.hi = gamma + 0.5;
    double x = x0;
    for (long k = 0; k <= horizon; ++k) {
        if (x >= rep.lo - tol && x <= rep.hi + tol) {
            rep.entered = true;
            rep.entry_step = k;
            break;
        }
        if (k == horizon) break;
        x += gamma - nearest_vertex(p, &x);
    }
    if (!rep.entered) return rep;
    rep.stayed = true;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (long k = 0; k < stay_steps; ++k) {
        x += gamma - nearest_vertex(p, &x);
        const double m = std::min(x - rep.lo, rep.hi - x);
        rep.min_margin = std::min(rep.min_margin, m);
        if (m < -tol) rep.stayed = false;
    }
    return rep;
}

PursuitResult pursuit(const Polytope& p, const std::vector<Vec>& gammas, const Vec& p0, const Vec& q0) {
    const int dim = p.dim();
    if (gammas.size() < 2) throw std::invalid_argument("pursuit: need at least two demands");
    for (const auto& g : gammas)
        if (static_cast<int>(g.size()) != dim) throw std::invalid_argument("pursuit: demand dimension mismatch");
    if (static_cast<int>(p0.size()) != dim || static_cast<int>(q0.size()) != dim) {
        throw std::invalid_argument("pursuit: seed dimension mismatch");
    }
    const long steps = static_cast<long>(gammas.size()) - 1;
    PursuitResult res;
    res.steps = steps;
    res.p.reserve(static_cast<size_t>(steps));
    res.q.reserve(static_cast<size_t>(steps));
    res.distance.reserve(static_cast<size_t>(steps));
    res.eps_norm.reserve(static_cast<size_t>(steps));

    Vec eps(static_cast<size_t>(dim), 0.0);
    Vec pm = p0;        // vertex mean, seeded before any observation
    Vec qm = q0;        // demand mean
    Vec qprev = q0;     // q(n) for the identity at row n (one row behind)
    const Vec& g1 = gammas[0];
    Vec s(static_cast<size_t>(dim));
    for (long n = 1; n <= steps; ++n) {
        const Vec& g = gammas[static_cast<size_t>(n - 1)];
        for (int c = 0; c < dim; ++c) s[static_cast<size_t>(c)] = eps[static_cast<size_t>(c)] + g[static_cast<size_t>(c)];
        const int vid = nearest_vertex(p, s.data());
        const double* v = p.vptr(vid);
        for (int c = 0; c < dim; ++c) eps[static_cast<size_t>(c)] = s[static_cast<size_t>(c)] - v[c];
        const double wn = 1.0 / static_cast<double>(n);
        for (int c = 0; c < dim; ++c) pm[static_cast<size_t>(c)] += wn * (v[c] - pm[static_cast<size_t>(c)]);
        qprev = qm;
        const Vec& gnext = gammas[static_cast<size_t>(n)];
        const double wq = 1.0 / static_cast<double>(n + 1);
        for (int c = 0; c < dim; ++c) qm[static_cast<size_t>(c)] += wq * (gnext[static_cast<size_t>(c)] - qm[static_cast<size_t>(c)]);

        double id_err2 = 0.0;
        double d2 = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double delta = eps[static_cast<size_t>(c)] -
                                 (static_cast<double>(n) * (qprev[static_cast<size_t>(c)] - pm[static_cast<size_t>(c)]) +
                                  (g1[static_cast<size_t>(c)] - q0[static_cast<size_t>(c)]));
            id_err2 += delta * delta;
            const double dd = qm[static_cast<size_t>(c)] - pm[static_cast<size_t>(c)];
            d2 += dd * dd;
        }
        res.max_identity_error = std::max(res.max_identity_error, std::sqrt(id_err2));
        res.p.push_back(pm);
        res.q.push_back(qm);
        res.distance.push_back(std::sqrt(d2));
        res.eps_norm.push_back(norm(eps));
    }
    res.final_distance = res.distance.back();
    return res;
}

void write_pursuit_csv(std::ostream& out, const PursuitResult& r) {
    if (r.p.empty()) throw std::invalid_argument("write_pursuit_csv: empty result");
    const size_t dim = r.p.front().size();
    out << "n";
    for (size_t c = 0; c < dim; ++c) out << ",p_" << c;
    for (size_t c = 0; c < dim; ++c) out << ",q_" << c;
    out << ",distance,eps_norm\n";
    out.precision(17);
    for (size_t i = 0; i < r.p.size(); ++i) {
        out << (i + 1);
        for (size_t c = 0; c < dim; ++c) out << ',' << r.p[i][c];
        for (size_t c = 0; c < dim; ++c) out << ',' << r.q[i][c];
        out << ',' << r.distance[i] << ',' << r.eps_norm[i] << '\n';
    }
}

}  // namespace convexdyn
