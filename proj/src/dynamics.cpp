#include "convexdyn/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace convexdyn {

Vec phi(const Polytope& p, const Vec& gamma, const Vec& x) {
    if (static_cast<int>(gamma.size()) != p.dim() || static_cast<int>(x.size()) != p.dim())
        throw std::invalid_argument("phi: dimension mismatch");
    int vid = nearest_vertex(p, x.data());
    Vec r(p.dim());
    for (int d = 0; d < p.dim(); ++d) r[d] = x[d] + gamma[d] - p.vptr(vid)[d];
    return r;
}

int greedy_step_inplace(const Polytope& p, double* eps, const double* gamma, double* x) {
    const int n = p.dim();
    for (int d = 0; d < n; ++d) x[d] = eps[d] + gamma[d];
    int vid = nearest_vertex(p, x);
    const double* v = p.vptr(vid);
    for (int d = 0; d < n; ++d) eps[d] = x[d] - v[d];
    return vid;
}

StepResult greedy_step(const Polytope& p, const Vec& eps, const Vec& gamma) {
    if (static_cast<int>(eps.size()) != p.dim() || static_cast<int>(gamma.size()) != p.dim())
        throw std::invalid_argument("greedy_step: dimension mismatch");
    StepResult r{eps, 0};
    Vec x(p.dim());
    r.vid = greedy_step_inplace(p, r.eps.data(), gamma.data(), x.data());
    return r;
}

StepResult general_step(const Polytope& p, const std::vector<Vec>& history,
                        const std::vector<double>& weights, const Vec& gamma) {
    if (history.size() != weights.size()) throw std::invalid_argument("general_step: weight/history length mismatch");
    if (static_cast<int>(gamma.size()) != p.dim()) throw std::invalid_argument("general_step: dimension mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("general_step: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("general_step: weights must sum to 1");
    Vec x = gamma;
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (static_cast<int>(history[i].size()) != p.dim())
            throw std::invalid_argument("general_step: history dimension mismatch");
        for (int d = 0; d < p.dim(); ++d) x[d] += weights[i] * history[i][d];
    }
    int vid = nearest_vertex(p, x.data());
    Vec eps(p.dim());
    for (int d = 0; d < p.dim(); ++d) eps[d] = x[d] - p.vptr(vid)[d];
    return {std::move(eps), vid};
}

Trace run_orbit(const Polytope& p, const std::vector<Vec>& gammas, const Vec& x0) {
    Trace t;
    if (gammas.empty()) return t;
    if (static_cast<int>(x0.size()) != p.dim()) throw std::invalid_argument("run_orbit: x0 dimension mismatch");
    t.xs.reserve(gammas.size());
    t.vids.reserve(gammas.size());
    t.epss.reserve(gammas.size());
    t.gammas = gammas;
    Vec x = x0;
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        if (static_cast<int>(gammas[k].size()) != p.dim())
            throw std::invalid_argument("run_orbit: gamma dimension mismatch");
        if (k > 0) {
            const double* v = p.vptr(t.vids[k - 1]);
            for (int d = 0; d < p.dim(); ++d) x[d] += gammas[k][d] - v[d];
        }
        int vid = nearest_vertex(p, x.data());
        Vec eps(p.dim());
        for (int d = 0; d < p.dim(); ++d) eps[d] = x[d] - p.vptr(vid)[d];
        t.xs.push_back(x);
        t.vids.push_back(vid);
        t.epss.push_back(std::move(eps));
    }
    return t;
}

double average_gap(const Polytope& p, const Trace& t, std::size_t n) {
    if (n == 0) throw std::invalid_argument("average_gap: n must be positive");
    if (n > t.size()) throw std::invalid_argument("average_gap: n exceeds trace length");
    Vec acc(p.dim(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double* v = p.vptr(t.vids[k]);
        for (int d = 0; d < p.dim(); ++d) acc[d] += t.gammas[k][d] - v[d];
    }
    for (double& c : acc) c /= static_cast<double>(n);
    return norm(acc);
}

double sup_error(const Trace& t) {
    if (t.size() == 0) throw std::invalid_argument("sup_error: empty trace");
    double best = 0.0;
    for (const auto& e : t.epss) best = std::max(best, norm(e));
    return best;
}

void write_trace_csv(std::ostream& out, const Trace& t) {
    const int n = t.size() ? static_cast<int>(t.gammas[0].size()) : 0;
    out << "k";
    for (int d = 0; d < n; ++d) out << ",gamma_" << d;
    out << ",vid";
    for (int d = 0; d < n; ++d) out << ",eps_" << d;
    out << ",eps_norm\n";
    out.precision(17);
    for (std::size_t k = 0; k < t.size(); ++k) {
        out << k;
        for (int d = 0; d < n; ++d) out << "," << t.gammas[k][d];
        out << "," << t.vids[k];
        for (int d = 0; d < n; ++d) out << "," << t.epss[k][d];
        out << "," << norm(t.epss[k]) << "\n";
    }
}

Vec random_gamma(const Polytope& p, Rng& rng) {
    std::vector<double> w = rng.dirichlet(static_cast<std::size_t>(p.size()));
    Vec g(p.dim(), 0.0);
    for (int i = 0; i < p.size(); ++i)
        for (int d = 0; d < p.dim(); ++d) g[d] += w[i] * p.vptr(i)[d];
    return g;
}

}  // namespace convexdyn
