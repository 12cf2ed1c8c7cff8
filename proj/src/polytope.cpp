#include "convexdyn/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace convexdyn {

Polytope::Polytope(int dim, std::vector<Vec> vertices) : dim_(dim), m_(static_cast<int>(vertices.size())) {
    if (dim_ < 1) throw std::invalid_argument("polytope dimension must be >= 1");
    if (m_ < 2) throw std::invalid_argument("polytope needs at least 2 vertices");
    flat_.reserve(static_cast<std::size_t>(m_) * dim_);
    for (const auto& v : vertices) {
        if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("vertex dimension mismatch");
        for (double c : v) {
            if (!std::isfinite(c)) throw std::invalid_argument("vertex coordinates must be finite");
            flat_.push_back(c);
        }
    }
    for (int i = 0; i < m_; ++i)
        for (int j = i + 1; j < m_; ++j)
            if (dist2(vptr(i), vptr(j), dim_) == 0.0) throw std::invalid_argument("duplicate vertices");
}

Vec Polytope::vertex(int i) const {
    if (i < 0 || i >= m_) throw std::out_of_range("vertex index");
    return Vec(vptr(i), vptr(i) + dim_);
}

Vec Polytope::centroid() const {
    Vec c(dim_, 0.0);
    for (int i = 0; i < m_; ++i)
        for (int d = 0; d < dim_; ++d) c[d] += vptr(i)[d];
    for (double& x : c) x /= m_;
    return c;
}

int nearest_vertex(const Polytope& p, const double* x) {
    const int n = p.dim();
    double best = dist2(x, p.vptr(0), n);
    for (int i = 1; i < p.size(); ++i) best = std::min(best, dist2(x, p.vptr(i), n));
    for (int i = 0; i < p.size(); ++i) {
        double d2 = dist2(x, p.vptr(i), n);
        if (d2 - best <= 1e-12 * (1.0 + d2)) return i;  // first index within tie tolerance
    }
    return 0;  // unreachable
}

int nearest_vertex(const Polytope& p, const Vec& x) {
    if (static_cast<int>(x.size()) != p.dim()) throw std::invalid_argument("query dimension mismatch");
    return nearest_vertex(p, x.data());
}

std::vector<Halfspace> voronoi_halfspaces(const Polytope& p, int i) {
    if (i < 0 || i >= p.size()) throw std::out_of_range("vertex index");
    std::vector<Halfspace> hs;
    hs.reserve(p.size() - 1);
    const int n = p.dim();
    for (int j = 0; j < p.size(); ++j) {
        if (j == i) continue;
        Vec normal(n);
        for (int d = 0; d < n; ++d) normal[d] = p.vptr(j)[d] - p.vptr(i)[d];
        double len = norm(normal.data(), n);
        double offset = 0.5 * (norm2(p.vptr(j), n) - norm2(p.vptr(i), n)) / len;
        for (double& c : normal) c /= len;
        hs.push_back({std::move(normal), offset});
    }
    return hs;
}

double diameter(const Polytope& p) {
    double best = 0.0;
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j) best = std::max(best, dist2(p.vptr(i), p.vptr(j), p.dim()));
    return std::sqrt(best);
}

namespace {

Polytope make_cube(int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("cube dimension out of range");
    std::vector<Vec> vs;
    for (int b = 0; b < (1 << n); ++b) {
        Vec v(n);
        for (int c = 0; c < n; ++c) v[c] = (b >> c) & 1;
        vs.push_back(std::move(v));
    }
    return Polytope(n, std::move(vs));
}

Polytope make_simplex(int n) {
    if (n < 1) throw std::invalid_argument("simplex dimension out of range");
    std::vector<Vec> vs;
    vs.emplace_back(n, 0.0);
    for (int c = 0; c < n; ++c) {
        Vec v(n, 0.0);
        v[c] = 1.0;
        vs.push_back(std::move(v));
    }
    return Polytope(n, std::move(vs));
}

Polytope make_tristimulus() {
    std::vector<Vec> vs = {
        {5, 6, 6},     // K
        {30, 18, 7},   // R
        {11, 22, 13},  // G
        {9, 7, 20},    // B
        {21, 27, 72},  // C
        {33, 18, 22},  // M
        {65, 76, 14},  // Y
        {84, 87, 105}, // W
    };
    return Polytope(3, std::move(vs));
}

Polytope make_pentagon() {
    std::vector<Vec> vs;
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 5; ++k) {
        double a = pi / 2 + 2 * pi * k / 5;
        vs.push_back({std::cos(a), std::sin(a)});
    }
    return Polytope(2, std::move(vs));
}

/* parse "name(arg)" into name + optional argument string */
bool split_arg(const std::string& s, const std::string& name, std::string* arg) {
    if (s.rfind(name + "(", 0) != 0 || s.back() != ')') return false;
    *arg = s.substr(name.size() + 1, s.size() - name.size() - 2);
    return true;
}

}  // namespace

/*
 * Unit cube truncated by x1+x2-x3 = c and = 1-c. All 8 cube corners fall
 * outside the slab, so the 12 plane/edge intersections are the vertices:
 * a lower hexagon on x1+x2-x3 = c and an upper one on x1+x2-x3 = 1-c.
 * The order puts (1,c,1) before (1,0,1-c) and (1-c,1,1) before (1,1-c,1):
 * both pairs are equidistant from the counterexample sweep probes, and the
 * smallest-index rule must pick the first of each pair there.
 */
Polytope make_octa3d(double c) {
    if (!(c > 0.0 && c < 0.5)) throw std::invalid_argument("octa3d parameter must be in (0, 1/2)");
    std::vector<Vec> vs = {
        {1, c, 1},          // 0
        {1, 0, 1 - c},      // 1
        {c, 1, 1},          // 2
        {0, 1, 1 - c},      // 3
        {0, c, 0},          // 4
        {c, 0, 0},          // 5
        {1 - c, 1, 1},      // 6
        {1, 1 - c, 1},      // 7
        {1, 0, c},          // 8
        {1 - c, 0, 0},      // 9
        {0, 1 - c, 0},      // 10
        {0, 1, c},          // 11
    };
    return Polytope(3, std::move(vs));
}

Polytope preset(const std::string& name) {
    std::string arg;
    if (name == "interval") return Polytope(1, {{0.0}, {1.0}});
    if (name == "tristimulus") return make_tristimulus();
    if (name == "octa3d") return make_octa3d(0.25);
    if (split_arg(name, "octa3d", &arg)) return make_octa3d(std::stod(arg));
    if (split_arg(name, "cube", &arg)) return make_cube(std::stoi(arg));
    if (split_arg(name, "simplex", &arg)) return make_simplex(std::stoi(arg));
    if (name == "square") return Polytope(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    if (name == "triangle") return Polytope(2, {{0, 0}, {1, 0}, {0, 1}});
    if (name == "pentagon") return make_pentagon();
    throw std::invalid_argument("unknown polytope preset: " + name);
}

Polytope parse_polytope(std::istream& in) {
    std::vector<Vec> vs;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Vec v;
        double c;
        while (ls >> c) v.push_back(c);
        if (!ls.eof()) throw std::runtime_error("polytope literal: bad token in line: " + line);
        if (!v.empty()) vs.push_back(std::move(v));
    }
    if (vs.size() < 2) throw std::runtime_error("polytope literal: need at least 2 vertices");
    for (const auto& v : vs)
        if (v.size() != vs[0].size()) throw std::runtime_error("polytope literal: inconsistent dimensions");
    const int dim = static_cast<int>(vs[0].size());
    return Polytope(dim, std::move(vs));
}

Polytope load_polytope_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polytope file: " + path);
    return parse_polytope(in);
}

void write_polytope(std::ostream& out, const Polytope& p) {
    out.precision(17);
    for (int i = 0; i < p.size(); ++i) {
        for (int d = 0; d < p.dim(); ++d) out << (d ? " " : "") << p.vptr(i)[d];
        out << "\n";
    }
}

Polytope resolve_polytope(const std::string& spec) {
    try {
        return preset(spec);
    } catch (const std::invalid_argument&) {
        return load_polytope_file(spec);
    }
}

Polytope translate(const Polytope& p, const Vec& c) {
    if (static_cast<int>(c.size()) != p.dim()) throw std::invalid_argument("shift dimension mismatch");
    std::vector<Vec> vs;
    for (int i = 0; i < p.size(); ++i) vs.push_back(add(p.vertex(i), c));
    return Polytope(p.dim(), std::move(vs));
}

bool certify_extreme_points(const Polytope& p, Rng& rng, int tries, std::string* msg) {
    const int n = p.dim();
    for (int i = 0; i < p.size(); ++i) {
        Vec other(n, 0.0);
        for (int j = 0; j < p.size(); ++j) {
            if (j == i) continue;
            for (int d = 0; d < n; ++d) other[d] += p.vptr(j)[d];
        }
        for (double& c : other) c /= (p.size() - 1);
        bool certified = false;
        for (int t = 0; t < tries && !certified; ++t) {
            Vec dir(n);
            for (int d = 0; d < n; ++d)
                dir[d] = p.vptr(i)[d] - other[d] + (t == 0 ? 0.0 : 0.25 * (rng.uniform01() - 0.5));
            double self = dot(dir.data(), p.vptr(i), n);
            double best = -1e300;
            for (int j = 0; j < p.size(); ++j)
                if (j != i) best = std::max(best, dot(dir.data(), p.vptr(j), n));
            certified = self > best + 1e-12 * (1.0 + std::abs(self));
        }
        if (!certified) {
            if (msg) *msg = "vertex " + std::to_string(i) + " could not be certified extreme";
            return false;
        }
    }
    if (msg) msg->clear();
    return true;
}

}  // namespace convexdyn
