#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace convexdyn {

using Vec = std::vector<double>;

inline double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double dot(const Vec& a, const Vec& b) { return dot(a.data(), b.data(), a.size()); }

inline double dist2(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist2(const Vec& a, const Vec& b) { return dist2(a.data(), b.data(), a.size()); }

inline double norm2(const double* a, std::size_t n) { return dot(a, a, n); }
inline double norm(const double* a, std::size_t n) { return std::sqrt(norm2(a, n)); }
inline double norm(const Vec& a) { return norm(a.data(), a.size()); }

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(const Vec& a, double c) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

/* 2-D helpers */
inline double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }
inline double cross2(const Vec& a, const Vec& b) { return cross2(a[0], a[1], b[0], b[1]); }

}  // namespace convexdyn
