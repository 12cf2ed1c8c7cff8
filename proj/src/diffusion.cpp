#include "convexdyn/diffusion.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "convexdyn/dynamics.hpp"

namespace convexdyn {

void NeighborhoodScheme::validate() const {
    if (taps.empty()) throw std::invalid_argument("scheme: no taps");
    double sum = 0.0;
    for (const auto& t : taps) {
        bool causal = (t.row_offset == 0 && t.col_offset < 0) || t.row_offset > 0;
        if (!causal) throw std::invalid_argument("scheme: tap does not precede the current pixel");
        if (t.weight < 0.0) throw std::invalid_argument("scheme: negative weight");
        sum += t.weight;
    }
    for (std::size_t a = 0; a < taps.size(); ++a)
        for (std::size_t b = a + 1; b < taps.size(); ++b)
            if (taps[a].row_offset == taps[b].row_offset && taps[a].col_offset == taps[b].col_offset)
                throw std::invalid_argument("scheme: duplicate tap");
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("scheme: weights must sum to 1");
}

NeighborhoodScheme NeighborhoodScheme::single_tap() { return {{{0, -1, 1.0}}}; }

NeighborhoodScheme NeighborhoodScheme::fs3() {
    return {{{0, -1, 7.0 / 16.0}, {1, 0, 5.0 / 16.0}, {1, -1, 4.0 / 16.0}}};
}

NeighborhoodScheme NeighborhoodScheme::uniform12() {
    NeighborhoodScheme s;
    s.taps.push_back({0, -1, 1.0 / 12.0});
    s.taps.push_back({0, -2, 1.0 / 12.0});
    for (int r = 1; r <= 2; ++r)
        for (int c = 2; c >= -2; --c) s.taps.push_back({r, c, 1.0 / 12.0});
    return s;
}

NeighborhoodScheme NeighborhoodScheme::named(const std::string& name) {
    if (name == "tap1" || name == "single") return single_tap();
    if (name == "fs3") return fs3();
    if (name == "uniform12" || name == "u12") return uniform12();
    throw std::invalid_argument("unknown scheme name: " + name);
}

NeighborhoodScheme parse_scheme(std::istream& in) {
    NeighborhoodScheme s;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int r, c;
        double w;
        if (ls >> r >> c >> w) {
            std::string rest;
            if (ls >> rest) throw std::runtime_error("scheme file: trailing token: " + rest);
            s.taps.push_back({r, c, w});
        } else {
            ls.clear();
            std::string probe;
            if (ls >> probe) throw std::runtime_error("scheme file: bad line: " + line);
        }
    }
    s.validate();
    return s;
}

NeighborhoodScheme load_scheme_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scheme file: " + path);
    return parse_scheme(in);
}

void write_scheme(std::ostream& out, const NeighborhoodScheme& s) {
    out.precision(17);
    for (const auto& t : s.taps) out << t.row_offset << " " << t.col_offset << " " << t.weight << "\n";
}

HalftoneResult halftone_simple(const Raster& img, const Polytope& p) {
    if (img.channels != p.dim()) throw std::invalid_argument("halftone: channel count != polytope dimension");
    HalftoneResult r;
    r.out.width = img.width;
    r.out.height = img.height;
    r.out.ids.resize(static_cast<std::size_t>(img.width) * img.height);
    r.eps = Raster(img.width, img.height, p.dim());
    const int n = p.dim();
    Vec eps(n, 0.0), x(n);
    std::size_t k = 0;
    for (int i = 0; i < img.height; ++i)
        for (int j = 0; j < img.width; ++j, ++k) {
            int vid = greedy_step_inplace(p, eps.data(), img.pixel(i, j), x.data());
            r.out.ids[k] = vid;
            for (int d = 0; d < n; ++d) r.eps.data[k * n + d] = eps[d];
        }
    return r;
}

HalftoneResult halftone_general(const Raster& img, const Polytope& p, const NeighborhoodScheme& scheme) {
    scheme.validate();
    if (img.channels != p.dim()) throw std::invalid_argument("halftone: channel count != polytope dimension");
    HalftoneResult r;
    r.out.width = img.width;
    r.out.height = img.height;
    r.out.ids.resize(static_cast<std::size_t>(img.width) * img.height);
    r.eps = Raster(img.width, img.height, p.dim());
    const int n = p.dim();
    Vec x(n);
    std::size_t k = 0;
    for (int i = 0; i < img.height; ++i)
        for (int j = 0; j < img.width; ++j, ++k) {
            double wsum = 0.0;
            for (int d = 0; d < n; ++d) x[d] = 0.0;
            for (const auto& t : scheme.taps) {
                int ni = i - t.row_offset;
                int nj = j + t.col_offset;
                if (ni < 0 || nj < 0 || nj >= img.width) continue;
                const double* e = r.eps.pixel(ni, nj);
                for (int d = 0; d < n; ++d) x[d] += t.weight * e[d];
                wsum += t.weight;
            }
            if (wsum > 0.0) {
                for (int d = 0; d < n; ++d) x[d] /= wsum;
            } else if (k > 0) {
                // nothing referenced is in the image: simple-diffusion fallback
                const double* e = r.eps.data.data() + (k - 1) * n;
                for (int d = 0; d < n; ++d) x[d] = e[d];
            }
            const double* g = img.pixel(i, j);
            for (int d = 0; d < n; ++d) x[d] += g[d];
            int vid = nearest_vertex(p, x.data());
            r.out.ids[k] = vid;
            const double* v = p.vptr(vid);
            for (int d = 0; d < n; ++d) r.eps.data[k * n + d] = x[d] - v[d];
        }
    return r;
}

Vec local_error(const Raster& img, const OutputRaster& out, const Polytope& p, int i0, int j0, int n) {
    if (i0 < 0 || j0 < 0 || i0 + n > img.height || j0 + n > img.width)
        throw std::invalid_argument("local_error: window out of bounds");
    Vec acc(p.dim(), 0.0);
    for (int i = i0; i < i0 + n; ++i)
        for (int j = j0; j < j0 + n; ++j) {
            const double* g = img.pixel(i, j);
            const double* v = p.vptr(out.at(i, j));
            for (int d = 0; d < p.dim(); ++d) acc[d] += g[d] - v[d];
        }
    return acc;
}

ScalingResult scaling_experiment(const Raster& img, const Polytope& p, const NeighborhoodScheme* scheme,
                                 const std::vector<int>& sizes, int anchor_stride) {
    if (sizes.size() < 2) throw std::invalid_argument("scaling_experiment: need at least 2 sizes");
    if (anchor_stride < 1) throw std::invalid_argument("scaling_experiment: stride must be >= 1");
    HalftoneResult ht = scheme ? halftone_general(img, p, *scheme) : halftone_simple(img, p);

    // per-channel prefix sums of gamma - vertex
    const int W = img.width, H = img.height, C = p.dim();
    std::vector<double> pre(static_cast<std::size_t>(W + 1) * (H + 1) * C, 0.0);
    auto P = [&](int i, int j, int c) -> double& {
        return pre[(static_cast<std::size_t>(i) * (W + 1) + j) * C + c];
    };
    for (int i = 0; i < H; ++i)
        for (int j = 0; j < W; ++j) {
            const double* g = img.pixel(i, j);
            const double* v = p.vptr(ht.out.at(i, j));
            for (int c = 0; c < C; ++c)
                P(i + 1, j + 1, c) = g[c] - v[c] + P(i, j + 1, c) + P(i + 1, j, c) - P(i, j, c);
        }

    ScalingResult res;
    res.sizes = sizes;
    for (int n : sizes) {
        if (n < 1 || n > W || n > H) throw std::invalid_argument("scaling_experiment: size does not fit image");
        double best = 0.0;
        long anchors = 0;
        for (int i = 0; i + n <= H; i += anchor_stride)
            for (int j = 0; j + n <= W; j += anchor_stride) {
                double s2 = 0.0;
                for (int c = 0; c < C; ++c) {
                    double e = P(i + n, j + n, c) - P(i, j + n, c) - P(i + n, j, c) + P(i, j, c);
                    s2 += e * e;
                }
                best = std::max(best, s2);
                ++anchors;
            }
        res.maxima.push_back(std::sqrt(best));
        res.anchor_counts.push_back(anchors);
    }

    for (double m : res.maxima)
        if (m <= 0.0) res.degenerate = true;
    if (!res.degenerate) {
        // least squares on (log n, log max), slope standard error from residuals
        const std::size_t k = sizes.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t t = 0; t < k; ++t) {
            double lx = std::log(static_cast<double>(sizes[t]));
            double ly = std::log(res.maxima[t]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        double n = static_cast<double>(k);
        double sxx_c = sxx - sx * sx / n;
        res.slope = (sxy - sx * sy / n) / sxx_c;
        double intercept = (sy - res.slope * sx) / n;
        double sse = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
            double lx = std::log(static_cast<double>(sizes[t]));
            double r = std::log(res.maxima[t]) - (intercept + res.slope * lx);
            sse += r * r;
        }
        res.sigma = k > 2 ? std::sqrt(sse / (n - 2.0) / sxx_c) : 0.0;
    }
    return res;
}

double max_error_norm(const Raster& eps) {
    double best = 0.0;
    const std::size_t pixels = static_cast<std::size_t>(eps.width) * eps.height;
    for (std::size_t k = 0; k < pixels; ++k)
        best = std::max(best, norm2(eps.data.data() + k * eps.channels, eps.channels));
    return std::sqrt(best);
}

std::vector<double> band_max_error(const Raster& eps, int bands) {
    if (bands < 1 || bands > eps.height) throw std::invalid_argument("band_max_error: bad band count");
    std::vector<double> out(bands, 0.0);
    for (int b = 0; b < bands; ++b) {
        int i0 = static_cast<int>(static_cast<long>(eps.height) * b / bands);
        int i1 = static_cast<int>(static_cast<long>(eps.height) * (b + 1) / bands);
        double best = 0.0;
        for (int i = i0; i < i1; ++i)
            for (int j = 0; j < eps.width; ++j)
                best = std::max(best, norm2(eps.pixel(i, j), eps.channels));
        out[b] = std::sqrt(best);
    }
    return out;
}

double mean_fidelity_gap(const Raster& img, const OutputRaster& out, const Polytope& p) {
    Vec acc(p.dim(), 0.0);
    const std::size_t pixels = static_cast<std::size_t>(img.width) * img.height;
    for (int i = 0; i < img.height; ++i)
        for (int j = 0; j < img.width; ++j) {
            const double* g = img.pixel(i, j);
            const double* v = p.vptr(out.at(i, j));
            for (int d = 0; d < p.dim(); ++d) acc[d] += g[d] - v[d];
        }
    for (double& c : acc) c /= static_cast<double>(pixels);
    return norm(acc);
}

}  // namespace convexdyn
