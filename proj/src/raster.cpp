#include "convexdyn/raster.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace convexdyn {

namespace {

/* next header token, skipping whitespace and '#' comments */
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw std::runtime_error("pnm: truncated header");
    return tok;
}

}  // namespace

ByteImage read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image: " + path);
    std::string magic = pnm_token(in);
    ByteImage img;
    if (magic == "P5") img.channels = 1;
    else if (magic == "P6") img.channels = 3;
    else throw std::runtime_error("pnm: unsupported magic '" + magic + "' (want P5 or P6)");
    img.width = std::stoi(pnm_token(in));
    img.height = std::stoi(pnm_token(in));
    int maxval = std::stoi(pnm_token(in));
    if (img.width <= 0 || img.height <= 0) throw std::runtime_error("pnm: bad dimensions");
    if (maxval != 255) throw std::runtime_error("pnm: maxval must be 255");
    // the maxval token is followed by exactly one whitespace byte, already
    // consumed by the tokenizer
    std::size_t count = static_cast<std::size_t>(img.width) * img.height * img.channels;
    img.data.resize(count);
    in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) throw std::runtime_error("pnm: truncated pixel data");
    return img;
}

void write_pnm(const std::string& path, const ByteImage& img) {
    if (img.channels != 1 && img.channels != 3)
        throw std::invalid_argument("pnm: only 1 or 3 channels are writable");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open image for writing: " + path);
    out << (img.channels == 1 ? "P5" : "P6") << "\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (!out) throw std::runtime_error("pnm: write failed: " + path);
}

Raster to_inputs(const ByteImage& img, const Polytope& p, bool tristimulus_map) {
    if (tristimulus_map) {
        if (img.channels != 3 || p.dim() != 3 || p.size() != 8)
            throw std::invalid_argument("tristimulus mapping needs a 3-channel image and the 8-vertex preset");
        Raster r(img.width, img.height, 3);
        for (int i = 0; i < img.height; ++i)
            for (int j = 0; j < img.width; ++j) {
                double u[3];
                for (int c = 0; c < 3; ++c) u[c] = img.at(i, j, c) / 255.0;
                for (int corner = 0; corner < 8; ++corner) {
                    double w = 1.0;
                    for (int c = 0; c < 3; ++c) w *= (corner >> c) & 1 ? u[c] : 1.0 - u[c];
                    // preset order is K,R,G,B,C,M,Y,W; corner bits (r,g,b) index it
                    static const int corner_to_vertex[8] = {0, 1, 2, 6, 3, 5, 4, 7};
                    const double* v = p.vptr(corner_to_vertex[corner]);
                    for (int c = 0; c < 3; ++c) r.at(i, j, c) += w * v[c];
                }
            }
        return r;
    }
    if (img.channels != p.dim())
        throw std::invalid_argument("image channel count does not match polytope dimension");
    Raster r(img.width, img.height, img.channels);
    for (std::size_t k = 0; k < img.data.size(); ++k) r.data[k] = img.data[k] / 255.0;
    return r;
}

ByteImage render_output(const OutputRaster& out, const Polytope& p) {
    if (p.dim() != 1 && p.dim() != 3)
        throw std::invalid_argument("render_output: only 1- or 3-channel polytopes render to pnm");
    Vec lo(p.dim(), 1e300), hi(p.dim(), -1e300);
    for (int i = 0; i < p.size(); ++i)
        for (int d = 0; d < p.dim(); ++d) {
            lo[d] = std::min(lo[d], p.vptr(i)[d]);
            hi[d] = std::max(hi[d], p.vptr(i)[d]);
        }
    ByteImage img;
    img.width = out.width;
    img.height = out.height;
    img.channels = p.dim();
    img.data.resize(static_cast<std::size_t>(out.width) * out.height * p.dim());
    std::size_t k = 0;
    for (int id : out.ids) {
        const double* v = p.vptr(id);
        for (int d = 0; d < p.dim(); ++d) {
            double span = hi[d] - lo[d];
            double s = span > 0.0 ? 255.0 * (v[d] - lo[d]) / span : 0.0;
            s = std::min(255.0, std::max(0.0, s));
            img.data[k++] = static_cast<unsigned char>(std::lround(s));
        }
    }
    return img;
}

}  // namespace convexdyn
