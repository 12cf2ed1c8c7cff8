#pragma once

#include <string>
#include <vector>

#include "convexdyn/polytope.hpp"

namespace convexdyn {

/* Raw 8-bit image, 1 channel (PGM P5) or 3 channels (PPM P6), maxval 255. */
struct ByteImage {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<unsigned char> data;  // row-major, interleaved channels

    unsigned char& at(int i, int j, int c) {
        return data[(static_cast<std::size_t>(i) * width + j) * channels + c];
    }
    unsigned char at(int i, int j, int c) const {
        return data[(static_cast<std::size_t>(i) * width + j) * channels + c];
    }
};

/* Real-valued sample grid living in the ambient space of the active polytope. */
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<double> data;

    Raster() = default;
    Raster(int w, int h, int c) : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, 0.0) {}
    double& at(int i, int j, int c) {
        return data[(static_cast<std::size_t>(i) * width + j) * channels + c];
    }
    double at(int i, int j, int c) const {
        return data[(static_cast<std::size_t>(i) * width + j) * channels + c];
    }
    const double* pixel(int i, int j) const {
        return data.data() + (static_cast<std::size_t>(i) * width + j) * channels;
    }
};

/* Per-pixel vertex ids chosen by a halftoning pass. */
struct OutputRaster {
    int width = 0;
    int height = 0;
    std::vector<int> ids;

    int at(int i, int j) const { return ids[static_cast<std::size_t>(i) * width + j]; }
};

/* Binary PGM (P5) / PPM (P6), maxval 255 enforced. */
ByteImage read_pnm(const std::string& path);
void write_pnm(const std::string& path, const ByteImage& img);

/*
 * 8-bit to polytope inputs. Unit-range polytopes take value/255 per channel.
 * The tristimulus preset instead maps channel weights u = value/255 through
 * the trilinear interpolation of its 8 corner vertices (corner bit c is
 * channel c: 100 = R, 010 = G, 001 = B, 111 = W, ...).
 */
Raster to_inputs(const ByteImage& img, const Polytope& p, bool tristimulus_map);

/* Render vertex ids to 8 bits: each channel of the vertex coordinates is
   rescaled by the polytope's per-channel bounding box onto 0..255. */
ByteImage render_output(const OutputRaster& out, const Polytope& p);

}  // namespace convexdyn
