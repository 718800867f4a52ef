#pragma once

#include "akhs/kernels.hpp"

#include <string>
#include <vector>

namespace akhs {

// Grayscale image as a grid of cell averages: pixel (row, col) holds the
// mean of the underlying function over its square cell. Values live in
// [0,1] on I/O; intermediate values are not clamped.
struct ImageGrid {
    int width = 0;
    int height = 0;
    std::vector<double> values; // row-major
    double cell_size = 1.0;

    double& at(int row, int col) { return values[(size_t)row * width + col]; }
    double at(int row, int col) const { return values[(size_t)row * width + col]; }
};

// Binary 8-bit PGM (P5).
ImageGrid read_pgm(const std::string& path);
void write_pgm(const ImageGrid& img, const std::string& path);

// Pixel binning: replace each b x b block by its mean. b must divide both
// dimensions.
ImageGrid image_bin(const ImageGrid& img, int factor);

enum class UpscaleMode { Pointwise, CellAverage };

// Histopolation upscaling with a tensor product of univariate averaged
// kernels, one per axis, in input-cell units (each input pixel is the
// average over a unit cell). Pointwise mode evaluates the histopolant at
// the target cell centers; cell-average mode produces exact means over the
// target cells. Output is clamped to [0,1].
ImageGrid image_upscale(const ImageGrid& img, int out_width, int out_height,
                        const std::string& kernel_name, double shape,
                        UpscaleMode mode = UpscaleMode::Pointwise);

// Block-replication baseline for comparisons.
ImageGrid nearest_neighbor_upscale(const ImageGrid& img, int out_width, int out_height);

double rmse(const ImageGrid& a, const ImageGrid& b);

// Deterministic smooth test pattern (disk with shading, rings, ramp).
ImageGrid synthetic_test_image(int size);

} // namespace akhs
