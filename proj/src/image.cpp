#include "akhs/image.hpp"

#include "akhs/errors.hpp"
#include "akhs/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

namespace akhs {

namespace {

int read_pgm_token(std::istream& in, const std::string& path) {
    // Skips whitespace and '#' comments between header tokens.
    for (;;) {
        int c = in.peek();
        if (c == EOF) throw ValidationError(path + ": truncated PGM header");
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        break;
    }
    int value = 0;
    in >> value;
    if (!in) throw ValidationError(path + ": malformed PGM header");
    return value;
}

Eigen::MatrixXd toeplitz_kappa(const AveragedKernelPair& pair, int n) {
    Eigen::MatrixXd k(n, n);
    std::vector<double> row(n);
    for (int d = 0; d < n; ++d) row[d] = pair.kappa((double)d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = row[std::abs(i - j)];
    return k;
}

} // namespace

ImageGrid read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open image: " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5') throw ValidationError(path + ": not a binary PGM (P5)");
    int width = read_pgm_token(in, path);
    int height = read_pgm_token(in, path);
    int maxval = read_pgm_token(in, path);
    if (width <= 0 || height <= 0) throw ValidationError(path + ": bad dimensions");
    if (maxval != 255)
        throw ValidationError(path + ": only 8-bit PGM (maxval 255) is supported");
    in.get(); // single whitespace after maxval
    ImageGrid img;
    img.width = width;
    img.height = height;
    img.values.resize((size_t)width * height);
    std::vector<unsigned char> raw((size_t)width * height);
    in.read(reinterpret_cast<char*>(raw.data()), (std::streamsize)raw.size());
    if (in.gcount() != (std::streamsize)raw.size())
        throw ValidationError(path + ": truncated pixel data");
    for (size_t i = 0; i < raw.size(); ++i) img.values[i] = raw[i] / 255.0;
    return img;
}

void write_pgm(const ImageGrid& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output image: " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> raw((size_t)img.width * img.height);
    for (size_t i = 0; i < raw.size(); ++i) {
        double v = std::clamp(img.values[i], 0.0, 1.0);
        raw[i] = (unsigned char)std::lround(v * 255.0);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), (std::streamsize)raw.size());
}

ImageGrid image_bin(const ImageGrid& img, int factor) {
    if (factor < 1) throw ValidationError("image_bin: factor must be >= 1");
    if (img.width % factor != 0 || img.height % factor != 0)
        throw ValidationError("image_bin: factor must divide both dimensions");
    ImageGrid out;
    out.width = img.width / factor;
    out.height = img.height / factor;
    out.cell_size = img.cell_size * factor;
    out.values.resize((size_t)out.width * out.height);
    const double inv = 1.0 / ((double)factor * factor);
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c) {
            double sum = 0.0;
            for (int i = 0; i < factor; ++i)
                for (int j = 0; j < factor; ++j)
                    sum += img.at(r * factor + i, c * factor + j);
            out.at(r, c) = sum * inv;
        }
    return out;
}

ImageGrid image_upscale(const ImageGrid& img, int out_width, int out_height,
                        const std::string& kernel_name, double shape,
                        UpscaleMode mode) {
    if (img.width < 1 || img.height < 1) throw ValidationError("image_upscale: empty image");
    if (out_width < 1 || out_height < 1)
        throw ValidationError("image_upscale: bad target dimensions");

    // Input-cell units: cell j covers [j, j+1], so the averaging width is 1.
    AveragedKernelPair pair_x = pair_by_name(kernel_name, shape, 1.0);
    AveragedKernelPair pair_y = pair_by_name(kernel_name, shape, 1.0);

    HistoMatrix kx(toeplitz_kappa(pair_x, img.width), Assembly::ClosedForm);
    HistoMatrix ky(toeplitz_kappa(pair_y, img.height), Assembly::ClosedForm);

    Eigen::MatrixXd lambda(img.height, img.width);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) lambda(r, c) = img.at(r, c);

    Eigen::MatrixXd coeff = kronecker_solve(kx, ky, lambda);

    const double wx = (double)img.width / out_width;
    const double wy = (double)img.height / out_height;
    Eigen::MatrixXd ax(out_width, img.width), ay(out_height, img.height);
    for (int jo = 0; jo < out_width; ++jo) {
        double x = (jo + 0.5) * wx;
        for (int ji = 0; ji < img.width; ++ji) {
            double delta = x - (ji + 0.5);
            ax(jo, ji) = mode == UpscaleMode::Pointwise ? pair_x.alpha(delta)
                                                        : pair_x.mean_alpha(delta, wx);
        }
    }
    for (int io = 0; io < out_height; ++io) {
        double y = (io + 0.5) * wy;
        for (int ii = 0; ii < img.height; ++ii) {
            double delta = y - (ii + 0.5);
            ay(io, ii) = mode == UpscaleMode::Pointwise ? pair_y.alpha(delta)
                                                        : pair_y.mean_alpha(delta, wy);
        }
    }
    Eigen::MatrixXd out_vals = ay * coeff * ax.transpose();

    ImageGrid out;
    out.width = out_width;
    out.height = out_height;
    out.cell_size = img.cell_size * wx;
    out.values.resize((size_t)out_width * out_height);
    for (int r = 0; r < out_height; ++r)
        for (int c = 0; c < out_width; ++c)
            out.at(r, c) = std::clamp(out_vals(r, c), 0.0, 1.0);
    return out;
}

ImageGrid nearest_neighbor_upscale(const ImageGrid& img, int out_width, int out_height) {
    ImageGrid out;
    out.width = out_width;
    out.height = out_height;
    out.cell_size = img.cell_size * img.width / out_width;
    out.values.resize((size_t)out_width * out_height);
    for (int r = 0; r < out_height; ++r)
        for (int c = 0; c < out_width; ++c) {
            int ri = std::min((int)((r + 0.5) * img.height / out_height), img.height - 1);
            int ci = std::min((int)((c + 0.5) * img.width / out_width), img.width - 1);
            out.at(r, c) = img.at(ri, ci);
        }
    return out;
}

double rmse(const ImageGrid& a, const ImageGrid& b) {
    if (a.width != b.width || a.height != b.height)
        throw ValidationError("rmse: image dimensions differ");
    double sum = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    return std::sqrt(sum / (double)a.values.size());
}

ImageGrid synthetic_test_image(int size) {
    if (size < 1) throw ValidationError("synthetic_test_image: bad size");
    ImageGrid img;
    img.width = size;
    img.height = size;
    img.values.resize((size_t)size * size);
    auto bump = [](double d2, double s) { return std::exp(-d2 / (2.0 * s * s)); };
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            double x = (c + 0.5) / size;
            double y = (r + 0.5) / size;
            double v = 0.15 + 0.25 * x + 0.10 * y;
            double dx = x - 0.42, dy = y - 0.45;
            double d2 = dx * dx + dy * dy;
            v += 0.45 * bump(d2, 0.16);
            // Off-center dark "craters" and a bright rim.
            v -= 0.28 * bump((x - 0.30) * (x - 0.30) + (y - 0.38) * (y - 0.38), 0.045);
            v -= 0.22 * bump((x - 0.55) * (x - 0.55) + (y - 0.60) * (y - 0.60), 0.060);
            v += 0.20 * bump((x - 0.68) * (x - 0.68) + (y - 0.25) * (y - 0.25), 0.050);
            double ring = std::sqrt(d2) - 0.33;
            v += 0.12 * std::exp(-ring * ring / (2.0 * 0.02 * 0.02));
            img.at(r, c) = std::clamp(v, 0.0, 1.0);
        }
    return img;
}

} // namespace akhs
