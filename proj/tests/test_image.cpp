#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "akhs/errors.hpp"
#include "akhs/image.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace akhs;

namespace {
ImageGrid constant_image(int w, int h, double v) {
    ImageGrid img;
    img.width = w;
    img.height = h;
    img.values.assign((size_t)w * h, v);
    return img;
}
} // namespace

TEST_CASE("binning a constant image keeps the constant") {
    ImageGrid out = image_bin(constant_image(8, 8, 0.4), 4);
    CHECK(out.width == 2);
    CHECK(out.height == 2);
    for (double v : out.values) CHECK(v == doctest::Approx(0.4));
    CHECK(out.cell_size == doctest::Approx(4.0));
}

TEST_CASE("checkerboard bins to its mean") {
    ImageGrid img = constant_image(2, 2, 0.0);
    img.at(0, 1) = 1.0;
    img.at(1, 0) = 1.0;
    ImageGrid out = image_bin(img, 2);
    REQUIRE(out.values.size() == 1);
    CHECK(out.values[0] == doctest::Approx(0.5));
}

TEST_CASE("block means are associative") {
    ImageGrid img = synthetic_test_image(64);
    ImageGrid twice = image_bin(image_bin(img, 2), 2);
    ImageGrid once = image_bin(img, 4);
    double worst = 0.0;
    for (size_t i = 0; i < once.values.size(); ++i)
        worst = std::max(worst, std::abs(once.values[i] - twice.values[i]));
    CHECK(worst <= 1e-12);
}

TEST_CASE("non-divisible bin factors are rejected") {
    CHECK_THROWS_AS(image_bin(constant_image(10, 10, 0.1), 3), ValidationError);
    CHECK_THROWS_AS(image_bin(constant_image(10, 10, 0.1), 0), ValidationError);
}

TEST_CASE("cell-average upscaling at identical dims reproduces the input") {
    ImageGrid img = image_bin(synthetic_test_image(64), 4);
    ImageGrid same = image_upscale(img, 16, 16, "matern", 1.0, UpscaleMode::CellAverage);
    double worst = 0.0;
    for (size_t i = 0; i < img.values.size(); ++i)
        worst = std::max(worst, std::abs(img.values[i] - same.values[i]));
    CHECK(worst <= 1e-8);
}

TEST_CASE("constant image upscales to a constant away from the boundary") {
    // Kernel expansions do not reproduce constants exactly near the image
    // boundary; the interior must stay flat.
    ImageGrid img = constant_image(8, 8, 0.5);
    ImageGrid up = image_upscale(img, 16, 16, "matern", 1.0, UpscaleMode::Pointwise);
    double interior = 0.0, global = 0.0;
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            double dev = std::abs(up.at(r, c) - 0.5);
            global = std::max(global, dev);
            if (r >= 4 && r < 12 && c >= 4 && c < 12) interior = std::max(interior, dev);
        }
    CHECK(interior <= 1e-2); // measured ~5e-3
    CHECK(global <= 0.1);

    ImageGrid same = image_upscale(img, 8, 8, "matern", 1.0, UpscaleMode::CellAverage);
    for (double v : same.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("non-square images upscale with the right geometry") {
    ImageGrid img;
    img.width = 12;
    img.height = 8;
    img.values.resize(96);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 12; ++c)
            img.at(r, c) = 0.5 + 0.4 * std::sin(0.7 * r) * std::cos(0.5 * c);
    ImageGrid up = image_upscale(img, 30, 20, "matern", 1.0, UpscaleMode::Pointwise);
    CHECK(up.width == 30);
    CHECK(up.height == 20);
    ImageGrid same = image_upscale(img, 12, 8, "matern", 1.0, UpscaleMode::CellAverage);
    double worst = 0.0;
    for (size_t i = 0; i < img.values.size(); ++i)
        worst = std::max(worst, std::abs(img.values[i] - same.values[i]));
    CHECK(worst <= 1e-10);
}

TEST_CASE("histopolation upscaling beats nearest-neighbor on the test pattern") {
    ImageGrid img = synthetic_test_image(256);
    ImageGrid binned = image_bin(img, 8);
    ImageGrid up = image_upscale(binned, 256, 256, "matern", 1.0, UpscaleMode::Pointwise);
    ImageGrid nn = nearest_neighbor_upscale(binned, 256, 256);
    CHECK(rmse(up, img) < rmse(nn, img));
}

TEST_CASE("pgm round trip with quantization") {
    ImageGrid img = synthetic_test_image(32);
    std::filesystem::path tmp = std::filesystem::temp_directory_path() / "akhs_test.pgm";
    write_pgm(img, tmp.string());
    ImageGrid back = read_pgm(tmp.string());
    REQUIRE(back.width == 32);
    REQUIRE(back.height == 32);
    double worst = 0.0;
    for (size_t i = 0; i < img.values.size(); ++i)
        worst = std::max(worst, std::abs(img.values[i] - back.values[i]));
    CHECK(worst <= 0.5 / 255.0 + 1e-12);
    std::filesystem::remove(tmp);
}

TEST_CASE("non-P5 and 16-bit images are rejected") {
    namespace fs = std::filesystem;
    fs::path ascii = fs::temp_directory_path() / "akhs_ascii.pgm";
    {
        std::FILE* f = std::fopen(ascii.string().c_str(), "wb");
        std::fputs("P2\n2 2\n255\n0 1 2 3\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(read_pgm(ascii.string()), ValidationError);
    fs::remove(ascii);

    fs::path deep = fs::temp_directory_path() / "akhs_deep.pgm";
    {
        std::FILE* f = std::fopen(deep.string().c_str(), "wb");
        std::fputs("P5\n2 2\n65535\n", f);
        const unsigned char bytes[8] = {0, 0, 0, 1, 0, 2, 0, 3};
        std::fwrite(bytes, 1, 8, f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(read_pgm(deep.string()), ValidationError);
    fs::remove(deep);

    CHECK_THROWS_AS(read_pgm("/nonexistent/image.pgm"), ValidationError);
}

TEST_CASE("upscale argument validation") {
    ImageGrid img = constant_image(4, 4, 0.2);
    CHECK_THROWS_AS(image_upscale(img, 0, 8, "matern", 1.0), ValidationError);
    CHECK_THROWS_AS(image_upscale(img, 8, 8, "nope", 1.0), ValidationError);
}
