#include "ncseg/overlay.hpp"

#include "ncseg/error.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

namespace ncseg {

namespace {

constexpr std::array<std::array<std::uint8_t, 3>, 6> kPalette{{
    {255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {255, 255, 0}, {255, 0, 255}, {0, 255, 255},
}};

}  // namespace

std::array<std::uint8_t, 3> RgbImage::at(int x, int y) const {
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

std::vector<std::uint8_t> boundary_mask(const LabelMap& labels) {
    std::vector<std::uint8_t> mask(labels.labels.size(), 0);
    for (int y = 0; y < labels.height; ++y) {
        for (int x = 0; x < labels.width; ++x) {
            const int l = labels(x, y);
            const bool right = x + 1 < labels.width && labels(x + 1, y) != l;
            const bool down = y + 1 < labels.height && labels(x, y + 1) != l;
            if (right || down) mask[static_cast<std::size_t>(y) * labels.width + x] = 1;
        }
    }
    return mask;
}

std::array<std::uint8_t, 3> label_color(int label) {
    const int k = ((label % 6) + 6) % 6;
    return kPalette[static_cast<std::size_t>(k)];
}

RgbImage overlay(const GrayImage& img, const LabelMap& labels) {
    if (img.width() != labels.width || img.height() != labels.height) {
        throw InvalidArgument("overlay: image and label map differ in size");
    }
    RgbImage out{img.width(), img.height(), std::vector<std::uint8_t>(3 * img.size())};
    const auto mask = boundary_mask(labels);
    for (std::size_t i = 0; i < img.size(); ++i) {
        std::array<std::uint8_t, 3> c;
        if (mask[i]) {
            c = label_color(labels.labels[i]);
        } else {
            const auto g = static_cast<std::uint8_t>(quantize(img.pixels()[i], img.range()));
            c = {g, g, g};
        }
        for (std::size_t k = 0; k < 3; ++k) out.rgb[3 * i + k] = c[k];
    }
    return out;
}

void write_png(const std::filesystem::path& path, const RgbImage& img) {
    std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!file) throw WriteError("cannot open " + path.string() + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, nullptr);
        throw WriteError("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw WriteError("failed writing " + path.string());
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y) {
        auto* row = const_cast<png_bytep>(img.rgb.data() + 3 * static_cast<std::size_t>(y) * img.width);
        png_write_row(png, row);
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace ncseg
