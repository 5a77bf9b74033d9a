#pragma once

#include "ncseg/image.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace ncseg {

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  ///< interleaved, row-major

    std::array<std::uint8_t, 3> at(int x, int y) const;
};

/// 1 where the right or lower 4-neighbour carries a different label.
std::vector<std::uint8_t> boundary_mask(const LabelMap& labels);

/// Color of a boundary pixel of region `label`; cycles through six colors.
std::array<std::uint8_t, 3> label_color(int label);

/// Grayscale base with boundary pixels painted in their region's color.
RgbImage overlay(const GrayImage& img, const LabelMap& labels);

void write_png(const std::filesystem::path& path, const RgbImage& img);

}  // namespace ncseg
