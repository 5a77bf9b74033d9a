#pragma once

#include "ncseg/image.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ncseg {

struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> edge;

    bool operator()(int x, int y) const { return edge[static_cast<std::size_t>(y) * width + x] != 0; }
    std::size_t count() const;
};

enum class EdgeOperator { Sobel, Prewitt, Laplacian, LoG, Canny };

/// Parses "sobel", "prewitt", "laplacian", "log" or "canny".
EdgeOperator parse_edge_operator(std::string_view name);

struct EdgeParams {
    /// sobel/prewitt: magnitude threshold as a fraction of the maximum.
    double gradient_fraction = 0.25;
    /// laplacian/log: a zero crossing counts when the jump across it is at
    /// least this fraction of the largest |response|.
    double zero_crossing_fraction = 0.1;
    double log_sigma = 2.0;
    double canny_sigma = 1.4;
    /// Canny high threshold as a fraction of the largest gradient magnitude.
    double canny_high = 0.25;
    /// Canny low threshold as a fraction of the high one.
    double canny_low_ratio = 0.4;
};

EdgeMap edge_detect(const GrayImage& img, EdgeOperator op, const EdgeParams& params = {});

struct OtsuResult {
    int threshold = 0;
    bool degenerate = false;  ///< constant image: threshold = its value, no foreground
    EdgeMap mask;             ///< intensity > threshold

    /// 1 where intensity <= threshold, 2 above.
    LabelMap labels() const;
};

/// Between-class-variance maximizing threshold over the 256-bin histogram of
/// a raw image, evaluated in exact integer arithmetic. Ties go to the
/// smaller threshold.
OtsuResult otsu_threshold(const GrayImage& img);

/// Quadtree split while a block's standard deviation exceeds max_std and its
/// shorter side exceeds min_block, then repeated merging of 4-adjacent
/// regions whose union keeps std <= max_std, smallest region first.
LabelMap split_merge(const GrayImage& img, double max_std = 0.08, int min_block = 4);

/// Flooding watershed over 256 quantized levels. Regional minima (4-connected
/// plateaus with no lower neighbour) seed the basins; at each level, pixels
/// reached from exactly one basin join it and pixels reached from two or more
/// become dams (label 0).
LabelMap watershed(const GrayImage& img);

/// Sobel gradient magnitude, scaled so the result is a raw-range image with
/// maximum 255 (all zeros for a constant image).
GrayImage sobel_magnitude(const GrayImage& img);

/// Gray level used by the watershed: round(v) for raw images,
/// round(255 v) for normalized ones, clamped to 0..255.
std::vector<int> quantize_levels(const GrayImage& img);

}  // namespace ncseg
