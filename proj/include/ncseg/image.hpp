#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace ncseg {

/// Declared intensity domain of a GrayImage.
enum class ValueRange {
    Raw,         ///< 8-bit style gray levels, nominally [0,255]
    Normalized,  ///< every sample in [0,1]
};

/// Row-major real-valued grayscale image. Origin top-left, x to the right,
/// y downward. Samples are always finite; normalized images stay in [0,1].
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, ValueRange range = ValueRange::Raw, double fill = 0.0);
    GrayImage(int width, int height, std::vector<double> data, ValueRange range = ValueRange::Raw);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    ValueRange range() const noexcept { return range_; }
    bool normalized() const noexcept { return range_ == ValueRange::Normalized; }

    double operator()(int x, int y) const { return data_[index(x, y)]; }
    double& operator()(int x, int y) { return data_[index(x, y)]; }

    /// Sample with nearest-edge extension outside the image.
    double clamped(int x, int y) const;

    std::span<const double> pixels() const noexcept { return data_; }
    std::span<double> pixels() noexcept { return data_; }

    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    /// Throws InvalidArgument if any invariant is broken.
    void validate() const;

    /// Copy with a different declared range (validated).
    GrayImage with_range(ValueRange range) const;

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
    ValueRange range_ = ValueRange::Raw;
};

struct Histogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

/// Odd square correlation kernel; weights are row-major with the row index
/// running over the y offset.
struct Kernel {
    int radius = 0;
    std::vector<double> weights;

    int side() const noexcept { return 2 * radius + 1; }
    double at(int dx, int dy) const {
        return weights[static_cast<std::size_t>((dy + radius) * side() + (dx + radius))];
    }
    double sum() const;

    static Kernel from_rows(int radius, std::vector<double> weights);
    static Kernel identity();
};

enum class Border {
    Replicate,  ///< nearest-edge extension
    Reflect,    ///< mirror about the edge pixel (…2 1 | 0 1 2…)
};

/// Per-pixel region assignment. Label 0 marks dams / unassigned pixels.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<int> labels;

    LabelMap() = default;
    LabelMap(int w, int h, int fill = 0);

    int operator()(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
    int& operator()(int x, int y) { return labels[static_cast<std::size_t>(y) * width + x]; }

    int max_label() const;
    /// True if labels are non-negative and the positive ones are exactly 1..K.
    bool contiguous() const;

    friend bool operator==(const LabelMap&, const LabelMap&) = default;
};

/// Renumbers positive labels to 1..K in raster order of first appearance.
LabelMap relabel_dense(const LabelMap& map);

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// Quantizes one sample to a byte: normalized samples are scaled by 255,
/// then rounded half up and clamped.
std::uint8_t quantize(double sample, ValueRange range);

GrayImage normalize(const GrayImage& img);
Histogram histogram(const GrayImage& img);

GrayImage convolve(const GrayImage& img, const Kernel& k, Border border = Border::Replicate);
Kernel gaussian_kernel(double sigma);

/// Affine map of the sample range onto [0,1]. A (numerically) constant image
/// maps to the constant 0.5.
GrayImage rescale_unit(const GrayImage& img);

GrayImage crop(const GrayImage& img, int x, int y, int w, int h);

LabelMap load_labels(const std::filesystem::path& path);
void save_labels(const LabelMap& labels, const std::filesystem::path& path);

}  // namespace ncseg
