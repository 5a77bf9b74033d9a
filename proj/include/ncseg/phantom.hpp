#pragma once

#include "ncseg/image.hpp"

#include <cstdint>
#include <utility>

namespace ncseg {

/// Synthetic speckled stand-in for a cropped thyroid ultrasound frame: a
/// bright background, a dark elliptical nodule and a darker disk (trachea).
struct PhantomSpec {
    int size = 128;
    double background = 0.55;
    struct {
        double cx = 76.0, cy = 68.0;
        double ax = 22.0, ay = 14.0;  ///< semi-axes along x and y
        double level = 0.25;
    } nodule;
    struct {
        double cx = 32.0, cy = 36.0;
        double radius = 12.0;
        double level = 0.15;
    } trachea;
    double speckle_sigma = 0.15;
    std::uint64_t seed = 1;

    void validate() const;
};

inline constexpr int kBackgroundLabel = 1;
inline constexpr int kNoduleLabel = 2;
inline constexpr int kTracheaLabel = 3;

/// Renders the piecewise-constant scene (a pixel belongs to a shape when its
/// center is inside), then applies multiplicative speckle
/// I = I0 * (1 + speckle_sigma * g) with g drawn per pixel in raster order
/// from SplitMix64(seed) through Box–Muller, and clamps to [0,1].
/// The trachea is drawn over the nodule where they overlap.
/// Returns the normalized image and the ground-truth labels
/// (1 background, 2 nodule, 3 trachea).
std::pair<GrayImage, LabelMap> generate_phantom(const PhantomSpec& spec);

}  // namespace ncseg
