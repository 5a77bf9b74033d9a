#pragma once

#include "ncseg/image.hpp"

#include <array>
#include <vector>

namespace ncseg {

struct FracParams {
    double order_v = 0.5;  ///< fractional order, 0 < v <= 1

    void validate() const;
};

/// Grünwald–Letnikov weights c_0..c_{count-1} of the order-v difference:
/// c_0 = 1, c_k = c_{k-1} * (k - 1 - v) / k.
std::vector<double> gl_coefficients(double v, int count);

enum class MaskDirection { X = 0, RightDiagonal = 1, Y = 2, LeftDiagonal = 3 };

/// The four 5x5 fractional differential masks, indexed by MaskDirection.
///
/// The x mask has 8 at the center, -v on the inner ring except the two
/// horizontal neighbours, and (v^2 - v)/2 on every second cell of the outer
/// ring starting at the corners:
///
///     q  0  q  0  q
///     0 -v -v -v  0
///     q  0  8  0  q        q = (v^2 - v)/2
///     0 -v -v -v  0
///     q  0  q  0  q
///
/// The other three are obtained by rotating both rings in 45 degree steps
/// (one cell on the inner ring, two cells on the outer ring). The y mask is
/// the transpose of the x mask, and the left diagonal mask is the horizontal
/// mirror of the right diagonal one.
std::array<Kernel, 4> frac_masks(double v);

/// Max of the four directional responses (replicate border), plus the source
/// pixel, rescaled to [0,1]. Input must be normalized.
GrayImage frac_gradient(const GrayImage& img, const FracParams& p);

}  // namespace ncseg
