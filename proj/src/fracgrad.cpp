#include "ncseg/fracgrad.hpp"

#include "ncseg/error.hpp"

#include <algorithm>
#include <utility>

namespace ncseg {

namespace {

// Ring cells listed clockwise starting at the top-left corner, as (dx, dy).
constexpr std::array<std::pair<int, int>, 8> kInnerRing{{
    {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0},
}};

constexpr std::array<std::pair<int, int>, 16> kOuterRing{{
    {-2, -2}, {-1, -2}, {0, -2}, {1, -2}, {2, -2}, {2, -1}, {2, 0}, {2, 1},
    {2, 2},   {1, 2},   {0, 2},  {-1, 2}, {-2, 2}, {-2, 1}, {-2, 0}, {-2, -1},
}};

Kernel build_mask(double v, int steps45) {
    const double q = 0.5 * (v * v - v);
    // Base (x direction) ring values.
    std::array<double, 8> inner{-v, -v, -v, 0.0, -v, -v, -v, 0.0};
    std::array<double, 16> outer{};
    for (std::size_t i = 0; i < outer.size(); ++i) outer[i] = (i % 2 == 0) ? q : 0.0;

    std::vector<double> w(25, 0.0);
    auto set = [&w](int dx, int dy, double value) { w[static_cast<std::size_t>((dy + 2) * 5 + (dx + 2))] = value; };
    set(0, 0, 8.0);
    for (std::size_t i = 0; i < inner.size(); ++i) {
        const auto [dx, dy] = kInnerRing[(i + static_cast<std::size_t>(steps45)) % inner.size()];
        set(dx, dy, inner[i]);
    }
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const auto [dx, dy] = kOuterRing[(i + 2 * static_cast<std::size_t>(steps45)) % outer.size()];
        set(dx, dy, outer[i]);
    }
    return Kernel{2, std::move(w)};
}

}  // namespace

void FracParams::validate() const {
    if (!(order_v > 0.0 && order_v <= 1.0)) throw InvalidArgument("fracgrad: order v must lie in (0, 1]");
}

std::vector<double> gl_coefficients(double v, int count) {
    if (count < 1) throw InvalidArgument("gl_coefficients: count must be >= 1");
    std::vector<double> c(static_cast<std::size_t>(count));
    c[0] = 1.0;
    for (int k = 1; k < count; ++k) {
        c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k - 1)] * (k - 1 - v) / k;
    }
    return c;
}

std::array<Kernel, 4> frac_masks(double v) {
    FracParams{v}.validate();
    return {build_mask(v, 0), build_mask(v, 1), build_mask(v, 2), build_mask(v, 3)};
}

GrayImage frac_gradient(const GrayImage& img, const FracParams& p) {
    p.validate();
    if (!img.normalized()) throw InvalidArgument("frac_gradient: input must be normalized");
    const auto masks = frac_masks(p.order_v);

    GrayImage best = convolve(img, masks[0], Border::Replicate);
    for (std::size_t m = 1; m < masks.size(); ++m) {
        const GrayImage r = convolve(img, masks[m], Border::Replicate);
        for (std::size_t i = 0; i < best.size(); ++i) best.pixels()[i] = std::max(best.pixels()[i], r.pixels()[i]);
    }
    for (std::size_t i = 0; i < best.size(); ++i) best.pixels()[i] += img.pixels()[i];
    return rescale_unit(best);
}

}  // namespace ncseg
