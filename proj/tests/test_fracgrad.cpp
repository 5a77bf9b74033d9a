#include "ncseg/error.hpp"
#include "ncseg/fracgrad.hpp"
#include "ncseg/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ncseg;

namespace {

// The x mask written out cell by cell.
Kernel literal_x_mask(double v) {
    const double q = (v * v - v) / 2.0;
    return Kernel::from_rows(2, {
                                    q, 0, q, 0, q,    //
                                    0, -v, -v, -v, 0, //
                                    q, 0, 8, 0, q,    //
                                    0, -v, -v, -v, 0, //
                                    q, 0, q, 0, q,    //
                                });
}

Kernel transpose(const Kernel& k) {
    Kernel t = k;
    for (int dy = -k.radius; dy <= k.radius; ++dy) {
        for (int dx = -k.radius; dx <= k.radius; ++dx) {
            t.weights[static_cast<std::size_t>((dy + k.radius) * k.side() + dx + k.radius)] = k.at(dy, dx);
        }
    }
    return t;
}

Kernel mirror_x(const Kernel& k) {
    Kernel m = k;
    for (int dy = -k.radius; dy <= k.radius; ++dy) {
        for (int dx = -k.radius; dx <= k.radius; ++dx) {
            m.weights[static_cast<std::size_t>((dy + k.radius) * k.side() + dx + k.radius)] = k.at(-dx, dy);
        }
    }
    return m;
}

}  // namespace

TEST(GlCoefficients, IntegerOrders) {
    EXPECT_EQ(gl_coefficients(1.0, 6), (std::vector<double>{1, -1, 0, 0, 0, 0}));
    EXPECT_EQ(gl_coefficients(0.0, 6), (std::vector<double>{1, 0, 0, 0, 0, 0}));
}

TEST(GlCoefficients, HalfOrderThirdTerm) { EXPECT_DOUBLE_EQ(gl_coefficients(0.5, 3)[2], -0.125); }

TEST(GlCoefficients, MatchGammaFormula) {
    for (double v : {0.1, 0.3, 0.5, 0.9}) {
        const auto c = gl_coefficients(v, 11);
        for (int k = 0; k <= 10; ++k) EXPECT_NEAR(c[static_cast<std::size_t>(k)], oracle::gl_gamma(v, k), 1e-12);
    }
}

TEST(FracMasks, XMaskLayout) {
    for (double v : {0.1, 0.5, 0.9}) {
        const Kernel x = frac_masks(v)[static_cast<std::size_t>(MaskDirection::X)];
        EXPECT_EQ(x.weights, literal_x_mask(v).weights);
    }
}

TEST(FracMasks, UnitOrderClearsOuterRing) {
    const Kernel x = frac_masks(1.0)[0];
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
            if (std::max(std::abs(dx), std::abs(dy)) == 2) EXPECT_EQ(x.at(dx, dy), 0.0);
        }
    }
}

TEST(FracMasks, SumCountsEveryCell) {
    // One 8, six -v and eight (v^2-v)/2 cells, identical for every direction.
    for (double v : {0.1, 0.5, 0.9}) {
        const double q = (v * v - v) / 2.0;
        for (const Kernel& k : frac_masks(v)) EXPECT_NEAR(k.sum(), 8.0 - 6.0 * v + 8.0 * q, 1e-14);
    }
}

TEST(FracMasks, OrientationPairs) {
    const auto m = frac_masks(0.3);
    EXPECT_EQ(m[static_cast<std::size_t>(MaskDirection::Y)].weights, transpose(m[0]).weights);
    EXPECT_EQ(m[static_cast<std::size_t>(MaskDirection::LeftDiagonal)].weights,
              mirror_x(m[static_cast<std::size_t>(MaskDirection::RightDiagonal)]).weights);
    // Rotating the inner ring one cell clockwise moves the zero pair from the
    // horizontal neighbours onto the main diagonal.
    const Kernel& rd = m[static_cast<std::size_t>(MaskDirection::RightDiagonal)];
    EXPECT_EQ(rd.at(-1, -1), 0.0);
    EXPECT_EQ(rd.at(1, 1), 0.0);
    EXPECT_EQ(rd.at(1, -1), -0.3);
    EXPECT_EQ(rd.at(1, 0), -0.3);
}

TEST(FracGradient, ConstantImageCollapses) {
    const GrayImage out = frac_gradient(GrayImage(12, 12, ValueRange::Normalized, 0.4), FracParams{});
    for (double v : out.pixels()) {
        EXPECT_EQ(v, 0.5);
    }
}

TEST(FracGradient, RotationCovariant) {
    SplitMix64 rng(12);
    GrayImage img(32, 32, ValueRange::Normalized);
    for (double& v : img.pixels()) v = static_cast<double>(rng.next() % 257) / 256.0;
    const FracParams p;
    const GrayImage a = oracle::rotate90(frac_gradient(img, p));
    const GrayImage b = frac_gradient(oracle::rotate90(img), p);
    for (int y = 2; y < 30; ++y) {
        for (int x = 2; x < 30; ++x) EXPECT_EQ(a(x, y), b(x, y)) << x << "," << y;
    }
}

TEST(FracGradient, StepEdgeRidge) {
    GrayImage img(16, 12, ValueRange::Normalized);
    for (int y = 0; y < 12; ++y) {
        for (int x = 8; x < 16; ++x) img(x, y) = 1.0;
    }
    const GrayImage out = frac_gradient(img, FracParams{});
    for (int y = 2; y < 10; ++y) {
        double best = -1.0;
        int best_x = -1;
        for (int x = 0; x < 16; ++x) {
            if (out(x, y) > best) {
                best = out(x, y);
                best_x = x;
            }
        }
        EXPECT_TRUE(best_x == 7 || best_x == 8) << best_x;
        EXPECT_GT(best, out(12, y));
        EXPECT_GT(best, out(3, y));
    }
}

TEST(FracGradient, ValidatesOrderAndRange) {
    FracParams p;
    p.order_v = 1.5;
    EXPECT_THROW(p.validate(), InvalidArgument);
    EXPECT_THROW(frac_gradient(GrayImage(8, 8), FracParams{}), InvalidArgument);
}
