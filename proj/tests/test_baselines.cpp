#include "ncseg/baselines.hpp"
#include "ncseg/error.hpp"
#include "ncseg/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace ncseg;

namespace {

GrayImage vertical_step(int w, int h, int edge_x, double lo, double hi, ValueRange r = ValueRange::Normalized) {
    GrayImage img(w, h, r);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img(x, y) = x < edge_x ? lo : hi;
    }
    return img;
}

std::set<int> distinct(const LabelMap& m) { return {m.labels.begin(), m.labels.end()}; }

}  // namespace

TEST(Edges, ConstantImageHasNoEdges) {
    const GrayImage img(16, 16, ValueRange::Normalized, 0.4);
    for (auto op : {EdgeOperator::Sobel, EdgeOperator::Prewitt, EdgeOperator::Laplacian, EdgeOperator::LoG, EdgeOperator::Canny}) {
        EXPECT_EQ(edge_detect(img, op).count(), 0u);
    }
}

TEST(Edges, SobelMarksStepColumns) {
    const EdgeMap e = edge_detect(vertical_step(16, 10, 8, 0.2, 0.8), EdgeOperator::Sobel);
    for (int y = 1; y < 9; ++y) {
        for (int x = 1; x < 15; ++x) EXPECT_EQ(e(x, y), x == 7 || x == 8) << x << "," << y;
    }
}

TEST(Edges, PrewittAndZeroCrossingsFindTheStep) {
    const GrayImage img = vertical_step(16, 10, 8, 0.2, 0.8);
    const EdgeMap pw = edge_detect(img, EdgeOperator::Prewitt);
    EXPECT_TRUE(pw(7, 5) && pw(8, 5) && !pw(3, 5) && !pw(12, 5));
    for (auto op : {EdgeOperator::Laplacian, EdgeOperator::LoG}) {
        const EdgeMap zc = edge_detect(img, op);
        for (int y = 1; y < 9; ++y) EXPECT_TRUE(zc(7, y) || zc(8, y));
        EXPECT_FALSE(zc(2, 5));
        EXPECT_FALSE(zc(13, 5));
    }
}

TEST(Edges, CannyIsOnePixelWide) {
    SplitMix64 rng(24);
    GrayImage img = vertical_step(40, 30, 20, 0.3, 0.7);
    for (double& v : img.pixels()) v = std::clamp(v + 0.02 * (rng.uniform() - 0.5), 0.0, 1.0);
    const EdgeMap e = edge_detect(img, EdgeOperator::Canny);
    for (int y = 4; y < 26; ++y) {
        int run = 0;
        for (int x = 0; x < 40; ++x) run += e(x, y);
        EXPECT_EQ(run, 1) << "row " << y;
    }
}

TEST(Edges, ParseOperator) {
    EXPECT_EQ(parse_edge_operator("canny"), EdgeOperator::Canny);
    EXPECT_EQ(parse_edge_operator("log"), EdgeOperator::LoG);
    EXPECT_THROW(parse_edge_operator("roberts"), InvalidArgument);
}

TEST(Otsu, TwoLevelHalves) {
    const OtsuResult r = otsu_threshold(vertical_step(8, 4, 4, 0, 255, ValueRange::Raw));
    EXPECT_EQ(r.threshold, 0);
    EXPECT_FALSE(r.degenerate);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 8; ++x) EXPECT_EQ(r.mask(x, y), x >= 4);
    }
}

TEST(Otsu, BimodalThresholdBetweenModes) {
    SplitMix64 rng(25);
    GrayImage img(64, 64);
    std::vector<int> levels;
    for (double& v : img.pixels()) {
        const double mode = rng.uniform() < 0.4 ? 50 : 200;
        v = std::round(std::clamp(mode + 12 * rng.normal(), 0.0, 255.0));
        levels.push_back(static_cast<int>(v));
    }
    const OtsuResult r = otsu_threshold(img);
    EXPECT_GT(r.threshold, 50);
    EXPECT_LT(r.threshold, 200);
    EXPECT_EQ(r.threshold, oracle::otsu_sweep(levels));
}

TEST(Otsu, ConstantIsDegenerate) {
    const OtsuResult r = otsu_threshold(GrayImage(5, 5, ValueRange::Raw, 77));
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.mask.count(), 0u);
    EXPECT_THROW(otsu_threshold(GrayImage(5, 5, ValueRange::Normalized)), InvalidArgument);
}

TEST(SplitMerge, ConstantAndUnbounded) {
    EXPECT_EQ(split_merge(GrayImage(32, 32, ValueRange::Normalized, 0.3)).max_label(), 1);
    SplitMix64 rng(26);
    EXPECT_EQ(split_merge(oracle::random_image(rng, 32, 32), 1e9).max_label(), 1);
}

TEST(SplitMerge, FourQuadrants) {
    GrayImage img(32, 32, ValueRange::Normalized);
    const double level[4] = {0.1, 0.4, 0.7, 0.95};
    for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) img(x, y) = level[(y / 16) * 2 + x / 16];
    }
    const LabelMap m = split_merge(img, 0.05, 4);
    EXPECT_EQ(m.max_label(), 4);
    for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) EXPECT_EQ(m(x, y), m((x / 16) * 16, (y / 16) * 16));
    }
}

TEST(SplitMerge, Validation) {
    EXPECT_THROW(split_merge(GrayImage(4, 4, ValueRange::Normalized), -1.0), InvalidArgument);
    EXPECT_THROW(split_merge(GrayImage(4, 4, ValueRange::Normalized), 0.1, 0), InvalidArgument);
}

TEST(Watershed, TwoMinimaAndDam) {
    GrayImage img(31, 9);
    for (int y = 0; y < 9; ++y) {
        for (int x = 0; x < 31; ++x) img(x, y) = 10.0 * std::min(std::abs(x - 7), std::abs(x - 23));
    }
    const LabelMap m = watershed(img);
    EXPECT_EQ(distinct(m), (std::set<int>{0, 1, 2}));
    for (int y = 0; y < 9; ++y) {
        for (int x = 0; x < 31; ++x) EXPECT_EQ(m(x, y), x < 15 ? 1 : (x == 15 ? 0 : 2));
    }
}

TEST(Watershed, ConstantAndRamp) {
    const LabelMap c = watershed(GrayImage(10, 10, ValueRange::Raw, 40));
    EXPECT_EQ(distinct(c), std::set<int>{1});
    GrayImage ramp(20, 6);
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 20; ++x) ramp(x, y) = 10 * x + y;
    }
    EXPECT_EQ(distinct(watershed(ramp)), std::set<int>{1});
}

TEST(Watershed, BasinCountEqualsMinimaCount) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SplitMix64 rng(seed);
        GrayImage img(24, 20);
        for (double& v : img.pixels()) v = static_cast<double>(rng.next() % 12) * 20;
        const int minima = oracle::count_regional_minima(quantize_levels(img), 24, 20);
        const LabelMap m = watershed(img);
        EXPECT_EQ(m.max_label(), minima);
        std::set<int> seen = distinct(m);
        seen.erase(0);
        EXPECT_EQ(static_cast<int>(seen.size()), minima);
    }
}

TEST(Watershed, GradientInputIsScaled) {
    const GrayImage g = sobel_magnitude(vertical_step(12, 8, 6, 0.1, 0.9));
    EXPECT_FALSE(g.normalized());
    EXPECT_DOUBLE_EQ(*std::max_element(g.pixels().begin(), g.pixels().end()), 255.0);
}
