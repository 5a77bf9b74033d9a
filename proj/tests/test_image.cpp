#include "ncseg/error.hpp"
#include "ncseg/image.hpp"
#include "ncseg/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using namespace ncseg;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("ncseg_test_" + name);
}

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

}  // namespace

TEST(Pgm, ReadsBinaryPayload) {
    const auto path = temp_file("p5.pgm");
    write_bytes(path, std::string("P5\n2 2\n255\n") + std::string("\x00\xff\x80\x40", 4));
    const GrayImage img = load_pgm(path);
    EXPECT_EQ(img, GrayImage(2, 2, {0, 255, 128, 64}));
}

TEST(Pgm, ReadsAsciiPayload) {
    const auto path = temp_file("p2.pgm");
    write_bytes(path, "P2 1 1 255 7\n");
    EXPECT_EQ(load_pgm(path), GrayImage(1, 1, {7}));
}

TEST(Pgm, SkipsHeaderComments) {
    const auto path = temp_file("comment.pgm");
    write_bytes(path, "P2\n# made by hand\n2 1\n# max\n255\n3 4\n");
    EXPECT_EQ(load_pgm(path), GrayImage(2, 1, {3, 4}));
}

TEST(Pgm, DistinctFailureModes) {
    EXPECT_THROW(load_pgm(temp_file("does_not_exist.pgm")), FileNotFound);

    const auto truncated = temp_file("short.pgm");
    write_bytes(truncated, std::string("P5\n2 2\n255\n") + std::string("\x01\x02\x03", 3));
    EXPECT_THROW(load_pgm(truncated), TruncatedPayload);

    const auto bad_magic = temp_file("magic.pgm");
    write_bytes(bad_magic, "P6\n1 1\n255\n\x01");
    EXPECT_THROW(load_pgm(bad_magic), MalformedHeader);

    const auto deep = temp_file("deep.pgm");
    write_bytes(deep, "P2\n1 1\n65535\n7\n");
    EXPECT_THROW(load_pgm(deep), MalformedHeader);
}

TEST(Pgm, RoundTrip) {
    const auto path = temp_file("roundtrip.pgm");
    save_pgm(GrayImage(1, 1, {7}), path);
    EXPECT_EQ(load_pgm(path), GrayImage(1, 1, {7}));

    SplitMix64 rng(5);
    GrayImage img(13, 7);
    for (double& v : img.pixels()) v = static_cast<double>(rng.next() % 256);
    save_pgm(img, path);
    EXPECT_EQ(load_pgm(path), img);
}

TEST(Pgm, UnwritablePathThrows) {
    EXPECT_THROW(save_pgm(GrayImage(1, 1), "/nonexistent_dir/x.pgm"), WriteError);
}

TEST(Quantize, RoundHalfUpAndClamp) {
    EXPECT_EQ(quantize(0.5, ValueRange::Normalized), 128);
    EXPECT_EQ(quantize(-0.1, ValueRange::Raw), 0);
    EXPECT_EQ(quantize(300.0, ValueRange::Raw), 255);
    EXPECT_EQ(quantize(2.5, ValueRange::Raw), 3);
    EXPECT_EQ(quantize(2.49, ValueRange::Raw), 2);
}

TEST(Normalize, Endpoints) {
    const GrayImage n = normalize(GrayImage(2, 1, {0, 255}));
    EXPECT_TRUE(n.normalized());
    EXPECT_EQ(n(0, 0), 0.0);
    EXPECT_EQ(n(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(normalize(GrayImage(1, 1, {51}))(0, 0), 0.2);
}

TEST(Normalize, RejectsNormalizedInput) {
    EXPECT_THROW(normalize(GrayImage(1, 1, ValueRange::Normalized, 0.5)), InvalidArgument);
}

TEST(GrayImage, NormalizedRangeEnforced) {
    EXPECT_THROW(GrayImage(1, 1, {1.5}, ValueRange::Normalized), InvalidArgument);
    EXPECT_THROW(GrayImage(1, 1, {std::nan("")}), InvalidArgument);
    EXPECT_THROW(GrayImage(2, 2, {1.0}), InvalidArgument);
}

TEST(Histogram, ConstantAndTwoLevel) {
    const Histogram c = histogram(GrayImage(4, 4, ValueRange::Raw, 180));
    EXPECT_EQ(c.bins[180], 16u);
    EXPECT_EQ(c.total, 16u);
    for (int k = 0; k < 256; ++k) {
        if (k != 180) EXPECT_EQ(c.bins[static_cast<std::size_t>(k)], 0u);
    }
    const Histogram t = histogram(GrayImage(2, 2, {0, 0, 255, 255}));
    EXPECT_EQ(t.bins[0], 2u);
    EXPECT_EQ(t.bins[255], 2u);
}

TEST(Histogram, CountsEveryPixel) {
    SplitMix64 rng(11);
    GrayImage img(37, 23);
    std::array<std::uint64_t, 256> expected{};
    for (double& v : img.pixels()) {
        v = static_cast<double>(rng.next() % 256);
        ++expected[static_cast<std::size_t>(v)];
    }
    const Histogram h = histogram(img);
    EXPECT_EQ(h.bins, expected);
    EXPECT_EQ(h.total, img.size());
}

TEST(Convolve, IdentityKernel) {
    SplitMix64 rng(2);
    const GrayImage img = oracle::random_image(rng, 9, 6);
    const GrayImage out = convolve(img, Kernel::identity());
    for (std::size_t i = 0; i < img.size(); ++i) EXPECT_EQ(out.pixels()[i], img.pixels()[i]);
}

TEST(Convolve, ConstantImageScalesBySum) {
    const Kernel k = Kernel::from_rows(1, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    for (Border b : {Border::Replicate, Border::Reflect}) {
        const GrayImage out = convolve(GrayImage(5, 4, ValueRange::Raw, 0.5), k, b);
        for (double v : out.pixels()) EXPECT_DOUBLE_EQ(v, 0.5 * 45.0);
    }
}

TEST(Convolve, BoxOnImpulse) {
    GrayImage img(7, 7);
    img(3, 3) = 1.0;
    const Kernel box = Kernel::from_rows(1, std::vector<double>(9, 1.0 / 9.0));
    const GrayImage out = convolve(img, box);
    for (int y = 0; y < 7; ++y) {
        for (int x = 0; x < 7; ++x) {
            const bool plateau = std::abs(x - 3) <= 1 && std::abs(y - 3) <= 1;
            EXPECT_DOUBLE_EQ(out(x, y), plateau ? 1.0 / 9.0 : 0.0);
        }
    }
}

TEST(Convolve, IsCorrelationNotFlipped) {
    GrayImage img(5, 1);
    img(2, 0) = 1.0;
    Kernel k = Kernel::from_rows(1, {0, 0, 0, 1, 0, 2, 0, 0, 0});
    const GrayImage out = convolve(img, k);
    EXPECT_EQ(out(1, 0), 2.0);  // pixel 1 sees its right neighbour through weight at dx=+1
    EXPECT_EQ(out(3, 0), 1.0);
}

TEST(Convolve, BorderModes) {
    const GrayImage img(3, 1, {1, 2, 3});
    const Kernel left = Kernel::from_rows(1, {0, 0, 0, 1, 0, 0, 0, 0, 0});
    EXPECT_EQ(convolve(img, left, Border::Replicate)(0, 0), 1.0);
    EXPECT_EQ(convolve(img, left, Border::Reflect)(0, 0), 2.0);
}

TEST(GaussianKernel, NormalizedIsotropicAndExact) {
    for (double sigma : {0.3, 1.0, 1.4, 2.5}) {
        const Kernel k = gaussian_kernel(sigma);
        EXPECT_EQ(k.radius, static_cast<int>(std::ceil(3.0 * sigma)));
        EXPECT_NEAR(k.sum(), 1.0, 1e-12);
        for (int dy = -k.radius; dy <= k.radius; ++dy) {
            for (int dx = -k.radius; dx <= k.radius; ++dx) EXPECT_DOUBLE_EQ(k.at(dx, dy), k.at(-dy, dx));
        }
    }
    const Kernel k = gaussian_kernel(1.0);
    double z = 0.0;
    for (int dy = -3; dy <= 3; ++dy) {
        for (int dx = -3; dx <= 3; ++dx) z += std::exp(-(dx * dx + dy * dy) / 2.0);
    }
    EXPECT_NEAR(k.at(0, 0), 1.0 / z, 1e-15);
    EXPECT_THROW(gaussian_kernel(0.0), InvalidArgument);
}

TEST(RescaleUnit, AffineAndDegenerate) {
    const GrayImage r = rescale_unit(GrayImage(3, 1, {-2, 0, 2}));
    EXPECT_TRUE(r.normalized());
    EXPECT_EQ(r(0, 0), 0.0);
    EXPECT_EQ(r(1, 0), 0.5);
    EXPECT_EQ(r(2, 0), 1.0);
    const GrayImage flat = rescale_unit(GrayImage(4, 4, ValueRange::Raw, 9.0));
    for (double v : flat.pixels()) EXPECT_EQ(v, 0.5);
}

TEST(Crop, SubRectangleAndBounds) {
    GrayImage img(4, 3);
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 4; ++x) img(x, y) = 10 * y + x;
    }
    const GrayImage c = crop(img, 1, 1, 2, 2);
    EXPECT_EQ(c, GrayImage(2, 2, {11, 12, 21, 22}));
    EXPECT_THROW(crop(img, 3, 0, 2, 1), InvalidArgument);
}

TEST(LabelMap, RelabelDenseAndRoundTrip) {
    LabelMap m(3, 2);
    m.labels = {7, 7, 3, 0, 3, 9};
    const LabelMap d = relabel_dense(m);
    EXPECT_EQ(d.labels, (std::vector<int>{1, 1, 2, 0, 2, 3}));
    EXPECT_TRUE(d.contiguous());
    EXPECT_FALSE(m.contiguous());

    const auto path = temp_file("labels.pgm");
    save_labels(d, path);
    EXPECT_EQ(load_labels(path), d);
}
