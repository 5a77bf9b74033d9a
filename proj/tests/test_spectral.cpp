#include "ncseg/error.hpp"
#include "ncseg/ncut.hpp"
#include "ncseg/random.hpp"
#include "ncseg/spectral.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ncseg;

namespace {

NcutParams iterative(double tol = 1e-10) {
    NcutParams p;
    p.dense_cutoff = 0;
    p.eig_tol = tol;
    return p;
}

}  // namespace

TEST(Fiedler, PathGraphIsMonotone) {
    const SparseAffinity w = SparseAffinity::from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    const auto ref = oracle::dense_fiedler(oracle::dense(w));
    for (const NcutParams& p : {NcutParams{}, iterative()}) {
        const FiedlerResult f = fiedler_vector(w, p);
        EXPECT_NEAR(f.lambda, ref.lambda, 1e-8);
        EXPECT_GE(oracle::abs_cosine(ref.y, f.vector), 1.0 - 1e-8);
        const auto& y = f.vector;
        const bool increasing = y[0] < y[1] && y[1] < y[2] && y[2] < y[3];
        const bool decreasing = y[0] > y[1] && y[1] > y[2] && y[2] > y[3];
        EXPECT_TRUE(increasing || decreasing);
        EXPECT_EQ((y[0] > 0), (y[1] > 0));
        EXPECT_NE((y[1] > 0), (y[2] > 0));
        EXPECT_EQ((y[2] > 0), (y[3] > 0));
    }
}

TEST(Fiedler, WeakBridgeSeparatesCliques) {
    const SparseAffinity w = SparseAffinity::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}, {1, 2, 0.01}});
    const FiedlerResult f = fiedler_vector(w, NcutParams{});
    EXPECT_EQ(f.vector[0] > 0, f.vector[1] > 0);
    EXPECT_EQ(f.vector[2] > 0, f.vector[3] > 0);
    EXPECT_NE(f.vector[0] > 0, f.vector[2] > 0);
}

TEST(Fiedler, DegenerateCompleteGraphChecksResidualOnly) {
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) edges.emplace_back(i, j, 1.0);
    }
    const SparseAffinity w = SparseAffinity::from_edges(6, edges);
    for (const NcutParams& p : {NcutParams{}, iterative()}) {
        const FiedlerResult f = fiedler_vector(w, p);
        EXPECT_NEAR(f.lambda, 6.0 / 5.0, 1e-8);
        EXPECT_LE(generalized_residual(w, f.vector, f.lambda), p.eig_tol);
    }
}

TEST(Fiedler, UnitNormAndSignConvention) {
    SplitMix64 rng(15);
    const SparseAffinity w = oracle::random_connected_graph(rng, 12, 0.4);
    const FiedlerResult f = fiedler_vector(w, NcutParams{});
    double norm = 0.0;
    double biggest = 0.0;
    for (double v : f.vector) {
        norm += v * v;
        if (std::abs(v) > std::abs(biggest)) biggest = v;
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_GT(biggest, 0.0);
    EXPECT_TRUE(f.dense);
}

TEST(Fiedler, DenseAndIterativeAgreeWithOracle) {
    SplitMix64 rng(16);
    for (int g = 0; g < 10; ++g) {
        const int n = 10 + static_cast<int>(rng.next() % 30);
        const SparseAffinity w = oracle::random_connected_graph(rng, n, 0.3);
        const auto ref = oracle::dense_fiedler(oracle::dense(w));
        for (const NcutParams& p : {NcutParams{}, iterative()}) {
            const FiedlerResult f = fiedler_vector(w, p);
            EXPECT_EQ(f.dense, p.dense_cutoff > 0);
            EXPECT_NEAR(f.lambda, ref.lambda, 1e-8);
            EXPECT_LE(f.residual, p.eig_tol);
        }
    }
}

TEST(Fiedler, IterativePathOnImageGraph) {
    SplitMix64 rng(17);
    GrayImage img(24, 24, ValueRange::Normalized);
    for (int y = 0; y < 24; ++y) {
        for (int x = 0; x < 24; ++x) img(x, y) = (x < 12 ? 0.2 : 0.8) + 0.05 * rng.uniform();
    }
    NcutParams p;
    p.radius_r = 3.0;
    p.sigma_x = 0.2;
    const SparseAffinity w = build_affinity(img, p);
    const FiedlerResult dense = fiedler_vector(w, p);
    p.dense_cutoff = 0;
    const FiedlerResult iter = fiedler_vector(w, p);
    EXPECT_FALSE(iter.dense);
    EXPECT_GT(iter.matvecs, 0);
    EXPECT_NEAR(iter.lambda, dense.lambda, 1e-8);
    EXPECT_LE(generalized_residual(w, iter.vector, iter.lambda), p.eig_tol);
    const bool left_positive = iter.vector[0] > 0;
    for (int y = 0; y < 24; ++y) {
        for (int x = 0; x < 24; ++x) EXPECT_EQ(iter.vector[img.index(x, y)] > 0, (x < 12) == left_positive);
    }
}

TEST(Fiedler, Errors) {
    const SparseAffinity split = SparseAffinity::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    EXPECT_THROW(fiedler_vector(split, NcutParams{}), DisconnectedGraph);
    const SparseAffinity single = SparseAffinity::from_edges(1, {});
    EXPECT_THROW(fiedler_vector(single, NcutParams{}), InvalidArgument);
}

TEST(LargestEigenpair, DiagonalOperator) {
    const int n = 200;
    const LinearOperator op = [](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = static_cast<double>(i + 1) / 200.0 * x[i];
    };
    const SymmetricEigenpair top = largest_eigenpair(op, n, {}, 1e-10, 20, 500);
    EXPECT_NEAR(top.value, 1.0, 1e-10);
    std::vector<double> e(n, 0.0);
    e[n - 1] = 1.0;
    const SymmetricEigenpair second = largest_eigenpair(op, n, {e}, 1e-10, 20, 500);
    EXPECT_NEAR(second.value, 199.0 / 200.0, 1e-10);
    EXPECT_LE(second.residual, 1e-10);
}
