#pragma once

#include "ncseg/image.hpp"

#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

namespace ncseg {

/// How NcutParams::sigma_x is measured.
enum class SpatialUnits {
    DiagonalFraction,  ///< sigma_x times the image diagonal, in pixels
    Pixels,            ///< sigma_x is already in pixels
};

struct NcutParams {
    double sigma_i = 0.3;
    double sigma_x = 0.1;
    SpatialUnits sigma_x_units = SpatialUnits::DiagonalFraction;
    double radius_r = 20.0;
    double ncut_threshold = 0.065;
    int min_region = 64;
    int max_regions = 16;
    int n_splits = 32;
    double eig_tol = 1e-6;
    int dense_cutoff = 1024;
    /// Krylov basis size and restart budget of the iterative eigensolver.
    int krylov_basis = 48;
    int max_restarts = 2000;

    void validate() const;
};

/// Symmetric non-negative sparse affinity matrix in CSR form with sorted
/// column indices and no diagonal, plus the vertex degrees.
class SparseAffinity {
public:
    SparseAffinity() = default;

    /// Builds from an undirected edge list; each (i, j, w) with i != j is
    /// stored in both directions. Duplicate pairs are summed.
    static SparseAffinity from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges);

    /// CSR constructor; the caller guarantees symmetry and sorted rows.
    SparseAffinity(int n, std::vector<std::int64_t> row_ptr, std::vector<int> cols, std::vector<double> vals);

    int size() const noexcept { return n_; }
    std::int64_t nnz() const noexcept { return static_cast<std::int64_t>(cols_.size()); }

    std::span<const int> neighbors(int i) const {
        return {cols_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }
    std::span<const double> weights(int i) const {
        return {vals_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }
    double degree(int i) const { return degree_[static_cast<std::size_t>(i)]; }
    std::span<const double> degrees() const noexcept { return degree_; }

    /// Weight of (i, j), zero if absent.
    double weight(int i, int j) const;

    /// Vertex-induced subgraph on `vertices` (local index = position in the list).
    SparseAffinity induced(std::span<const int> vertices) const;

    /// Copy with every weight multiplied by s.
    SparseAffinity scaled(double s) const;

    /// Connected components over edges with w > 0; returns a component id per
    /// vertex (ids 0..C-1 in order of the lowest vertex) and C.
    std::pair<std::vector<int>, int> components() const;

    /// Throws InvalidArgument if symmetry, ordering or degree consistency fail.
    void validate() const;

    /// y = W x
    void multiply(std::span<const double> x, std::span<double> y) const;

private:
    void compute_degrees();

    int n_ = 0;
    std::vector<std::int64_t> row_ptr_{0};
    std::vector<int> cols_;
    std::vector<double> vals_;
    std::vector<double> degree_;
};

/// side[i] == 0 puts vertex i in A, 1 in B.
struct Partition {
    std::vector<std::uint8_t> side;

    std::size_t count_a() const;
    std::size_t count_b() const { return side.size() - count_a(); }
    Partition complement() const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Affinity over the pixels of a normalized feature image:
/// w_ij = exp(-(F_i - F_j)^2 / sigma_i^2) * exp(-|X_i - X_j|^2 / sigma_x_px^2)
/// for pixel distance |X_i - X_j| < radius_r, else 0.
SparseAffinity build_affinity(const GrayImage& feature, const NcutParams& p);

/// Spatial bandwidth in pixels for an image of the given size.
double spatial_sigma_pixels(const NcutParams& p, int width, int height);

/// Sum of w_ij over i in A, j in B.
double cut_value(const SparseAffinity& w, const Partition& part);

/// Volume (sum of degrees) of each side.
std::pair<double, double> volumes(const SparseAffinity& w, const Partition& part);

/// cut(A,B) * (1/Vol(A) + 1/Vol(B)).
double ncut_value(const SparseAffinity& w, const Partition& part);

}  // namespace ncseg
