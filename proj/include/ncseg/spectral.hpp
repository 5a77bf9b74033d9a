#pragma once

#include "ncseg/graph.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ncseg {

/// Degrees are floored at this value before D^{-1/2} is formed.
inline constexpr double kDegreeFloor = 1e-12;

struct FiedlerResult {
    double lambda = 0.0;          ///< second-smallest generalized eigenvalue
    std::vector<double> vector;   ///< y with (D - W) y = lambda D y, unit 2-norm
    double residual = 0.0;        ///< ||(D - W) y - lambda D y|| / ||D y||
    bool dense = false;           ///< solved by the dense path
    int matvecs = 0;              ///< operator applications (iterative path)
};

/// Second-smallest eigenpair of (D - W) y = lambda D y through the symmetric
/// normalization D^{-1/2} (D - W) D^{-1/2} z = lambda z, y = D^{-1/2} z.
/// Graphs with at most p.dense_cutoff vertices use a dense symmetric solver;
/// larger ones a thick-restart (Krylov–Schur) Lanczos iteration.
/// The sign is fixed so the largest-magnitude entry is positive.
/// Throws DisconnectedGraph when the positive-weight graph is not connected
/// and EigenSolverError when the residual target cannot be met.
FiedlerResult fiedler_vector(const SparseAffinity& w, const NcutParams& p);

/// ||(D - W) y - lambda D y|| / ||D y|| with floored degrees.
double generalized_residual(const SparseAffinity& w, std::span<const double> y, double lambda);

/// Largest eigenpair of a symmetric operator restricted to the orthogonal
/// complement of `deflate` (unit vectors, may be empty).
struct SymmetricEigenpair {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;  ///< ||A x - value x|| for unit x
    int matvecs = 0;
};

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

SymmetricEigenpair largest_eigenpair(const LinearOperator& op, int n, const std::vector<std::vector<double>>& deflate,
                                     double tol, int basis_size, int max_restarts, std::uint64_t seed = 0x5eed);

}  // namespace ncseg
