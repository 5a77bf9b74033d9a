#include "ncseg/spectral.hpp"

#include "ncseg/error.hpp"
#include "ncseg/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace ncseg {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void project_out(VectorXd& x, const std::vector<VectorXd>& deflate) {
    for (const auto& u : deflate) x -= u.dot(x) * u;
}

void fix_sign_and_normalize(std::vector<double>& y) {
    double norm = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        norm += y[i] * y[i];
        if (std::abs(y[i]) > std::abs(y[arg])) arg = i;
    }
    norm = std::sqrt(norm);
    const double s = (y[arg] < 0.0 ? -1.0 : 1.0) / norm;
    for (double& v : y) v *= s;
}

std::vector<double> floored_degrees(const SparseAffinity& w) {
    std::vector<double> d(w.degrees().begin(), w.degrees().end());
    for (double& v : d) v = std::max(v, kDegreeFloor);
    return d;
}

FiedlerResult dense_fiedler(const SparseAffinity& w, const std::vector<double>& d) {
    const int n = w.size();
    MatrixXd lap = MatrixXd::Identity(n, n);
    std::vector<double> inv_sqrt(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) inv_sqrt[i] = 1.0 / std::sqrt(d[i]);
    for (int i = 0; i < n; ++i) {
        const auto nb = w.neighbors(i);
        const auto wt = w.weights(i);
        for (std::size_t e = 0; e < nb.size(); ++e) {
            lap(i, nb[e]) -= wt[e] * inv_sqrt[static_cast<std::size_t>(i)] * inv_sqrt[static_cast<std::size_t>(nb[e])];
        }
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(lap);
    if (es.info() != Eigen::Success) throw EigenSolverError("dense eigensolver failed to converge");

    FiedlerResult out;
    out.dense = true;
    out.lambda = es.eigenvalues()(1);
    out.vector.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.vector[static_cast<std::size_t>(i)] = es.eigenvectors()(i, 1) * inv_sqrt[static_cast<std::size_t>(i)];
    return out;
}

}  // namespace

SymmetricEigenpair largest_eigenpair(const LinearOperator& op, int n, const std::vector<std::vector<double>>& deflate,
                                     double tol, int basis_size, int max_restarts, std::uint64_t seed) {
    const int dim = n - static_cast<int>(deflate.size());
    if (dim < 1) throw EigenSolverError("largest_eigenpair: nothing left after deflation");
    const int m = std::min(basis_size, dim);

    std::vector<VectorXd> defl;
    for (const auto& u : deflate) defl.push_back(Eigen::Map<const VectorXd>(u.data(), n));

    MatrixXd basis(n, m + 1);
    MatrixXd proj = MatrixXd::Zero(m + 1, m);

    SplitMix64 rng(seed);
    VectorXd start(n);
    for (int i = 0; i < n; ++i) start(i) = rng.uniform() - 0.5;
    project_out(start, defl);
    project_out(start, defl);
    basis.col(0) = start / start.norm();

    SymmetricEigenpair result;
    VectorXd w(n);
    int kept = 0;
    for (int restart = 0; restart <= max_restarts; ++restart) {
        int active = m;
        bool invariant = false;
        for (int j = kept; j < m; ++j) {
            op(std::span<const double>(basis.col(j).data(), static_cast<std::size_t>(n)),
               std::span<double>(w.data(), static_cast<std::size_t>(n)));
            ++result.matvecs;
            project_out(w, defl);
            const double wnorm = w.norm();
            VectorXd h = basis.leftCols(j + 1).transpose() * w;
            w.noalias() -= basis.leftCols(j + 1) * h;
            const VectorXd h2 = basis.leftCols(j + 1).transpose() * w;
            w.noalias() -= basis.leftCols(j + 1) * h2;
            h += h2;
            project_out(w, defl);
            proj.col(j).head(j + 1) = h;
            const double beta = w.norm();
            if (beta <= 1e-12 * std::max(wnorm, 1e-300)) {
                proj(j + 1, j) = 0.0;
                active = j + 1;
                invariant = true;
                break;
            }
            proj(j + 1, j) = beta;
            basis.col(j + 1) = w / beta;
        }

        const MatrixXd hm = proj.topLeftCorner(active, active);
        const MatrixXd sym = 0.5 * (hm + hm.transpose());
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym);
        if (es.info() != Eigen::Success) throw EigenSolverError("projected eigenproblem failed");
        const int top = active - 1;
        const double theta = es.eigenvalues()(top);
        const VectorXd s = es.eigenvectors().col(top);
        const double ritz_residual = invariant ? 0.0 : std::abs(proj.row(active).head(active).dot(s));

        if (ritz_residual <= tol || restart == max_restarts) {
            VectorXd x = basis.leftCols(active) * s;
            x /= x.norm();
            VectorXd ax(n);
            op(std::span<const double>(x.data(), static_cast<std::size_t>(n)),
               std::span<double>(ax.data(), static_cast<std::size_t>(n)));
            ++result.matvecs;
            project_out(ax, defl);
            result.value = theta;
            result.residual = (ax - theta * x).norm();
            result.vector.assign(x.data(), x.data() + n);
            if (ritz_residual > tol) {
                throw EigenSolverError("Krylov-Schur did not converge after " + std::to_string(max_restarts) +
                                       " restarts (residual " + std::to_string(ritz_residual) + ")");
            }
            return result;
        }

        // Thick restart: keep the leading half of the Ritz vectors.
        const int keep = std::max(1, active / 2);
        MatrixXd ritz(active, keep);
        for (int c = 0; c < keep; ++c) ritz.col(c) = es.eigenvectors().col(top - c);
        const Eigen::RowVectorXd coupling = proj.row(active).head(active) * ritz;
        const MatrixXd kept_vectors = basis.leftCols(active) * ritz;
        const VectorXd next = basis.col(active);
        basis.leftCols(keep) = kept_vectors;
        basis.col(keep) = next;
        proj.setZero();
        for (int c = 0; c < keep; ++c) {
            proj(c, c) = es.eigenvalues()(top - c);
            proj(keep, c) = coupling(c);
        }
        kept = keep;
    }
    throw EigenSolverError("Krylov-Schur iteration exhausted");
}

double generalized_residual(const SparseAffinity& w, std::span<const double> y, double lambda) {
    const auto d = floored_degrees(w);
    std::vector<double> wy(y.size());
    w.multiply(y, wy);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dy = d[i] * y[i];
        const double r = dy - wy[i] - lambda * dy;
        num += r * r;
        den += dy * dy;
    }
    return std::sqrt(num) / std::sqrt(den);
}

FiedlerResult fiedler_vector(const SparseAffinity& w, const NcutParams& p) {
    p.validate();
    const int n = w.size();
    if (n < 2) throw InvalidArgument("fiedler_vector: graph needs at least 2 vertices");
    if (const auto [comp, count] = w.components(); count > 1) {
        throw DisconnectedGraph("fiedler_vector: graph has " + std::to_string(count) + " connected components");
    }
    const auto d = floored_degrees(w);

    FiedlerResult out;
    if (n <= p.dense_cutoff) {
        out = dense_fiedler(w, d);
    } else {
        std::vector<double> sqrt_d(d.size());
        std::vector<double> inv_sqrt_d(d.size());
        double total = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            sqrt_d[i] = std::sqrt(d[i]);
            inv_sqrt_d[i] = 1.0 / sqrt_d[i];
            total += d[i];
        }
        // D^{1/2} 1 spans the trivial eigenvector of D^{-1/2} W D^{-1/2}.
        std::vector<double> trivial(sqrt_d);
        for (double& v : trivial) v /= std::sqrt(total);

        std::vector<double> scratch(static_cast<std::size_t>(n));
        const LinearOperator normalized_affinity = [&](std::span<const double> x, std::span<double> y) {
            for (std::size_t i = 0; i < x.size(); ++i) scratch[i] = x[i] * inv_sqrt_d[i];
            w.multiply(scratch, y);
            for (std::size_t i = 0; i < y.size(); ++i) y[i] *= inv_sqrt_d[i];
        };

        const auto [dmin, dmax] = std::minmax_element(d.begin(), d.end());
        double tol = 0.5 * p.eig_tol * std::sqrt(*dmin / *dmax);
        for (int attempt = 0; attempt < 4; ++attempt, tol *= 0.01) {
            const SymmetricEigenpair top =
                largest_eigenpair(normalized_affinity, n, {trivial}, tol, p.krylov_basis, p.max_restarts);
            out.matvecs += top.matvecs;
            out.lambda = 1.0 - top.value;
            out.vector.resize(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < d.size(); ++i) out.vector[i] = top.vector[i] * inv_sqrt_d[i];
            if (generalized_residual(w, out.vector, out.lambda) <= p.eig_tol) break;
        }
    }
    fix_sign_and_normalize(out.vector);
    out.residual = generalized_residual(w, out.vector, out.lambda);
    if (!(out.residual <= p.eig_tol)) {
        throw EigenSolverError("fiedler_vector: residual " + std::to_string(out.residual) + " above tolerance");
    }
    return out;
}

}  // namespace ncseg
