#include "ncseg/graph.hpp"

#include "ncseg/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>

namespace ncseg {

void NcutParams::validate() const {
    if (!(sigma_i > 0.0) || !(sigma_x > 0.0)) throw InvalidArgument("ncut: bandwidths must be > 0");
    if (!(radius_r >= 1.0)) throw InvalidArgument("ncut: radius_r must be >= 1");
    if (!(ncut_threshold > 0.0 && ncut_threshold < 2.0)) {
        throw InvalidArgument("ncut: threshold must lie in (0, 2)");
    }
    if (min_region < 1) throw InvalidArgument("ncut: min_region must be >= 1");
    if (max_regions < 1) throw InvalidArgument("ncut: max_regions must be >= 1");
    if (n_splits < 2) throw InvalidArgument("ncut: n_splits must be >= 2");
    if (!(eig_tol > 0.0)) throw InvalidArgument("ncut: eig_tol must be > 0");
    if (dense_cutoff < 0) throw InvalidArgument("ncut: dense_cutoff must be >= 0");
    if (krylov_basis < 4) throw InvalidArgument("ncut: krylov_basis must be >= 4");
    if (max_restarts < 1) throw InvalidArgument("ncut: max_restarts must be >= 1");
}

SparseAffinity::SparseAffinity(int n, std::vector<std::int64_t> row_ptr, std::vector<int> cols,
                               std::vector<double> vals)
    : n_(n), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), vals_(std::move(vals)) {
    if (n < 0 || row_ptr_.size() != static_cast<std::size_t>(n) + 1 || cols_.size() != vals_.size() ||
        row_ptr_.back() != static_cast<std::int64_t>(cols_.size())) {
        throw InvalidArgument("SparseAffinity: inconsistent CSR arrays");
    }
    compute_degrees();
}

SparseAffinity SparseAffinity::from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges) {
    if (n < 0) throw InvalidArgument("SparseAffinity: negative vertex count");
    std::vector<std::map<int, double>> rows(static_cast<std::size_t>(n));
    for (const auto& [i, j, wt] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidArgument("SparseAffinity: edge endpoint out of range");
        if (!(wt >= 0.0) || !std::isfinite(wt)) throw InvalidArgument("SparseAffinity: weights must be finite and >= 0");
        if (i == j) continue;
        rows[static_cast<std::size_t>(i)][j] += wt;
        rows[static_cast<std::size_t>(j)][i] += wt;
    }
    std::vector<std::int64_t> ptr{0};
    std::vector<int> cols;
    std::vector<double> vals;
    for (const auto& row : rows) {
        for (const auto& [j, wt] : row) {
            cols.push_back(j);
            vals.push_back(wt);
        }
        ptr.push_back(static_cast<std::int64_t>(cols.size()));
    }
    return SparseAffinity(n, std::move(ptr), std::move(cols), std::move(vals));
}

void SparseAffinity::compute_degrees() {
    degree_.assign(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        double d = 0.0;
        for (double wt : weights(i)) d += wt;
        degree_[static_cast<std::size_t>(i)] = d;
    }
}

double SparseAffinity::weight(int i, int j) const {
    const auto nb = neighbors(i);
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return 0.0;
    return weights(i)[static_cast<std::size_t>(it - nb.begin())];
}

SparseAffinity SparseAffinity::induced(std::span<const int> vertices) const {
    std::vector<int> local(static_cast<std::size_t>(n_), -1);
    for (std::size_t k = 0; k < vertices.size(); ++k) local[static_cast<std::size_t>(vertices[k])] = static_cast<int>(k);
    const bool sorted = std::is_sorted(vertices.begin(), vertices.end());

    std::vector<std::int64_t> ptr{0};
    ptr.reserve(vertices.size() + 1);
    std::vector<int> cols;
    std::vector<double> vals;
    std::vector<std::pair<int, double>> row;
    for (int g : vertices) {
        const auto nb = neighbors(g);
        const auto wt = weights(g);
        row.clear();
        for (std::size_t e = 0; e < nb.size(); ++e) {
            const int l = local[static_cast<std::size_t>(nb[e])];
            if (l >= 0) row.emplace_back(l, wt[e]);
        }
        if (!sorted) std::sort(row.begin(), row.end());
        for (const auto& [l, w] : row) {
            cols.push_back(l);
            vals.push_back(w);
        }
        ptr.push_back(static_cast<std::int64_t>(cols.size()));
    }
    return SparseAffinity(static_cast<int>(vertices.size()), std::move(ptr), std::move(cols), std::move(vals));
}

SparseAffinity SparseAffinity::scaled(double s) const {
    if (!(s > 0.0)) throw InvalidArgument("SparseAffinity::scaled: factor must be > 0");
    std::vector<double> vals = vals_;
    for (double& v : vals) v *= s;
    return SparseAffinity(n_, row_ptr_, cols_, std::move(vals));
}

std::pair<std::vector<int>, int> SparseAffinity::components() const {
    std::vector<int> comp(static_cast<std::size_t>(n_), -1);
    int count = 0;
    std::vector<int> stack;
    for (int s = 0; s < n_; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        comp[static_cast<std::size_t>(s)] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            const auto nb = neighbors(i);
            const auto wt = weights(i);
            for (std::size_t e = 0; e < nb.size(); ++e) {
                if (wt[e] > 0.0 && comp[static_cast<std::size_t>(nb[e])] < 0) {
                    comp[static_cast<std::size_t>(nb[e])] = count;
                    stack.push_back(nb[e]);
                }
            }
        }
        ++count;
    }
    return {std::move(comp), count};
}

void SparseAffinity::validate() const {
    for (int i = 0; i < n_; ++i) {
        const auto nb = neighbors(i);
        const auto wt = weights(i);
        double d = 0.0;
        for (std::size_t e = 0; e < nb.size(); ++e) {
            if (nb[e] == i) throw InvalidArgument("SparseAffinity: self loop");
            if (e > 0 && nb[e] <= nb[e - 1]) throw InvalidArgument("SparseAffinity: unsorted row");
            if (!(wt[e] >= 0.0)) throw InvalidArgument("SparseAffinity: negative weight");
            if (weight(nb[e], i) != wt[e]) throw InvalidArgument("SparseAffinity: asymmetric entry");
            d += wt[e];
        }
        if (std::abs(d - degree(i)) > 1e-12 * std::max(1.0, d)) {
            throw InvalidArgument("SparseAffinity: degree mismatch");
        }
    }
}

void SparseAffinity::multiply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n_; ++i) {
        double acc = 0.0;
        const std::int64_t end = row_ptr_[static_cast<std::size_t>(i) + 1];
        for (std::int64_t e = row_ptr_[static_cast<std::size_t>(i)]; e < end; ++e) {
            acc += vals_[static_cast<std::size_t>(e)] * x[static_cast<std::size_t>(cols_[static_cast<std::size_t>(e)])];
        }
        y[static_cast<std::size_t>(i)] = acc;
    }
}

std::size_t Partition::count_a() const {
    return static_cast<std::size_t>(std::count(side.begin(), side.end(), std::uint8_t{0}));
}

Partition Partition::complement() const {
    Partition out = *this;
    for (auto& s : out.side) s = s ? 0 : 1;
    return out;
}

double spatial_sigma_pixels(const NcutParams& p, int width, int height) {
    if (p.sigma_x_units == SpatialUnits::Pixels) return p.sigma_x;
    return p.sigma_x * std::hypot(static_cast<double>(width), static_cast<double>(height));
}

SparseAffinity build_affinity(const GrayImage& feature, const NcutParams& p) {
    p.validate();
    if (!feature.normalized()) throw InvalidArgument("build_affinity: feature image must be normalized");
    if (feature.size() < 2) throw InvalidArgument("build_affinity: image needs at least 2 pixels");

    const int w = feature.width();
    const int h = feature.height();
    const double sx = spatial_sigma_pixels(p, w, h);
    const double inv_si2 = 1.0 / (p.sigma_i * p.sigma_i);
    const double inv_sx2 = 1.0 / (sx * sx);

    // Offsets strictly inside the radius, in raster order so rows come out sorted.
    struct Offset {
        int dx, dy;
        double spatial;
    };
    std::vector<Offset> offsets;
    const int reach = static_cast<int>(std::ceil(p.radius_r));
    const double r2 = p.radius_r * p.radius_r;
    for (int dy = -reach; dy <= reach; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
            const double d2 = dx * dx + dy * dy;
            if ((dx == 0 && dy == 0) || d2 >= r2) continue;
            offsets.push_back({dx, dy, std::exp(-d2 * inv_sx2)});
        }
    }

    const std::size_t n = feature.size();
    std::vector<std::int64_t> ptr;
    ptr.reserve(n + 1);
    ptr.push_back(0);
    std::vector<int> cols;
    std::vector<double> vals;
    cols.reserve(n * offsets.size());
    vals.reserve(n * offsets.size());
    const auto f = feature.pixels();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double fi = f[feature.index(x, y)];
            for (const auto& o : offsets) {
                const int xx = x + o.dx;
                const int yy = y + o.dy;
                if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
                const double diff = fi - f[feature.index(xx, yy)];
                cols.push_back(static_cast<int>(feature.index(xx, yy)));
                vals.push_back(std::exp(-diff * diff * inv_si2) * o.spatial);
            }
            ptr.push_back(static_cast<std::int64_t>(cols.size()));
        }
    }
    return SparseAffinity(static_cast<int>(n), std::move(ptr), std::move(cols), std::move(vals));
}

namespace {

void check_partition(const SparseAffinity& w, const Partition& part) {
    if (part.side.size() != static_cast<std::size_t>(w.size())) {
        throw InvalidArgument("partition size " + std::to_string(part.side.size()) + " != vertex count " +
                              std::to_string(w.size()));
    }
    const std::size_t a = part.count_a();
    if (a == 0 || a == part.side.size()) throw EmptySide("partition has an empty side");
}

}  // namespace

double cut_value(const SparseAffinity& w, const Partition& part) {
    check_partition(w, part);
    double cut = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        if (part.side[static_cast<std::size_t>(i)] != 0) continue;
        const auto nb = w.neighbors(i);
        const auto wt = w.weights(i);
        for (std::size_t e = 0; e < nb.size(); ++e) {
            if (part.side[static_cast<std::size_t>(nb[e])] != 0) cut += wt[e];
        }
    }
    return cut;
}

std::pair<double, double> volumes(const SparseAffinity& w, const Partition& part) {
    check_partition(w, part);
    double va = 0.0;
    double vb = 0.0;
    for (int i = 0; i < w.size(); ++i) (part.side[static_cast<std::size_t>(i)] == 0 ? va : vb) += w.degree(i);
    return {va, vb};
}

double ncut_value(const SparseAffinity& w, const Partition& part) {
    const auto [va, vb] = volumes(w, part);
    if (!(va > 0.0) || !(vb > 0.0)) throw ZeroVolume("ncut_value: a side has zero volume");
    // Summing the cut from the A side and from the B side gives the same set
    // of terms in a different order; averaging both keeps ncut(A,B) and
    // ncut(B,A) bit-identical.
    const double cut_ab = cut_value(w, part);
    const double cut_ba = cut_value(w, part.complement());
    const double cut = 0.5 * (cut_ab + cut_ba);
    return cut / va + cut / vb;
}

}  // namespace ncseg
