#include "ncseg/ncut.hpp"

#include "ncseg/error.hpp"
#include "ncseg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>

namespace ncseg {

namespace {

struct Candidate {
    double ncut = 0.0;
    std::size_t count_a = 0;  // vertices with y <= threshold
    double threshold = 0.0;
};

// Ordering on candidates: lower Ncut; near-equal Ncut (relative 1e-12) goes
// to the more balanced split, then the smaller threshold.
bool better(const Candidate& a, const Candidate& b, std::size_t n) {
    const double scale = std::max(std::abs(a.ncut), std::abs(b.ncut));
    if (std::abs(a.ncut - b.ncut) > 1e-12 * scale) return a.ncut < b.ncut;
    const auto imbalance = [n](std::size_t ca) {
        const std::size_t cb = n - ca;
        return ca > cb ? ca - cb : cb - ca;
    };
    if (imbalance(a.count_a) != imbalance(b.count_a)) return imbalance(a.count_a) < imbalance(b.count_a);
    return a.threshold < b.threshold;
}

Partition threshold_partition(std::span<const double> y, double threshold) {
    Partition part;
    part.side.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) part.side[i] = y[i] <= threshold ? 0 : 1;
    return part;
}

}  // namespace

ThresholdSplit best_threshold_split(const SparseAffinity& w, std::span<const double> fiedler, const NcutParams& p) {
    p.validate();
    const std::size_t n = static_cast<std::size_t>(w.size());
    if (fiedler.size() != n) throw InvalidArgument("best_threshold_split: vector length differs from vertex count");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fiedler[static_cast<std::size_t>(a)] < fiedler[static_cast<std::size_t>(b)]; });
    std::vector<double> sorted(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = fiedler[static_cast<std::size_t>(order[k])];

    // Scanned sorted positions (threshold = sorted[k]), deduplicated by value.
    std::vector<std::size_t> positions;
    const std::size_t splits = static_cast<std::size_t>(p.n_splits);
    if (n <= splits) {
        for (std::size_t k = 0; k < n; ++k) positions.push_back(k);
    } else {
        for (std::size_t j = 0; j < splits; ++j) positions.push_back(j * (n - 1) / (splits - 1));
    }
    // Move each position to the last index holding the same value so that
    // count_a = position + 1.
    for (auto& k : positions) {
        k = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), sorted[k]) - sorted.begin()) - 1;
    }
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

    std::optional<Candidate> best;
    std::size_t best_slot = 0;
    for (std::size_t s = 0; s < positions.size(); ++s) {
        const std::size_t count_a = positions[s] + 1;
        if (count_a == n) continue;
        const double t = sorted[positions[s]];
        double value = 0.0;
        try {
            value = ncut_value(w, threshold_partition(fiedler, t));
        } catch (const ZeroVolume&) {
            continue;
        }
        const Candidate c{value, count_a, t};
        if (!best || better(c, *best, n)) {
            best = c;
            best_slot = s;
        }
    }
    if (!best) throw DegenerateSplit("best_threshold_split: every threshold leaves one side empty");

    // Exhaustive sweep of the bracket around the winner.
    const std::size_t lo = best_slot > 0 ? positions[best_slot - 1] + 1 : 0;
    const std::size_t hi = best_slot + 1 < positions.size() ? positions[best_slot + 1] : n - 1;
    if (hi > lo + 1) {
        std::vector<std::uint8_t> side(n, 1);
        for (std::size_t k = 0; k < lo; ++k) side[static_cast<std::size_t>(order[k])] = 0;
        double vol_a = 0.0;
        double vol_b = 0.0;
        double cut = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            (side[i] == 0 ? vol_a : vol_b) += w.degree(static_cast<int>(i));
            if (side[i] != 0) continue;
            const auto nb = w.neighbors(static_cast<int>(i));
            const auto wt = w.weights(static_cast<int>(i));
            for (std::size_t e = 0; e < nb.size(); ++e) {
                if (side[static_cast<std::size_t>(nb[e])] != 0) cut += wt[e];
            }
        }
        std::optional<Candidate> refined;
        for (std::size_t k = lo; k < hi; ++k) {
            const int v = order[k];
            const auto nb = w.neighbors(v);
            const auto wt = w.weights(v);
            for (std::size_t e = 0; e < nb.size(); ++e) cut += side[static_cast<std::size_t>(nb[e])] != 0 ? wt[e] : -wt[e];
            side[static_cast<std::size_t>(v)] = 0;
            vol_a += w.degree(v);
            vol_b -= w.degree(v);
            if (sorted[k + 1] == sorted[k]) continue;  // not a distinct threshold yet
            if (!(vol_a > 0.0) || !(vol_b > 0.0)) continue;
            const Candidate c{std::max(cut, 0.0) * (1.0 / vol_a + 1.0 / vol_b), k + 1, sorted[k]};
            if (!refined || better(c, *refined, n)) refined = c;
        }
        if (refined) {
            refined->ncut = ncut_value(w, threshold_partition(fiedler, refined->threshold));
            if (better(*refined, *best, n)) best = refined;
        }
    }

    return ThresholdSplit{threshold_partition(fiedler, best->threshold), best->ncut, best->threshold};
}

namespace {

struct RegionSplit {
    std::vector<int> a;
    std::vector<int> b;
    double ncut = 0.0;
};

class RecursiveNcut {
public:
    RecursiveNcut(const SparseAffinity& w, const GrayImage& feature, const NcutParams& p)
        : w_(w), feature_(feature), p_(p) {}

    NcutSegmentation run() {
        std::deque<std::vector<int>> pending;
        std::vector<int> all(static_cast<std::size_t>(w_.size()));
        std::iota(all.begin(), all.end(), 0);
        pending.push_back(std::move(all));

        std::vector<std::vector<int>> finished;
        NcutSegmentation out;
        while (!pending.empty()) {
            std::vector<int> region = std::move(pending.front());
            pending.pop_front();
            const std::size_t total = finished.size() + pending.size() + 1;
            std::optional<RegionSplit> split;
            if (total < static_cast<std::size_t>(p_.max_regions)) split = try_split(region);
            if (!split) {
                finished.push_back(std::move(region));
                continue;
            }
            out.splits.push_back({region.size(), split->a.size(), split->b.size(), split->ncut});
            pending.push_back(std::move(split->a));
            pending.push_back(std::move(split->b));
        }

        out.labels = LabelMap(feature_.width(), feature_.height());
        for (std::size_t r = 0; r < finished.size(); ++r) {
            for (int v : finished[r]) out.labels.labels[static_cast<std::size_t>(v)] = static_cast<int>(r) + 1;
        }
        return out;
    }

private:
    bool has_contrast(const std::vector<int>& region) const {
        const auto f = feature_.pixels();
        double lo = f[static_cast<std::size_t>(region.front())];
        double hi = lo;
        for (int v : region) {
            lo = std::min(lo, f[static_cast<std::size_t>(v)]);
            hi = std::max(hi, f[static_cast<std::size_t>(v)]);
        }
        return hi - lo > 1e-12;
    }

    // Bipartition of a connected vertex set (local indices into `sub`).
    std::optional<Partition> spectral_split(const SparseAffinity& sub) const {
        const FiedlerResult f = fiedler_vector(sub, p_);
        try {
            return best_threshold_split(sub, f.vector, p_).partition;
        } catch (const DegenerateSplit&) {
            return std::nullopt;
        }
    }

    std::optional<RegionSplit> try_split(const std::vector<int>& region) const {
        const std::size_t min_region = static_cast<std::size_t>(p_.min_region);
        if (region.size() < 2 * min_region || region.size() < 2 || !has_contrast(region)) return std::nullopt;

        const SparseAffinity sub = w_.induced(region);
        const auto [comp, count] = sub.components();
        Partition part;
        if (count == 1) {
            auto sp = spectral_split(sub);
            if (!sp) return std::nullopt;
            part = std::move(*sp);
        } else {
            std::vector<std::size_t> sizes(static_cast<std::size_t>(count), 0);
            for (int c : comp) ++sizes[static_cast<std::size_t>(c)];
            const int largest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
            const std::size_t rest = region.size() - sizes[static_cast<std::size_t>(largest)];
            part.side.assign(region.size(), 1);
            if (rest >= min_region && sizes[static_cast<std::size_t>(largest)] >= min_region) {
                // Largest component against everything else: a zero cut.
                for (std::size_t i = 0; i < region.size(); ++i) part.side[i] = comp[i] == largest ? 0 : 1;
            } else {
                // Split the dominant component; stray fragments join its larger side.
                std::vector<int> core;
                for (std::size_t i = 0; i < region.size(); ++i) {
                    if (comp[i] == largest) core.push_back(static_cast<int>(i));
                }
                if (core.size() < 2) return std::nullopt;
                auto sp = spectral_split(sub.induced(core));
                if (!sp) return std::nullopt;
                const std::uint8_t larger = sp->count_a() >= sp->count_b() ? 0 : 1;
                for (std::size_t i = 0; i < region.size(); ++i) part.side[i] = larger;
                for (std::size_t k = 0; k < core.size(); ++k) part.side[static_cast<std::size_t>(core[k])] = sp->side[k];
            }
        }

        const std::size_t a = part.count_a();
        const std::size_t b = part.count_b();
        if (a < min_region || b < min_region) return std::nullopt;
        double value = 0.0;
        try {
            value = ncut_value(sub, part);
        } catch (const ZeroVolume&) {
            return std::nullopt;
        }
        if (!(value <= p_.ncut_threshold)) return std::nullopt;

        RegionSplit out;
        out.ncut = value;
        out.a.reserve(a);
        out.b.reserve(b);
        for (std::size_t i = 0; i < region.size(); ++i) (part.side[i] == 0 ? out.a : out.b).push_back(region[i]);
        return out;
    }

    const SparseAffinity& w_;
    const GrayImage& feature_;
    const NcutParams& p_;
};

}  // namespace

NcutSegmentation recursive_ncut(const SparseAffinity& w, const GrayImage& feature, const NcutParams& p) {
    p.validate();
    if (w.size() != static_cast<int>(feature.size())) {
        throw InvalidArgument("recursive_ncut: affinity size differs from pixel count");
    }
    return RecursiveNcut(w, feature, p).run();
}

NcutSegmentation recursive_ncut(const GrayImage& feature, const NcutParams& p) {
    const SparseAffinity w = build_affinity(feature, p);
    return recursive_ncut(w, feature, p);
}

}  // namespace ncseg
