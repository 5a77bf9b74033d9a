#include "ncseg/baselines.hpp"

#include "ncseg/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace ncseg {

namespace {

struct Stats {
    double n = 0.0;
    double sum = 0.0;
    double sumsq = 0.0;

    Stats operator+(const Stats& o) const { return {n + o.n, sum + o.sum, sumsq + o.sumsq}; }
    double stddev() const {
        const double mean = sum / n;
        return std::sqrt(std::max(0.0, sumsq / n - mean * mean));
    }
};

Stats block_stats(const GrayImage& img, int x0, int y0, int w, int h) {
    Stats s;
    for (int y = y0; y < y0 + h; ++y) {
        for (int x = x0; x < x0 + w; ++x) {
            const double v = img(x, y);
            s.n += 1.0;
            s.sum += v;
            s.sumsq += v * v;
        }
    }
    return s;
}

struct Region {
    Stats stats;
    std::set<int> neighbors;
    int parent = -1;  // -1 while alive, otherwise the region it merged into
};

class SplitMerge {
public:
    SplitMerge(const GrayImage& img, double max_std, int min_block)
        : img_(img), max_std_(max_std), min_block_(min_block), owner_(img.size(), -1) {}

    LabelMap run() {
        split(0, 0, img_.width(), img_.height());
        link_neighbors();
        while (merge_once()) {
        }
        LabelMap out(img_.width(), img_.height());
        for (std::size_t i = 0; i < owner_.size(); ++i) out.labels[i] = root(owner_[i]) + 1;
        return relabel_dense(out);
    }

private:
    void split(int x0, int y0, int w, int h) {
        const Stats s = block_stats(img_, x0, y0, w, h);
        if (s.stddev() > max_std_ && std::min(w, h) > min_block_) {
            const int w0 = w / 2;
            const int h0 = h / 2;
            split(x0, y0, w0, h0);
            split(x0 + w0, y0, w - w0, h0);
            split(x0, y0 + h0, w0, h - h0);
            split(x0 + w0, y0 + h0, w - w0, h - h0);
            return;
        }
        const int id = static_cast<int>(regions_.size());
        regions_.push_back(Region{s, {}, -1});
        for (int y = y0; y < y0 + h; ++y) {
            for (int x = x0; x < x0 + w; ++x) owner_[img_.index(x, y)] = id;
        }
    }

    void link_neighbors() {
        for (int y = 0; y < img_.height(); ++y) {
            for (int x = 0; x < img_.width(); ++x) {
                const int a = owner_[img_.index(x, y)];
                if (x + 1 < img_.width()) connect(a, owner_[img_.index(x + 1, y)]);
                if (y + 1 < img_.height()) connect(a, owner_[img_.index(x, y + 1)]);
            }
        }
    }

    void connect(int a, int b) {
        if (a == b) return;
        regions_[static_cast<std::size_t>(a)].neighbors.insert(b);
        regions_[static_cast<std::size_t>(b)].neighbors.insert(a);
    }

    int root(int r) const {
        while (regions_[static_cast<std::size_t>(r)].parent >= 0) r = regions_[static_cast<std::size_t>(r)].parent;
        return r;
    }

    // Merges the smallest region that has an admissible neighbour with the
    // neighbour giving the lowest union std (ties: lower id).
    bool merge_once() {
        std::vector<int> alive;
        for (std::size_t r = 0; r < regions_.size(); ++r) {
            if (regions_[r].parent < 0) alive.push_back(static_cast<int>(r));
        }
        std::stable_sort(alive.begin(), alive.end(), [this](int a, int b) {
            return regions_[static_cast<std::size_t>(a)].stats.n < regions_[static_cast<std::size_t>(b)].stats.n;
        });
        for (int r : alive) {
            const Region& reg = regions_[static_cast<std::size_t>(r)];
            int best = -1;
            double best_std = std::numeric_limits<double>::infinity();
            for (int q : reg.neighbors) {
                const double s = (reg.stats + regions_[static_cast<std::size_t>(q)].stats).stddev();
                if (s <= max_std_ && (best < 0 || s < best_std)) {
                    best = q;
                    best_std = s;
                }
            }
            if (best >= 0) {
                absorb(std::min(r, best), std::max(r, best));
                return true;
            }
        }
        return false;
    }

    void absorb(int keep, int gone) {
        Region& k = regions_[static_cast<std::size_t>(keep)];
        Region& g = regions_[static_cast<std::size_t>(gone)];
        k.stats = k.stats + g.stats;
        for (int q : g.neighbors) {
            auto& qn = regions_[static_cast<std::size_t>(q)].neighbors;
            qn.erase(gone);
            if (q != keep) {
                qn.insert(keep);
                k.neighbors.insert(q);
            }
        }
        k.neighbors.erase(gone);
        k.neighbors.erase(keep);
        g.neighbors.clear();
        g.parent = keep;
    }

    const GrayImage& img_;
    double max_std_;
    int min_block_;
    std::vector<int> owner_;
    std::vector<Region> regions_;
};

}  // namespace

LabelMap split_merge(const GrayImage& img, double max_std, int min_block) {
    if (!(max_std >= 0.0)) throw InvalidArgument("split_merge: max_std must be >= 0");
    if (min_block < 1) throw InvalidArgument("split_merge: min_block must be >= 1");
    return SplitMerge(img, max_std, min_block).run();
}

}  // namespace ncseg
