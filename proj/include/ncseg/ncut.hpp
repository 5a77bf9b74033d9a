#pragma once

#include "ncseg/graph.hpp"
#include "ncseg/image.hpp"

#include <span>
#include <vector>

namespace ncseg {

struct ThresholdSplit {
    Partition partition;  ///< A = {y <= threshold}
    double ncut = 0.0;
    double threshold = 0.0;
};

/// Scans n_splits evenly spaced order statistics of `fiedler` as thresholds
/// and keeps the partition of least Ncut (ties: more balanced, then smaller
/// threshold). The winning bracket between its neighbouring scanned
/// thresholds is then swept exhaustively with incremental cut updates, so
/// graphs with at most n_splits vertices see every distinct threshold.
/// Throws DegenerateSplit when every candidate leaves a side empty.
ThresholdSplit best_threshold_split(const SparseAffinity& w, std::span<const double> fiedler, const NcutParams& p);

struct AcceptedSplit {
    std::size_t region_size = 0;
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    double ncut = 0.0;
};

struct NcutSegmentation {
    LabelMap labels;
    std::vector<AcceptedSplit> splits;  ///< in acceptance order
};

/// Recursive two-way normalized cut over the pixels of a normalized feature
/// image. Regions are processed first-in first-out starting from the whole
/// image; a region is split when its best split has Ncut <= threshold, both
/// children hold at least min_region pixels and the region count stays
/// within max_regions. Children are queued A first. Final labels are 1..K in
/// the order regions were finalized.
NcutSegmentation recursive_ncut(const GrayImage& feature, const NcutParams& p);

/// Same, on a prebuilt affinity over the image pixels.
NcutSegmentation recursive_ncut(const SparseAffinity& w, const GrayImage& feature, const NcutParams& p);

}  // namespace ncseg
