#pragma once

#include "ncseg/image.hpp"

#include <vector>

namespace ncseg {

struct DiceScore {
    int truth_label = 0;
    int matched_label = 0;  ///< 0 when no predicted region was left to match
    double dice = 0.0;
};

/// Dice 2|A∩B| / (|A|+|B|) for every positive truth label against a greedily
/// matched predicted region: (truth, pred) pairs are taken by decreasing
/// intersection (ties: lower truth label, then lower pred label) and each
/// label on either side is used at most once. Label 0 is never matched.
std::vector<DiceScore> dice(const LabelMap& pred, const LabelMap& truth);

/// Dice of one truth label, 0 if it does not occur.
double dice_for(const std::vector<DiceScore>& scores, int truth_label);

}  // namespace ncseg
