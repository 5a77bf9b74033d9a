#include "ncseg/metrics.hpp"

#include "ncseg/error.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace ncseg {

std::vector<DiceScore> dice(const LabelMap& pred, const LabelMap& truth) {
    if (pred.width != truth.width || pred.height != truth.height) {
        throw InvalidArgument("dice: label maps differ in size");
    }
    std::map<int, std::size_t> truth_size;
    std::map<int, std::size_t> pred_size;
    std::map<std::pair<int, int>, std::size_t> overlap;
    for (std::size_t i = 0; i < truth.labels.size(); ++i) {
        const int t = truth.labels[i];
        const int p = pred.labels[i];
        if (t > 0) ++truth_size[t];
        if (p > 0) ++pred_size[p];
        if (t > 0 && p > 0) ++overlap[{t, p}];
    }

    std::vector<std::tuple<std::size_t, int, int>> pairs;
    for (const auto& [key, count] : overlap) pairs.emplace_back(count, key.first, key.second);
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return std::get<2>(a) < std::get<2>(b);
    });

    std::map<int, DiceScore> result;
    for (const auto& [label, size] : truth_size) result[label] = DiceScore{label, 0, 0.0};
    std::map<int, bool> pred_used;
    for (const auto& [count, t, p] : pairs) {
        if (result[t].matched_label != 0 || pred_used[p]) continue;
        pred_used[p] = true;
        result[t].matched_label = p;
        result[t].dice = 2.0 * static_cast<double>(count) / static_cast<double>(truth_size[t] + pred_size[p]);
    }

    std::vector<DiceScore> out;
    for (const auto& [label, score] : result) out.push_back(score);
    return out;
}

double dice_for(const std::vector<DiceScore>& scores, int truth_label) {
    for (const auto& s : scores) {
        if (s.truth_label == truth_label) return s.dice;
    }
    return 0.0;
}

}  // namespace ncseg
