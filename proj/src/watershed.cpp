#include "ncseg/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ncseg {

namespace {

constexpr int kUnset = -1;
constexpr int kDam = 0;

std::array<int, 4> neighbors4(int i, int w, int h, int& count) {
    std::array<int, 4> out{};
    count = 0;
    const int x = i % w;
    const int y = i / w;
    if (x > 0) out[static_cast<std::size_t>(count++)] = i - 1;
    if (x + 1 < w) out[static_cast<std::size_t>(count++)] = i + 1;
    if (y > 0) out[static_cast<std::size_t>(count++)] = i - w;
    if (y + 1 < h) out[static_cast<std::size_t>(count++)] = i + w;
    return out;
}

}  // namespace

std::vector<int> quantize_levels(const GrayImage& img) {
    std::vector<int> out(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) out[i] = quantize(img.pixels()[i], img.range());
    return out;
}

LabelMap watershed(const GrayImage& img) {
    const int w = img.width();
    const int h = img.height();
    const int n = static_cast<int>(img.size());
    const std::vector<int> level = quantize_levels(img);
    std::vector<int> label(static_cast<std::size_t>(n), kUnset);

    // Regional minima: plateaus with no strictly lower neighbour, numbered in
    // raster order of their first pixel.
    int basins = 0;
    {
        std::vector<int> plateau(static_cast<std::size_t>(n), -1);
        std::vector<int> members;
        std::vector<int> stack;
        for (int s = 0; s < n; ++s) {
            if (plateau[static_cast<std::size_t>(s)] >= 0) continue;
            members.clear();
            bool minimum = true;
            plateau[static_cast<std::size_t>(s)] = s;
            stack.push_back(s);
            while (!stack.empty()) {
                const int i = stack.back();
                stack.pop_back();
                members.push_back(i);
                int cnt = 0;
                const auto nb = neighbors4(i, w, h, cnt);
                for (int k = 0; k < cnt; ++k) {
                    const int j = nb[static_cast<std::size_t>(k)];
                    if (level[static_cast<std::size_t>(j)] < level[static_cast<std::size_t>(i)]) minimum = false;
                    if (level[static_cast<std::size_t>(j)] == level[static_cast<std::size_t>(i)] &&
                        plateau[static_cast<std::size_t>(j)] < 0) {
                        plateau[static_cast<std::size_t>(j)] = s;
                        stack.push_back(j);
                    }
                }
            }
            if (minimum) {
                ++basins;
                for (int i : members) label[static_cast<std::size_t>(i)] = basins;
            }
        }
    }

    std::array<std::vector<int>, 256> by_level;
    for (int i = 0; i < n; ++i) {
        if (label[static_cast<std::size_t>(i)] == kUnset) by_level[static_cast<std::size_t>(level[static_cast<std::size_t>(i)])].push_back(i);
    }

    // Flood level by level. Within a level, growth proceeds in synchronous
    // rounds: a pixel decides from the labels settled in earlier rounds only,
    // so the result does not depend on scan order. Pixels not reached at
    // their own level stay pending and are retried at higher levels.
    std::vector<int> pending;
    std::vector<char> queued(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> decisions;
    for (int lv = 0; lv < 256; ++lv) {
        pending.insert(pending.end(), by_level[static_cast<std::size_t>(lv)].begin(),
                       by_level[static_cast<std::size_t>(lv)].end());
        if (pending.empty()) continue;
        std::vector<char> candidate(static_cast<std::size_t>(n), 0);
        for (int i : pending) candidate[static_cast<std::size_t>(i)] = 1;

        auto touches_basin = [&](int i) {
            int cnt = 0;
            const auto nb = neighbors4(i, w, h, cnt);
            for (int k = 0; k < cnt; ++k) {
                if (label[static_cast<std::size_t>(nb[static_cast<std::size_t>(k)])] > 0) return true;
            }
            return false;
        };

        std::vector<int> frontier;
        for (int i : pending) {
            if (touches_basin(i)) {
                frontier.push_back(i);
                queued[static_cast<std::size_t>(i)] = 1;
            }
        }
        while (!frontier.empty()) {
            decisions.clear();
            for (int i : frontier) {
                int cnt = 0;
                const auto nb = neighbors4(i, w, h, cnt);
                int found = 0;
                bool conflict = false;
                for (int k = 0; k < cnt; ++k) {
                    const int l = label[static_cast<std::size_t>(nb[static_cast<std::size_t>(k)])];
                    if (l <= 0) continue;
                    if (found == 0) {
                        found = l;
                    } else if (l != found) {
                        conflict = true;
                    }
                }
                decisions.emplace_back(i, conflict ? kDam : found);
            }
            std::vector<int> next;
            for (const auto& [i, l] : decisions) label[static_cast<std::size_t>(i)] = l;
            for (const auto& [i, l] : decisions) {
                if (l <= 0) continue;
                int cnt = 0;
                const auto nb = neighbors4(i, w, h, cnt);
                for (int k = 0; k < cnt; ++k) {
                    const int j = nb[static_cast<std::size_t>(k)];
                    if (candidate[static_cast<std::size_t>(j)] && !queued[static_cast<std::size_t>(j)] &&
                        label[static_cast<std::size_t>(j)] == kUnset) {
                        queued[static_cast<std::size_t>(j)] = 1;
                        next.push_back(j);
                    }
                }
            }
            frontier = std::move(next);
        }
        std::erase_if(pending, [&](int i) { return label[static_cast<std::size_t>(i)] != kUnset; });
        for (int i : pending) queued[static_cast<std::size_t>(i)] = 0;
    }

    // Anything still unreached is walled in by dams on every side.
    LabelMap out(w, h);
    for (int i = 0; i < n; ++i) out.labels[static_cast<std::size_t>(i)] = std::max(label[static_cast<std::size_t>(i)], kDam);
    return out;
}

}  // namespace ncseg
