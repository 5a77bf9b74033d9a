#include "ncseg/baselines.hpp"

#include "ncseg/error.hpp"

namespace ncseg {

namespace {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

// Between-class variance of the split {<= t} | {> t}, up to the constant
// factor 1/N^2, as the exact fraction (n1*S0 - n0*S1)^2 / (n0*n1).
struct Score {
    u128 numerator = 0;
    u128 denominator = 1;
};

Score score(std::uint64_t n0, std::uint64_t s0, std::uint64_t n1, std::uint64_t s1) {
    const auto a = static_cast<i128>(n1) * static_cast<i128>(s0);
    const auto b = static_cast<i128>(n0) * static_cast<i128>(s1);
    const u128 diff = static_cast<u128>(a > b ? a - b : b - a);
    return Score{diff * diff, static_cast<u128>(n0) * n1};
}

// a > b for exact fractions; cross products stay below 2^128 for images of
// up to 2^19 pixels, larger ones fall back to long double.
bool greater(const Score& a, const Score& b, std::uint64_t total) {
    if (total <= (1ULL << 19)) return a.numerator * b.denominator > b.numerator * a.denominator;
    const long double fa = static_cast<long double>(a.numerator) / static_cast<long double>(a.denominator);
    const long double fb = static_cast<long double>(b.numerator) / static_cast<long double>(b.denominator);
    return fa > fb;
}

}  // namespace

LabelMap OtsuResult::labels() const {
    LabelMap out(mask.width, mask.height, 1);
    for (std::size_t i = 0; i < mask.edge.size(); ++i) out.labels[i] = mask.edge[i] ? 2 : 1;
    return out;
}

OtsuResult otsu_threshold(const GrayImage& img) {
    const Histogram hist = histogram(img);
    std::uint64_t total_sum = 0;
    int occupied = 0;
    int only_level = 0;
    for (int k = 0; k < 256; ++k) {
        total_sum += static_cast<std::uint64_t>(k) * hist.bins[static_cast<std::size_t>(k)];
        if (hist.bins[static_cast<std::size_t>(k)] > 0) {
            ++occupied;
            only_level = k;
        }
    }

    OtsuResult out;
    out.mask = EdgeMap{img.width(), img.height(), std::vector<std::uint8_t>(img.size(), 0)};
    if (occupied <= 1) {
        out.degenerate = true;
        out.threshold = only_level;
        return out;
    }

    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;
    bool found = false;
    Score best;
    for (int t = 0; t < 255; ++t) {
        n0 += hist.bins[static_cast<std::size_t>(t)];
        s0 += static_cast<std::uint64_t>(t) * hist.bins[static_cast<std::size_t>(t)];
        const std::uint64_t n1 = hist.total - n0;
        if (n0 == 0 || n1 == 0) continue;
        const Score s = score(n0, s0, n1, total_sum - s0);
        if (!found || greater(s, best, hist.total)) {
            best = s;
            out.threshold = t;
            found = true;
        }
    }

    for (std::size_t i = 0; i < img.size(); ++i) {
        out.mask.edge[i] = quantize(img.pixels()[i], ValueRange::Raw) > out.threshold ? 1 : 0;
    }
    return out;
}

}  // namespace ncseg
