#include "ncseg/baselines.hpp"

#include "ncseg/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ncseg {

namespace {

struct Gradient {
    GrayImage gx;
    GrayImage gy;
    std::vector<double> magnitude;
    double max_magnitude = 0.0;
};

Gradient gradient(const GrayImage& img, double side_weight) {
    // Derivative along x smoothed along y with [1, side_weight, 1].
    const Kernel kx = Kernel::from_rows(1, {-1, 0, 1, -side_weight, 0, side_weight, -1, 0, 1});
    const Kernel ky = Kernel::from_rows(1, {-1, -side_weight, -1, 0, 0, 0, 1, side_weight, 1});
    Gradient g{convolve(img, kx), convolve(img, ky), {}, 0.0};
    g.magnitude.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        g.magnitude[i] = std::hypot(g.gx.pixels()[i], g.gy.pixels()[i]);
        g.max_magnitude = std::max(g.max_magnitude, g.magnitude[i]);
    }
    return g;
}

EdgeMap empty_map(const GrayImage& img) { return EdgeMap{img.width(), img.height(), std::vector<std::uint8_t>(img.size(), 0)}; }

EdgeMap threshold_gradient(const GrayImage& img, double side_weight, double fraction) {
    const Gradient g = gradient(img, side_weight);
    EdgeMap out = empty_map(img);
    if (g.max_magnitude <= 1e-12) return out;
    const double t = fraction * g.max_magnitude;
    for (std::size_t i = 0; i < img.size(); ++i) out.edge[i] = g.magnitude[i] >= t ? 1 : 0;
    return out;
}

EdgeMap zero_crossings(const GrayImage& img, double gate_fraction) {
    const Kernel lap = Kernel::from_rows(1, {0, 1, 0, 1, -4, 1, 0, 1, 0});
    const GrayImage l = convolve(img, lap);
    EdgeMap out = empty_map(img);
    double peak = 0.0;
    for (double v : l.pixels()) peak = std::max(peak, std::abs(v));
    if (peak <= 1e-12) return out;
    const double gate = gate_fraction * peak;

    auto test = [&](int x, int y, int qx, int qy) {
        const double a = l(x, y);
        const double b = l(qx, qy);
        if (a * b >= 0.0 || std::abs(a - b) < gate) return;
        // Mark the pixel nearer the zero.
        if (std::abs(a) <= std::abs(b)) {
            out.edge[img.index(x, y)] = 1;
        } else {
            out.edge[img.index(qx, qy)] = 1;
        }
    };
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (x + 1 < img.width()) test(x, y, x + 1, y);
            if (y + 1 < img.height()) test(x, y, x, y + 1);
        }
    }
    return out;
}

EdgeMap canny(const GrayImage& img, const EdgeParams& p) {
    const GrayImage smooth = convolve(img, gaussian_kernel(p.canny_sigma));
    const Gradient g = gradient(smooth, 2.0);
    EdgeMap out = empty_map(img);
    if (g.max_magnitude <= 1e-12) return out;

    const int w = img.width();
    const int h = img.height();
    auto mag = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
        return g.magnitude[img.index(x, y)];
    };

    // Non-maximum suppression along the gradient direction quantized to 45
    // degrees. Plateaus keep the pixel on the positive side only.
    std::vector<double> thin(img.size(), 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double m = mag(x, y);
            if (m <= 0.0) continue;
            double angle = std::atan2(g.gy(x, y), g.gx(x, y)) * 180.0 / std::numbers::pi;
            if (angle < 0.0) angle += 180.0;
            int dx = 1;
            int dy = 0;
            if (angle >= 22.5 && angle < 67.5) {
                dy = 1;
            } else if (angle >= 67.5 && angle < 112.5) {
                dx = 0;
                dy = 1;
            } else if (angle >= 112.5 && angle < 157.5) {
                dx = -1;
                dy = 1;
            }
            if (m >= mag(x - dx, y - dy) && m > mag(x + dx, y + dy)) thin[img.index(x, y)] = m;
        }
    }

    const double high = p.canny_high * g.max_magnitude;
    const double low = p.canny_low_ratio * high;
    std::vector<int> stack;
    for (std::size_t i = 0; i < thin.size(); ++i) {
        if (thin[i] >= high) {
            out.edge[i] = 1;
            stack.push_back(static_cast<int>(i));
        }
    }
    constexpr int kDx[4] = {1, -1, 0, 0};
    constexpr int kDy[4] = {0, 0, 1, -1};
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        const int x = i % w;
        const int y = i / w;
        for (int k = 0; k < 4; ++k) {
            const int xx = x + kDx[k];
            const int yy = y + kDy[k];
            if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
            const std::size_t j = img.index(xx, yy);
            if (!out.edge[j] && thin[j] >= low && thin[j] > 0.0) {
                out.edge[j] = 1;
                stack.push_back(static_cast<int>(j));
            }
        }
    }
    return out;
}

}  // namespace

std::size_t EdgeMap::count() const { return static_cast<std::size_t>(std::count(edge.begin(), edge.end(), 1)); }

EdgeOperator parse_edge_operator(std::string_view name) {
    if (name == "sobel") return EdgeOperator::Sobel;
    if (name == "prewitt") return EdgeOperator::Prewitt;
    if (name == "laplacian") return EdgeOperator::Laplacian;
    if (name == "log") return EdgeOperator::LoG;
    if (name == "canny") return EdgeOperator::Canny;
    throw InvalidArgument("unknown edge operator '" + std::string(name) + "'");
}

EdgeMap edge_detect(const GrayImage& img, EdgeOperator op, const EdgeParams& params) {
    switch (op) {
        case EdgeOperator::Sobel:
            return threshold_gradient(img, 2.0, params.gradient_fraction);
        case EdgeOperator::Prewitt:
            return threshold_gradient(img, 1.0, params.gradient_fraction);
        case EdgeOperator::Laplacian:
            return zero_crossings(img, params.zero_crossing_fraction);
        case EdgeOperator::LoG:
            return zero_crossings(convolve(img, gaussian_kernel(params.log_sigma)), params.zero_crossing_fraction);
        case EdgeOperator::Canny:
            return canny(img, params);
    }
    throw InvalidArgument("unknown edge operator");
}

GrayImage sobel_magnitude(const GrayImage& img) {
    const Gradient g = gradient(img, 2.0);
    GrayImage out(img.width(), img.height());
    if (g.max_magnitude <= 1e-12) return out;
    for (std::size_t i = 0; i < img.size(); ++i) out.pixels()[i] = 255.0 * g.magnitude[i] / g.max_magnitude;
    return out;
}

}  // namespace ncseg
