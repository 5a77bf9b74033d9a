#include "ncseg/phantom.hpp"

#include "ncseg/error.hpp"
#include "ncseg/random.hpp"

#include <algorithm>

namespace ncseg {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

bool inside_canvas(double cx, double cy, double rx, double ry, int size) {
    return rx > 0.0 && ry > 0.0 && cx - rx >= 0.0 && cy - ry >= 0.0 && cx + rx <= size - 1 && cy + ry <= size - 1;
}

}  // namespace

void PhantomSpec::validate() const {
    if (size < 3) throw InvalidArgument("phantom: size must be >= 3");
    if (!in_unit(background) || !in_unit(nodule.level) || !in_unit(trachea.level)) {
        throw InvalidArgument("phantom: levels must lie in [0,1]");
    }
    if (!(speckle_sigma >= 0.0)) throw InvalidArgument("phantom: speckle_sigma must be >= 0");
    if (!inside_canvas(nodule.cx, nodule.cy, nodule.ax, nodule.ay, size)) {
        throw InvalidArgument("phantom: nodule ellipse leaves the canvas");
    }
    if (!inside_canvas(trachea.cx, trachea.cy, trachea.radius, trachea.radius, size)) {
        throw InvalidArgument("phantom: trachea disk leaves the canvas");
    }
}

std::pair<GrayImage, LabelMap> generate_phantom(const PhantomSpec& spec) {
    spec.validate();
    GrayImage img(spec.size, spec.size, ValueRange::Normalized);
    LabelMap truth(spec.size, spec.size, kBackgroundLabel);
    SplitMix64 rng(spec.seed);
    for (int y = 0; y < spec.size; ++y) {
        for (int x = 0; x < spec.size; ++x) {
            double level = spec.background;
            int label = kBackgroundLabel;
            const double ex = (x - spec.nodule.cx) / spec.nodule.ax;
            const double ey = (y - spec.nodule.cy) / spec.nodule.ay;
            if (ex * ex + ey * ey <= 1.0) {
                level = spec.nodule.level;
                label = kNoduleLabel;
            }
            const double tx = x - spec.trachea.cx;
            const double ty = y - spec.trachea.cy;
            if (tx * tx + ty * ty <= spec.trachea.radius * spec.trachea.radius) {
                level = spec.trachea.level;
                label = kTracheaLabel;
            }
            const double g = rng.normal();
            img(x, y) = std::clamp(level * (1.0 + spec.speckle_sigma * g), 0.0, 1.0);
            truth(x, y) = label;
        }
    }
    return {std::move(img), std::move(truth)};
}

}  // namespace ncseg
