#include "ncseg/diffusion.hpp"

#include "ncseg/error.hpp"

#include <algorithm>
#include <cmath>

namespace ncseg {

void DiffusionParams::validate() const {
    if (!(dt > 0.0)) throw InvalidArgument("diffusion: dt must be > 0");
    if (restrict_dt && (dt < 0.06 || dt > 0.3)) {
        throw InvalidArgument("diffusion: dt must lie in [0.06, 0.3]");
    }
    if (iterations < 0) throw InvalidArgument("diffusion: iterations must be >= 0");
    if (!(k_a > 0.0 && k_b > 0.0 && k_c > 0.0 && slope_l > 0.0)) {
        throw InvalidArgument("diffusion: k_a, k_b, k_c and slope_l must be > 0");
    }
    if (!(grad_eps > 0.0)) throw InvalidArgument("diffusion: grad_eps must be > 0");
    if (!(smooth_sigma > 0.0)) throw InvalidArgument("diffusion: smooth_sigma must be > 0");
    if (!(intensity_scale > 0.0)) throw InvalidArgument("diffusion: intensity_scale must be > 0");
    if (w_diff < 0.0 || w_edge < 0.0) throw InvalidArgument("diffusion: weights must be >= 0");
}

DerivativeField derivatives(const GrayImage& img, double grad_eps) {
    const int w = img.width();
    const int h = img.height();
    if (w < 3 || h < 3) throw InvalidArgument("derivatives: image must be at least 3x3");

    DerivativeField f;
    f.width = w;
    f.height = h;
    const std::size_t n = img.size();
    for (auto* v : {&f.u_x, &f.u_y, &f.u_xx, &f.u_yy, &f.u_xy, &f.grad_mag, &f.u_mm, &f.u_nn}) v->resize(n);

    const double eps2 = grad_eps * grad_eps;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double c = img(x, y);
            const double e = img.clamped(x + 1, y);
            const double wv = img.clamped(x - 1, y);
            const double s = img.clamped(x, y + 1);
            const double nv = img.clamped(x, y - 1);
            const double se = img.clamped(x + 1, y + 1);
            const double ne = img.clamped(x + 1, y - 1);
            const double sw = img.clamped(x - 1, y + 1);
            const double nw = img.clamped(x - 1, y - 1);

            const double ux = 0.5 * (e - wv);
            const double uy = 0.5 * (s - nv);
            const double uxx = e - 2.0 * c + wv;
            const double uyy = s - 2.0 * c + nv;
            const double uxy = 0.25 * (se - ne - sw + nw);
            const double g2 = ux * ux + uy * uy;

            const std::size_t i = img.index(x, y);
            f.u_x[i] = ux;
            f.u_y[i] = uy;
            f.u_xx[i] = uxx;
            f.u_yy[i] = uyy;
            f.u_xy[i] = uxy;
            f.grad_mag[i] = std::sqrt(g2);
            if (g2 >= eps2) {
                f.u_mm[i] = (ux * ux * uxx + 2.0 * ux * uy * uxy + uy * uy * uyy) / g2;
                f.u_nn[i] = (uy * uy * uxx - 2.0 * ux * uy * uxy + ux * ux * uyy) / g2;
            } else {
                f.u_mm[i] = uxx;
                f.u_nn[i] = uyy;
            }
        }
    }
    return f;
}

DiffusionCoefficients diffusion_coefficients(const DerivativeField& v_field, const DiffusionParams& p) {
    const std::size_t n = v_field.grad_mag.size();
    DiffusionCoefficients c;
    c.f1.resize(n);
    c.f2.resize(n);
    c.f3.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double vm2 = v_field.grad_mag[i] * v_field.grad_mag[i];
        const double vmm2 = v_field.u_mm[i] * v_field.u_mm[i];
        const double q = 1.0 + p.k_a * vm2 + p.k_b * vmm2;
        c.f1[i] = 1.0 / q;
        c.f2[i] = 1.0 / std::sqrt(q);
        c.f3[i] = 1.0 - 1.0 / (1.0 + p.k_c * vm2);
    }
    return c;
}

GrayImage diffuse_step(const GrayImage& img, const DiffusionParams& p) {
    p.validate();
    if (!img.normalized()) throw InvalidArgument("diffuse_step: input must be normalized");

    GrayImage smoothed = convolve(img, gaussian_kernel(p.smooth_sigma), Border::Replicate);
    for (double& s : smoothed.pixels()) s *= p.intensity_scale;
    const DerivativeField vf = derivatives(smoothed, p.grad_eps * p.intensity_scale);
    const DiffusionCoefficients coef = diffusion_coefficients(vf, p);
    const DerivativeField uf = derivatives(img, p.grad_eps);

    std::vector<double> out(img.size());
    const auto src = img.pixels();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double smoothing = coef.f1[i] * uf.u_mm[i] + coef.f2[i] * uf.u_nn[i];
        const double sharpening = coef.f3[i] * std::tanh(p.slope_l * vf.u_mm[i]) * uf.grad_mag[i];
        const double rate = p.w_diff * smoothing - p.w_edge * sharpening;
        out[i] = std::clamp(src[i] + p.dt * rate, 0.0, 1.0);
    }
    return GrayImage(img.width(), img.height(), std::move(out), ValueRange::Normalized);
}

GrayImage diffuse(const GrayImage& img, const DiffusionParams& p) {
    p.validate();
    GrayImage u = img;
    for (int it = 0; it < p.iterations; ++it) u = diffuse_step(u, p);
    return u;
}

}  // namespace ncseg
