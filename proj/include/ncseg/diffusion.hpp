#pragma once

#include "ncseg/image.hpp"

#include <vector>

namespace ncseg {

/// Parameters of the edge-enhancing anisotropic diffusion
///
///   du/dt = w_diff * (f1 * u_mm + f2 * u_nn) - w_edge * f3 * tanh(l * v_mm) * |u_m|
///
/// with v = G_sigma * u and
///   f1 = 1 / (1 + k_a |v_m|^2 + k_b |v_mm|^2)
///   f2 = 1 / sqrt(1 + k_a |v_m|^2 + k_b |v_mm|^2)
///   f3 = 1 - 1 / (1 + k_c |v_m|^2).
///
/// `w_diff` and `w_edge` are the global weights of the smoothing and the
/// sharpening term. The coefficient constants are calibrated for 8-bit gray
/// levels, so v is multiplied by `intensity_scale` before f1, f2, f3 and the
/// tanh argument are evaluated; the PDE itself runs on the normalized image.
struct DiffusionParams {
    double dt = 0.1;
    int iterations = 50;
    double k_a = 0.15;
    double k_b = 1.4;
    double k_c = 0.015;
    double slope_l = 0.015;
    double w_diff = 1.0;
    double w_edge = 1.0;
    double smooth_sigma = 1.0;
    double grad_eps = 1e-8;
    double intensity_scale = 255.0;
    /// When set, dt must lie in [0.06, 0.3].
    bool restrict_dt = true;

    void validate() const;
};

/// Central-difference derivatives plus the second derivatives along the
/// gradient (M) and level-set (N) directions.
struct DerivativeField {
    int width = 0;
    int height = 0;
    std::vector<double> u_x, u_y, u_xx, u_yy, u_xy;
    std::vector<double> grad_mag;  ///< |grad u| = u_m
    std::vector<double> u_mm, u_nn;
};

/// Where |grad u| < grad_eps the gauge frame is undefined and the x axis is
/// used as M (u_mm = u_xx, u_nn = u_yy), which keeps u_mm + u_nn equal to
/// the Laplacian everywhere.
DerivativeField derivatives(const GrayImage& img, double grad_eps);

struct DiffusionCoefficients {
    std::vector<double> f1, f2, f3;
};

/// Evaluates f1, f2, f3 on a derivative field as given (no rescaling).
DiffusionCoefficients diffusion_coefficients(const DerivativeField& v_field, const DiffusionParams& p);

/// One explicit (Jacobi) step; the result is clamped to [0,1].
GrayImage diffuse_step(const GrayImage& img, const DiffusionParams& p);

/// `p.iterations` steps of diffuse_step.
GrayImage diffuse(const GrayImage& img, const DiffusionParams& p);

}  // namespace ncseg
