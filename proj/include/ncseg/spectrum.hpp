#pragma once

#include "ncseg/image.hpp"

#include <complex>
#include <vector>

namespace ncseg {

/// 2-D discrete Fourier spectrum, row-major, unnormalized forward transform:
/// F(u,v) = sum_x sum_y f(x,y) exp(-2*pi*i*(u*x/W + v*y/H)).
struct Spectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> bins;

    std::complex<double>& operator()(int u, int v) { return bins[static_cast<std::size_t>(v) * width + u]; }
    const std::complex<double>& operator()(int u, int v) const {
        return bins[static_cast<std::size_t>(v) * width + u];
    }
};

Spectrum dft2(const GrayImage& img);

/// Inverse transform (scaled by 1/(W*H)); returns the real part as a raw-range image.
GrayImage idft2(const Spectrum& spectrum);

/// Signed frequency index of bin `k` in a transform of length `n`
/// (0, 1, ..., ceil(n/2)-1, -floor(n/2), ..., -1).
inline int signed_frequency(int k, int n) { return k <= (n - 1) / 2 ? k : k - n; }

}  // namespace ncseg
