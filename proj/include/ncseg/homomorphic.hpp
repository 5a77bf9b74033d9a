#pragma once

#include "ncseg/image.hpp"

namespace ncseg {

/// Gaussian high-frequency-emphasis transfer
///   H(D) = (gamma_high - gamma_low) * (1 - exp(-c * D^2 / D0^2)) + gamma_low,
/// applied to the spectrum of ln(img + log_offset). D is the radial distance
/// from the (centered) zero frequency, in frequency samples.
struct HomomorphicParams {
    double gamma_low = 0.5;
    double gamma_high = 2.0;
    double cutoff_d0 = 30.0;
    double sharpness_c = 1.0;
    double log_offset = 1e-3;

    void validate() const;
};

/// Transfer value at squared radial distance `d2`.
double homomorphic_transfer(const HomomorphicParams& p, double d2);

/// Log -> frequency-domain gain -> exp, followed by an affine rescale to [0,1].
/// Input must be normalized. A constant result collapses to 0.5.
GrayImage homomorphic_filter(const GrayImage& img, const HomomorphicParams& p);

}  // namespace ncseg
