#include "ncseg/homomorphic.hpp"

#include "ncseg/error.hpp"
#include "ncseg/spectrum.hpp"

#include <cmath>

namespace ncseg {

void HomomorphicParams::validate() const {
    if (!(gamma_low > 0.0)) throw InvalidArgument("homomorphic: gamma_low must be > 0");
    if (!(gamma_high >= gamma_low)) throw InvalidArgument("homomorphic: gamma_high must be >= gamma_low");
    if (!(cutoff_d0 > 0.0)) throw InvalidArgument("homomorphic: cutoff_d0 must be > 0");
    if (!(sharpness_c > 0.0)) throw InvalidArgument("homomorphic: sharpness_c must be > 0");
    if (!(log_offset > 0.0)) throw InvalidArgument("homomorphic: log_offset must be > 0");
}

double homomorphic_transfer(const HomomorphicParams& p, double d2) {
    return (p.gamma_high - p.gamma_low) * (1.0 - std::exp(-p.sharpness_c * d2 / (p.cutoff_d0 * p.cutoff_d0))) +
           p.gamma_low;
}

GrayImage homomorphic_filter(const GrayImage& img, const HomomorphicParams& p) {
    p.validate();
    if (!img.normalized()) throw InvalidArgument("homomorphic_filter: input must be normalized to [0,1]");

    GrayImage logged(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) logged.pixels()[i] = std::log(img.pixels()[i] + p.log_offset);

    Spectrum spec = dft2(logged);
    for (int v = 0; v < spec.height; ++v) {
        const double fv = signed_frequency(v, spec.height);
        for (int u = 0; u < spec.width; ++u) {
            const double fu = signed_frequency(u, spec.width);
            spec(u, v) *= homomorphic_transfer(p, fu * fu + fv * fv);
        }
    }

    GrayImage filtered = idft2(spec);
    for (double& s : filtered.pixels()) s = std::exp(s) - p.log_offset;
    return rescale_unit(filtered);
}

}  // namespace ncseg
