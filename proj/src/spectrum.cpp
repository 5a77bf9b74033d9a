#include "ncseg/spectrum.hpp"

#include "ncseg/error.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

namespace ncseg {

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

void transform(std::vector<std::complex<double>>& data, int width, int height, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_2d(height, width, buf, buf, sign, FFTW_ESTIMATE);
    }
    if (raw == nullptr) throw Error("FFTW failed to create a plan");
    std::unique_ptr<fftw_plan_s, PlanDeleter> plan(raw);
    fftw_execute(plan.get());
}

}  // namespace

Spectrum dft2(const GrayImage& img) {
    Spectrum s{img.width(), img.height(), {}};
    s.bins.assign(img.pixels().begin(), img.pixels().end());
    transform(s.bins, s.width, s.height, FFTW_FORWARD);
    return s;
}

GrayImage idft2(const Spectrum& spectrum) {
    if (spectrum.width <= 0 || spectrum.height <= 0 ||
        spectrum.bins.size() != static_cast<std::size_t>(spectrum.width) * spectrum.height) {
        throw InvalidArgument("idft2: malformed spectrum");
    }
    std::vector<std::complex<double>> data = spectrum.bins;
    transform(data, spectrum.width, spectrum.height, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real() * scale;
    return GrayImage(spectrum.width, spectrum.height, std::move(out), ValueRange::Raw);
}

}  // namespace ncseg
