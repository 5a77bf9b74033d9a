#include "ncseg/pipeline.hpp"

#include "ncseg/error.hpp"

#include <chrono>
#include <sstream>

namespace ncseg {

CropRect parse_crop(const std::string& text) {
    std::istringstream in(text);
    CropRect r;
    char c1 = 0;
    char c2 = 0;
    char c3 = 0;
    if (!(in >> r.x >> c1 >> r.y >> c2 >> r.width >> c3 >> r.height) || c1 != ',' || c2 != ',' || c3 != ',') {
        throw InvalidArgument("crop must be X,Y,W,H, got '" + text + "'");
    }
    std::string rest;
    if (in >> rest) throw InvalidArgument("crop must be X,Y,W,H, got '" + text + "'");
    return r;
}

void PipelineParams::validate() const {
    homomorphic.validate();
    diffusion.validate();
    frac.validate();
    ncut.validate();
    if (crop && (crop->width < 1 || crop->height < 1 || crop->x < 0 || crop->y < 0)) {
        throw InvalidArgument("crop rectangle must have a non-negative origin and positive size");
    }
}

PipelineParams PipelineParams::ncut_only() const {
    PipelineParams p = *this;
    p.use_homomorphic = false;
    p.use_diffusion = false;
    p.use_frac = false;
    return p;
}

namespace {

class Runner {
public:
    Runner(SegmentationResult& result, bool keep) : result_(result), keep_(keep) {}

    template <typename F>
    auto stage(const std::string& name, F&& fn) {
        const auto start = std::chrono::steady_clock::now();
        try {
            auto out = fn();
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
            result_.timings.push_back({name, dt.count()});
            if constexpr (std::is_same_v<decltype(out), GrayImage>) {
                if (keep_) result_.stages.push_back({name, out});
            }
            return out;
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
    }

private:
    SegmentationResult& result_;
    bool keep_;
};

}  // namespace

SegmentationResult run_pipeline(const GrayImage& img, const PipelineParams& p, bool keep_stages) {
    SegmentationResult result;
    Runner run(result, keep_stages);
    run.stage("config", [&] {
        p.validate();
        return 0;
    });

    GrayImage u = img;
    if (p.crop) {
        const CropRect c = *p.crop;
        u = run.stage("crop", [&] { return crop(u, c.x, c.y, c.width, c.height); });
    }
    if (!u.normalized()) u = run.stage("normalize", [&] { return normalize(u); });
    if (p.use_homomorphic) u = run.stage("homomorphic", [&] { return homomorphic_filter(u, p.homomorphic); });
    if (p.use_diffusion) u = run.stage("diffusion", [&] { return diffuse(u, p.diffusion); });
    if (p.use_frac) u = run.stage("fracgrad", [&] { return frac_gradient(u, p.frac); });

    NcutSegmentation seg = run.stage("ncut", [&] { return recursive_ncut(u, p.ncut); });
    result.labels = std::move(seg.labels);
    result.splits = std::move(seg.splits);
    return result;
}

}  // namespace ncseg
