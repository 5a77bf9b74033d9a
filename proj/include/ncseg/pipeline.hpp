#pragma once

#include "ncseg/diffusion.hpp"
#include "ncseg/fracgrad.hpp"
#include "ncseg/graph.hpp"
#include "ncseg/homomorphic.hpp"
#include "ncseg/image.hpp"
#include "ncseg/ncut.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ncseg {

struct CropRect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    bool operator==(const CropRect&) const = default;
};

/// Parses "X,Y,W,H".
CropRect parse_crop(const std::string& text);

struct PipelineParams {
    HomomorphicParams homomorphic;
    DiffusionParams diffusion;
    FracParams frac;
    NcutParams ncut;
    bool use_homomorphic = true;
    bool use_diffusion = true;
    bool use_frac = true;
    std::optional<CropRect> crop;

    void validate() const;

    /// Same parameters with every preprocessing stage switched off.
    PipelineParams ncut_only() const;
};

struct StageImage {
    std::string stage;
    GrayImage image;
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct SegmentationResult {
    LabelMap labels;
    std::vector<AcceptedSplit> splits;  ///< Ncut of every accepted split, in acceptance order
    std::vector<StageImage> stages;     ///< filled only when requested
    std::vector<StageTiming> timings;
};

/// crop -> normalize -> homomorphic -> diffusion -> fractional gradient ->
/// recursive Ncut. Disabled stages pass their input through unchanged; an
/// already normalized input skips normalization. Any failure is rethrown as
/// StageError naming the stage.
SegmentationResult run_pipeline(const GrayImage& img, const PipelineParams& p, bool keep_stages = false);

}  // namespace ncseg
