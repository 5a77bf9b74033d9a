#pragma once

#include "ncseg/baselines.hpp"
#include "ncseg/phantom.hpp"
#include "ncseg/pipeline.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace ncseg {

/// Settings of the comparison methods that are not part of the pipeline.
struct BaselineParams {
    EdgeParams edge;
    double split_max_std = 0.08;
    int split_min_block = 4;
    /// Flood the Sobel magnitude instead of the raw intensities.
    bool watershed_gradient = false;
};

struct RunConfig {
    PipelineParams pipeline;
    BaselineParams baselines;
};

struct ConfigEntry {
    int line = 0;
    std::string key;
    std::string value;
};

/// Reads `key = value` lines. '#' starts a comment, blank lines are skipped,
/// keys and values are trimmed. Malformed lines and repeated keys throw.
std::vector<ConfigEntry> parse_key_values(std::istream& in);

/// Keys are dotted, e.g. `diffusion.dt = 0.1`, `stages.diffusion = off`,
/// `crop = 10,10,128,128`. Unknown keys throw InvalidArgument.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

/// Keys: size, background, nodule.{cx,cy,ax,ay,level},
/// trachea.{cx,cy,radius,level}, speckle_sigma, seed.
PhantomSpec parse_phantom_spec(std::istream& in);
PhantomSpec load_phantom_spec(const std::filesystem::path& path);

}  // namespace ncseg
