#include "ncseg/baselines.hpp"
#include "ncseg/config.hpp"
#include "ncseg/error.hpp"
#include "ncseg/image.hpp"
#include "ncseg/metrics.hpp"
#include "ncseg/overlay.hpp"
#include "ncseg/phantom.hpp"
#include "ncseg/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace ncseg;

namespace {

struct RunArgs {
    std::string input;
    std::string config;
    std::string method = "ncut";
    std::string labels;
    std::string overlay;
    std::string crop;
    std::string dump_dir;
    bool watershed_gradient = false;
};

LabelMap edge_labels(const EdgeMap& edges) {
    LabelMap out(edges.width, edges.height, 1);
    for (std::size_t i = 0; i < edges.edge.size(); ++i) {
        if (edges.edge[i]) out.labels[i] = 2;
    }
    return out;
}

void dump_stages(const SegmentationResult& result, const fs::path& dir) {
    fs::create_directories(dir);
    int k = 0;
    for (const auto& s : result.stages) {
        char prefix[16];
        std::snprintf(prefix, sizeof prefix, "%02d_", ++k);
        save_pgm(s.image, dir / (prefix + s.stage + ".pgm"));
    }
}

int run(const RunArgs& a) {
    RunConfig cfg = a.config.empty() ? RunConfig{} : load_run_config(a.config);
    if (!a.crop.empty()) cfg.pipeline.crop = parse_crop(a.crop);
    if (a.watershed_gradient) cfg.baselines.watershed_gradient = true;

    const GrayImage input = load_pgm(a.input);
    GrayImage base = input;
    if (cfg.pipeline.crop) {
        const CropRect c = *cfg.pipeline.crop;
        try {
            base = crop(input, c.x, c.y, c.width, c.height);
        } catch (const InvalidArgument& e) {
            throw StageError("crop", e.what());
        }
    }

    LabelMap labels;
    if (a.method == "ncut") {
        const SegmentationResult result = run_pipeline(input, cfg.pipeline, !a.dump_dir.empty());
        labels = result.labels;
        for (const auto& s : result.splits) {
            std::printf("split %zu %zu %zu %.9g\n", s.region_size, s.size_a, s.size_b, s.ncut);
        }
        for (const auto& t : result.timings) std::printf("time %s %.6f\n", t.stage.c_str(), t.seconds);
        if (!a.dump_dir.empty()) dump_stages(result, a.dump_dir);
    } else if (a.method == "otsu") {
        const OtsuResult r = otsu_threshold(base);
        std::printf("threshold %d\n", r.threshold);
        labels = r.labels();
    } else if (a.method == "watershed") {
        labels = watershed(cfg.baselines.watershed_gradient ? sobel_magnitude(base) : base);
    } else if (a.method == "splitmerge") {
        labels = split_merge(normalize(base), cfg.baselines.split_max_std, cfg.baselines.split_min_block);
    } else if (a.method.rfind("edge:", 0) == 0) {
        const EdgeOperator op = parse_edge_operator(a.method.substr(5));
        labels = edge_labels(edge_detect(normalize(base), op, cfg.baselines.edge));
    } else {
        throw InvalidArgument("unknown method '" + a.method + "'");
    }

    std::printf("regions %d\n", labels.max_label());
    if (!a.labels.empty()) save_labels(labels, a.labels);
    if (!a.overlay.empty()) write_png(a.overlay, overlay(base, labels));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grayscale segmentation with normalized cuts and classical baselines"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Segment an image");
    run_cmd->add_option("--input", run_args.input, "Input PGM")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--config", run_args.config, "key = value parameter file");
    run_cmd->add_option("--method", run_args.method, "ncut|otsu|watershed|edge:<op>|splitmerge");
    run_cmd->add_option("--labels", run_args.labels, "Label map output (PGM)");
    run_cmd->add_option("--overlay", run_args.overlay, "Boundary overlay output (PNG)");
    run_cmd->add_option("--crop", run_args.crop, "X,Y,W,H");
    run_cmd->add_option("--dump-stages", run_args.dump_dir, "Directory for intermediate images");
    run_cmd->add_flag("--watershed-gradient", run_args.watershed_gradient, "Flood the Sobel magnitude");

    std::string spec_path;
    std::optional<std::uint64_t> seed;
    std::string phantom_out;
    std::string truth_out;
    auto* phantom_cmd = app.add_subcommand("phantom", "Generate a synthetic speckled phantom");
    phantom_cmd->add_option("--spec", spec_path, "Phantom spec file");
    phantom_cmd->add_option("--seed", seed, "PRNG seed (overrides the spec)");
    phantom_cmd->add_option("--out", phantom_out, "Image output (PGM)")->required();
    phantom_cmd->add_option("--truth", truth_out, "Ground-truth labels (PGM)");

    std::string pred_path;
    std::string truth_path;
    auto* eval_cmd = app.add_subcommand("eval", "Per-region Dice against ground truth");
    eval_cmd->add_option("--pred", pred_path, "Predicted labels")->required();
    eval_cmd->add_option("--truth", truth_path, "Ground-truth labels")->required();

    std::string hist_input;
    auto* hist_cmd = app.add_subcommand("hist", "Print the 256-bin gray-level histogram");
    hist_cmd->add_option("--input", hist_input, "Input PGM")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return run(run_args);
        if (*phantom_cmd) {
            PhantomSpec spec = spec_path.empty() ? PhantomSpec{} : load_phantom_spec(spec_path);
            if (seed) spec.seed = *seed;
            const auto [img, truth] = generate_phantom(spec);
            save_pgm(img, phantom_out);
            if (!truth_out.empty()) save_labels(truth, truth_out);
        } else if (*eval_cmd) {
            for (const auto& s : dice(load_labels(pred_path), load_labels(truth_path))) {
                std::printf("%d %d %.6f\n", s.truth_label, s.matched_label, s.dice);
            }
        } else if (*hist_cmd) {
            const Histogram h = histogram(load_pgm(hist_input));
            for (std::size_t k = 0; k < h.bins.size(); ++k) {
                std::printf("%zu %llu\n", k, static_cast<unsigned long long>(h.bins[k]));
            }
        }
    } catch (const StageError& e) {
        std::cerr << "seg: stage " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "seg: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
