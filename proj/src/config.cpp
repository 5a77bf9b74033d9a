#include "ncseg/config.hpp"

#include "ncseg/error.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>

namespace ncseg {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const ConfigEntry& e, const std::string& expected) {
    throw InvalidArgument("line " + std::to_string(e.line) + ": " + e.key + " expects " + expected + ", got '" +
                          e.value + "'");
}

template <typename T>
T parse_number(const ConfigEntry& e) {
    T v{};
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) bad_value(e, "a number");
    return v;
}

bool parse_bool(const ConfigEntry& e) {
    static const std::map<std::string, bool> words{{"true", true}, {"on", true},   {"yes", true}, {"1", true},
                                                   {"false", false}, {"off", false}, {"no", false}, {"0", false}};
    const auto it = words.find(e.value);
    if (it == words.end()) bad_value(e, "a boolean");
    return it->second;
}

using Setter = std::function<void(const ConfigEntry&)>;

template <typename T>
Setter number(T& field) {
    return [&field](const ConfigEntry& e) { field = parse_number<T>(e); };
}

Setter boolean(bool& field) {
    return [&field](const ConfigEntry& e) { field = parse_bool(e); };
}

void apply_entries(const std::vector<ConfigEntry>& entries, const std::map<std::string, Setter>& setters) {
    for (const auto& e : entries) {
        const auto it = setters.find(e.key);
        if (it == setters.end()) {
            throw InvalidArgument("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
        }
        it->second(e);
    }
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open " + path.string());
    return in;
}

}  // namespace

std::vector<ConfigEntry> parse_key_values(std::istream& in) {
    std::vector<ConfigEntry> out;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(raw.substr(0, hash));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw InvalidArgument("line " + std::to_string(line) + ": expected key = value");
        ConfigEntry e{line, trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
        if (e.key.empty() || e.value.empty()) {
            throw InvalidArgument("line " + std::to_string(line) + ": empty key or value");
        }
        if (!seen.insert(e.key).second) {
            throw InvalidArgument("line " + std::to_string(line) + ": repeated key '" + e.key + "'");
        }
        out.push_back(std::move(e));
    }
    return out;
}

RunConfig parse_run_config(std::istream& in) {
    RunConfig c;
    PipelineParams& p = c.pipeline;
    BaselineParams& b = c.baselines;
    const std::map<std::string, Setter> setters{
        {"stages.homomorphic", boolean(p.use_homomorphic)},
        {"stages.diffusion", boolean(p.use_diffusion)},
        {"stages.fracgrad", boolean(p.use_frac)},
        {"crop", [&p](const ConfigEntry& e) { p.crop = parse_crop(e.value); }},

        {"homomorphic.gamma_low", number(p.homomorphic.gamma_low)},
        {"homomorphic.gamma_high", number(p.homomorphic.gamma_high)},
        {"homomorphic.d0", number(p.homomorphic.cutoff_d0)},
        {"homomorphic.c", number(p.homomorphic.sharpness_c)},
        {"homomorphic.epsilon", number(p.homomorphic.log_offset)},

        {"diffusion.dt", number(p.diffusion.dt)},
        {"diffusion.iterations", number(p.diffusion.iterations)},
        {"diffusion.a", number(p.diffusion.k_a)},
        {"diffusion.b", number(p.diffusion.k_b)},
        {"diffusion.c", number(p.diffusion.k_c)},
        {"diffusion.l", number(p.diffusion.slope_l)},
        {"diffusion.alpha", number(p.diffusion.w_diff)},
        {"diffusion.beta", number(p.diffusion.w_edge)},
        {"diffusion.sigma", number(p.diffusion.smooth_sigma)},
        {"diffusion.grad_eps", number(p.diffusion.grad_eps)},
        {"diffusion.intensity_scale", number(p.diffusion.intensity_scale)},
        {"diffusion.restrict_dt", boolean(p.diffusion.restrict_dt)},

        {"frac.v", number(p.frac.order_v)},

        {"ncut.sigma_i", number(p.ncut.sigma_i)},
        {"ncut.sigma_x", number(p.ncut.sigma_x)},
        {"ncut.sigma_x_units",
         [&p](const ConfigEntry& e) {
             if (e.value == "diagonal") {
                 p.ncut.sigma_x_units = SpatialUnits::DiagonalFraction;
             } else if (e.value == "pixels") {
                 p.ncut.sigma_x_units = SpatialUnits::Pixels;
             } else {
                 bad_value(e, "'diagonal' or 'pixels'");
             }
         }},
        {"ncut.radius", number(p.ncut.radius_r)},
        {"ncut.threshold", number(p.ncut.ncut_threshold)},
        {"ncut.min_region", number(p.ncut.min_region)},
        {"ncut.max_regions", number(p.ncut.max_regions)},
        {"ncut.n_splits", number(p.ncut.n_splits)},
        {"ncut.eig_tol", number(p.ncut.eig_tol)},
        {"ncut.dense_cutoff", number(p.ncut.dense_cutoff)},
        {"ncut.krylov_basis", number(p.ncut.krylov_basis)},
        {"ncut.max_restarts", number(p.ncut.max_restarts)},

        {"edge.gradient_fraction", number(b.edge.gradient_fraction)},
        {"edge.zero_crossing_fraction", number(b.edge.zero_crossing_fraction)},
        {"edge.log_sigma", number(b.edge.log_sigma)},
        {"edge.canny_sigma", number(b.edge.canny_sigma)},
        {"edge.canny_high", number(b.edge.canny_high)},
        {"edge.canny_low_ratio", number(b.edge.canny_low_ratio)},
        {"splitmerge.max_std", number(b.split_max_std)},
        {"splitmerge.min_block", number(b.split_min_block)},
        {"watershed.gradient", boolean(b.watershed_gradient)},
    };
    apply_entries(parse_key_values(in), setters);
    p.validate();
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_run_config(in);
}

PhantomSpec parse_phantom_spec(std::istream& in) {
    PhantomSpec s;
    const std::map<std::string, Setter> setters{
        {"size", number(s.size)},
        {"background", number(s.background)},
        {"nodule.cx", number(s.nodule.cx)},
        {"nodule.cy", number(s.nodule.cy)},
        {"nodule.ax", number(s.nodule.ax)},
        {"nodule.ay", number(s.nodule.ay)},
        {"nodule.level", number(s.nodule.level)},
        {"trachea.cx", number(s.trachea.cx)},
        {"trachea.cy", number(s.trachea.cy)},
        {"trachea.radius", number(s.trachea.radius)},
        {"trachea.level", number(s.trachea.level)},
        {"speckle_sigma", number(s.speckle_sigma)},
        {"seed", number(s.seed)},
    };
    apply_entries(parse_key_values(in), setters);
    s.validate();
    return s;
}

PhantomSpec load_phantom_spec(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_phantom_spec(in);
}

}  // namespace ncseg
