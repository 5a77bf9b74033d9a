#include "ncseg/image.hpp"

#include "ncseg/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>

namespace ncseg {

namespace {

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw InvalidArgument("image dimensions must be positive, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
}

int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - i;
}

int border_index(int i, int n, Border border) {
    if (border == Border::Replicate) return std::clamp(i, 0, n - 1);
    return reflect_index(i, n);
}

// Minimal tokenizer for the PGM header: whitespace separated, '#' comments
// run to end of line.
class PgmHeaderReader {
public:
    explicit PgmHeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    std::string token() {
        skip_space_and_comments();
        std::string out;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
            out.push_back(static_cast<char>(bytes_[pos_++]));
        }
        if (out.empty()) throw MalformedHeader("PGM header ends prematurely");
        return out;
    }

    int integer(const char* what) {
        const std::string t = token();
        if (!std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw MalformedHeader(std::string("PGM ") + what + " is not a number: '" + t + "'");
        }
        if (t.size() > 9) throw MalformedHeader(std::string("PGM ") + what + " too large");
        return std::stoi(t);
    }

    // Exactly one whitespace byte separates maxval from binary data.
    void consume_single_space() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw MalformedHeader("PGM header not terminated by whitespace");
        }
        ++pos_;
    }

    std::size_t position() const { return pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 0;
};

struct PgmData {
    int width = 0;
    int height = 0;
    std::vector<int> samples;
};

PgmData read_pgm_samples(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound("cannot open '" + path.string() + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    PgmHeaderReader reader(bytes);
    const std::string magic = reader.token();
    if (magic != "P2" && magic != "P5") {
        throw MalformedHeader("unsupported PGM magic '" + magic + "'");
    }
    PgmData out;
    out.width = reader.integer("width");
    out.height = reader.integer("height");
    const int maxval = reader.integer("maxval");
    if (out.width <= 0 || out.height <= 0) throw MalformedHeader("PGM dimensions must be positive");
    if (maxval <= 0 || maxval > 255) {
        throw MalformedHeader("PGM maxval must be in 1..255, got " + std::to_string(maxval));
    }
    const std::size_t count = static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height);
    out.samples.reserve(count);

    if (magic == "P5") {
        reader.consume_single_space();
        const std::size_t start = reader.position();
        const std::size_t available = bytes.size() - start;
        if (available < count) {
            throw TruncatedPayload("PGM payload has " + std::to_string(available) + " of " +
                                   std::to_string(count) + " samples");
        }
        for (std::size_t i = 0; i < count; ++i) out.samples.push_back(bytes[start + i]);
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            std::string t;
            try {
                t = reader.token();
            } catch (const MalformedHeader&) {
                throw TruncatedPayload("PGM payload has " + std::to_string(i) + " of " +
                                       std::to_string(count) + " samples");
            }
            if (!std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
                t.size() > 3) {
                throw MalformedHeader("bad ASCII PGM sample '" + t + "'");
            }
            out.samples.push_back(std::stoi(t));
        }
    }
    for (int s : out.samples) {
        if (s > maxval) throw MalformedHeader("PGM sample exceeds maxval");
    }
    return out;
}

void write_p5(int width, int height, const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw WriteError("cannot open '" + path.string() + "' for writing");
    out << "P5\n" << width << ' ' << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw WriteError("failed writing '" + path.string() + "'");
}

}  // namespace

GrayImage::GrayImage(int width, int height, ValueRange range, double fill)
    : width_(width), height_(height), range_(range) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    validate();
}

GrayImage::GrayImage(int width, int height, std::vector<double> data, ValueRange range)
    : width_(width), height_(height), data_(std::move(data)), range_(range) {
    check_dims(width, height);
    validate();
}

double GrayImage::clamped(int x, int y) const {
    return (*this)(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

void GrayImage::validate() const {
    if (data_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
        throw InvalidArgument("image data length does not match width x height");
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw InvalidArgument("image contains a non-finite sample");
        if (range_ == ValueRange::Normalized && (v < 0.0 || v > 1.0)) {
            throw InvalidArgument("normalized image sample outside [0,1]");
        }
    }
}

GrayImage GrayImage::with_range(ValueRange range) const {
    GrayImage out = *this;
    out.range_ = range;
    out.validate();
    return out;
}

double Kernel::sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

Kernel Kernel::from_rows(int radius, std::vector<double> weights) {
    if (radius < 0) throw InvalidArgument("kernel radius must be non-negative");
    const auto side = static_cast<std::size_t>(2 * radius + 1);
    if (weights.size() != side * side) throw InvalidArgument("kernel weight count must be (2r+1)^2");
    return Kernel{radius, std::move(weights)};
}

Kernel Kernel::identity() { return Kernel{0, {1.0}}; }

LabelMap::LabelMap(int w, int h, int fill) : width(w), height(h) {
    check_dims(w, h);
    labels.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

int LabelMap::max_label() const {
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
}

bool LabelMap::contiguous() const {
    if (labels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) return false;
    const int k = max_label();
    std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
    for (int l : labels) {
        if (l < 0) return false;
        seen[static_cast<std::size_t>(l)] = true;
    }
    for (int l = 1; l <= k; ++l) {
        if (!seen[static_cast<std::size_t>(l)]) return false;
    }
    return true;
}

LabelMap relabel_dense(const LabelMap& map) {
    LabelMap out = map;
    std::vector<int> remap(static_cast<std::size_t>(map.max_label()) + 1, 0);
    int next = 0;
    for (auto& l : out.labels) {
        if (l <= 0) {
            l = 0;
            continue;
        }
        auto& r = remap[static_cast<std::size_t>(l)];
        if (r == 0) r = ++next;
        l = r;
    }
    return out;
}

GrayImage load_pgm(const std::filesystem::path& path) {
    PgmData pgm = read_pgm_samples(path);
    std::vector<double> data(pgm.samples.begin(), pgm.samples.end());
    return GrayImage(pgm.width, pgm.height, std::move(data), ValueRange::Raw);
}

std::uint8_t quantize(double sample, ValueRange range) {
    const double scaled = range == ValueRange::Normalized ? sample * 255.0 : sample;
    const double rounded = std::floor(scaled + 0.5);
    return static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes(img.size());
    const auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) bytes[i] = quantize(px[i], img.range());
    write_p5(img.width(), img.height(), bytes, path);
}

GrayImage normalize(const GrayImage& img) {
    if (img.normalized()) throw InvalidArgument("normalize: image is already normalized");
    std::vector<double> data(img.pixels().begin(), img.pixels().end());
    for (double& v : data) v /= 255.0;
    return GrayImage(img.width(), img.height(), std::move(data), ValueRange::Normalized);
}

Histogram histogram(const GrayImage& img) {
    if (img.normalized()) throw InvalidArgument("histogram: expects a raw-range image");
    Histogram h;
    for (double v : img.pixels()) {
        ++h.bins[quantize(v, ValueRange::Raw)];
        ++h.total;
    }
    return h;
}

GrayImage convolve(const GrayImage& img, const Kernel& k, Border border) {
    const int w = img.width();
    const int h = img.height();
    const int r = k.radius;
    std::vector<double> out(img.size());
    // Precomputed border-extended column/row indices.
    std::vector<int> xs(static_cast<std::size_t>(w + 2 * r));
    std::vector<int> ys(static_cast<std::size_t>(h + 2 * r));
    for (int i = -r; i < w + r; ++i) xs[static_cast<std::size_t>(i + r)] = border_index(i, w, border);
    for (int i = -r; i < h + r; ++i) ys[static_cast<std::size_t>(i + r)] = border_index(i, h, border);

    const auto src = img.pixels();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const std::size_t row = static_cast<std::size_t>(ys[static_cast<std::size_t>(y + dy + r)]) * w;
                for (int dx = -r; dx <= r; ++dx) {
                    acc += k.at(dx, dy) * src[row + static_cast<std::size_t>(xs[static_cast<std::size_t>(x + dx + r)])];
                }
            }
            out[img.index(x, y)] = acc;
        }
    }
    return GrayImage(w, h, std::move(out), ValueRange::Raw);
}

Kernel gaussian_kernel(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("gaussian_kernel: sigma must be > 0");
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    const int side = 2 * r + 1;
    std::vector<double> wts(static_cast<std::size_t>(side * side));
    double total = 0.0;
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            wts[static_cast<std::size_t>((dy + r) * side + (dx + r))] = v;
            total += v;
        }
    }
    for (double& v : wts) v /= total;
    return Kernel{r, std::move(wts)};
}

GrayImage rescale_unit(const GrayImage& img) {
    const auto px = img.pixels();
    const auto [lo_it, hi_it] = std::minmax_element(px.begin(), px.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double span = hi - lo;
    std::vector<double> out(px.size(), 0.5);
    if (span > 1e-10 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)))) {
        for (std::size_t i = 0; i < px.size(); ++i) out[i] = std::clamp((px[i] - lo) / span, 0.0, 1.0);
    }
    return GrayImage(img.width(), img.height(), std::move(out), ValueRange::Normalized);
}

GrayImage crop(const GrayImage& img, int x, int y, int w, int h) {
    if (w <= 0 || h <= 0 || x < 0 || y < 0 || x + w > img.width() || y + h > img.height()) {
        throw InvalidArgument("crop rectangle " + std::to_string(x) + "," + std::to_string(y) + "," +
                              std::to_string(w) + "," + std::to_string(h) + " outside " +
                              std::to_string(img.width()) + "x" + std::to_string(img.height()) + " image");
    }
    GrayImage out(w, h, img.range());
    for (int yy = 0; yy < h; ++yy) {
        for (int xx = 0; xx < w; ++xx) out(xx, yy) = img(x + xx, y + yy);
    }
    return out;
}

LabelMap load_labels(const std::filesystem::path& path) {
    PgmData pgm = read_pgm_samples(path);
    LabelMap out(pgm.width, pgm.height);
    out.labels = std::move(pgm.samples);
    return out;
}

void save_labels(const LabelMap& labels, const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes(labels.labels.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const int l = labels.labels[i];
        if (l < 0 || l > 255) throw InvalidArgument("label " + std::to_string(l) + " does not fit a PGM byte");
        bytes[i] = static_cast<std::uint8_t>(l);
    }
    write_p5(labels.width, labels.height, bytes, path);
}

}  // namespace ncseg
