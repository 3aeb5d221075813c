#include "stsal/qft.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "stsal/fft.hpp"
#include "stsal/gaussian.hpp"
#include "stsal/io.hpp"
#include "stsal/random.hpp"

namespace stsal {

using cd = std::complex<double>;

QuaternionImage::QuaternionImage(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), px_(rows * cols) {}

QuaternionImage::QuaternionImage(std::size_t rows, std::size_t cols, std::vector<Quaternion> pixels)
    : rows_(rows), cols_(cols), px_(std::move(pixels)) {
    if (px_.size() != rows * cols) throw std::invalid_argument("QuaternionImage: pixel count mismatch");
}

QuaternionImage QuaternionImage::from_channels(std::span<const Volume> channels) {
    if (channels.size() != 4) throw std::invalid_argument("QuaternionImage: exactly four channels required");
    const Dims d = channels[0].dims();
    if (d.frames != 1) throw std::invalid_argument("QuaternionImage: channels must be single frames");
    for (const auto& c : channels) {
        if (c.dims() != d) throw std::invalid_argument("QuaternionImage: channel dims differ");
        require_valid(c, "QuaternionImage");
    }
    QuaternionImage img(d.rows, d.cols);
    for (std::size_t k = 0; k < img.px_.size(); ++k) {
        img.px_[k] = {channels[0][k], channels[1][k], channels[2][k], channels[3][k]};
    }
    return img;
}

Volume QuaternionImage::channel(std::size_t c) const {
    if (c > 3) throw std::out_of_range("QuaternionImage::channel");
    Volume v(Dims{rows_, cols_, 1});
    for (std::size_t k = 0; k < px_.size(); ++k) {
        const auto& q = px_[k];
        v[k] = c == 0 ? q.w : c == 1 ? q.x : c == 2 ? q.y : q.z;
    }
    return v;
}

Quaternion default_qft_axis() noexcept {
    const double s = 1.0 / std::sqrt(3.0);
    return {0.0, s, s, s};
}

namespace {

struct Vec3 {
    double x, y, z;
};

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Orthonormal frame (mu1, mu2, mu3 = mu1 mu2) of pure unit quaternions.
struct SymplecticBasis {
    Vec3 mu1, mu2, mu3;

    explicit SymplecticBasis(const Quaternion& axis) {
        if (std::abs(axis.w) > 1e-12 || std::abs(axis.norm2() - 1.0) > 1e-9) {
            throw std::invalid_argument("qft2: transform axis must be a unit pure quaternion");
        }
        mu1 = {axis.x, axis.y, axis.z};
        const Vec3 seed = std::abs(mu1.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const double p = dot(seed, mu1);
        Vec3 v{seed.x - p * mu1.x, seed.y - p * mu1.y, seed.z - p * mu1.z};
        const double len = std::sqrt(dot(v, v));
        mu2 = {v.x / len, v.y / len, v.z / len};
        mu3 = {mu1.y * mu2.z - mu1.z * mu2.y, mu1.z * mu2.x - mu1.x * mu2.z, mu1.x * mu2.y - mu1.y * mu2.x};
    }

    void split(const Quaternion& q, cd& s1, cd& s2) const {
        const Vec3 v{q.x, q.y, q.z};
        s1 = {q.w, dot(v, mu1)};
        s2 = {dot(v, mu2), dot(v, mu3)};
    }

    [[nodiscard]] Quaternion join(const cd& s1, const cd& s2) const {
        const double b = s1.imag(), c = s2.real(), d = s2.imag();
        return {s1.real(), b * mu1.x + c * mu2.x + d * mu3.x, b * mu1.y + c * mu2.y + d * mu3.y,
                b * mu1.z + c * mu2.z + d * mu3.z};
    }
};

QuaternionImage transform(const QuaternionImage& img, const Quaternion& axis, FftDirection dir) {
    const SymplecticBasis basis(axis);
    const Dims d{img.rows(), img.cols(), 1};
    if (d.empty()) throw std::invalid_argument("qft2: empty image");
    ComplexVolume p1(d), p2(d);
    for (std::size_t k = 0; k < d.voxels(); ++k) {
        const auto& q = img.pixels()[k];
        if (!std::isfinite(q.w) || !std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z)) {
            throw std::invalid_argument("qft2: non-finite pixel");
        }
        basis.split(q, p1[k], p2[k]);
    }
    transform3_inplace(p1, dir);
    transform3_inplace(p2, dir);
    const double scale = dir == FftDirection::Inverse ? 1.0 / static_cast<double>(d.voxels()) : 1.0;
    QuaternionImage out(d.rows, d.cols);
    for (std::size_t k = 0; k < d.voxels(); ++k) out.pixels()[k] = scale * basis.join(p1[k], p2[k]);
    return out;
}

}  // namespace

QuaternionImage qft2(const QuaternionImage& img, const Quaternion& axis) {
    return transform(img, axis, FftDirection::Forward);
}

QuaternionImage iqft2(const QuaternionImage& spectrum, const Quaternion& axis) {
    return transform(spectrum, axis, FftDirection::Inverse);
}

SaliencyMap qft_saliency(const QuaternionImage& img, double sigma, const Quaternion& axis) {
    QuaternionImage spec = qft2(img, axis);
    double peak = 0.0;
    for (const auto& q : spec.pixels()) peak = std::max(peak, q.abs());
    const double floor = 1e-12 * std::max(1.0, peak);
    for (auto& q : spec.pixels()) {
        const double m = q.abs();
        q = m > floor ? (1.0 / m) * q : Quaternion{};
    }
    const QuaternionImage recon = iqft2(spec, axis);
    SaliencyMap z(Dims{img.rows(), img.cols(), 1});
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = recon.pixels()[k].norm2();
    if (sigma == 0.0) return z;
    return gaussian_smooth3(z, sigma, 0.0);
}

SaliencyMap channel_sum_saliency(const QuaternionImage& img, double sigma) {
    const std::array<Volume, 4> channels{img.channel(0), img.channel(1), img.channel(2), img.channel(3)};
    return multi_channel_saliency(channels, std::nullopt, SmoothSpec{sigma, 0.0});
}

double cross_correlation(const SaliencyMap& a, const SaliencyMap& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("cross_correlation: dims differ");
    if (a.empty()) throw std::invalid_argument("cross_correlation: empty maps");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double da = a[k] - ma, db = b[k] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) throw std::invalid_argument("cross_correlation: zero-variance input");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

namespace {

std::optional<double> try_correlation(const SaliencyMap& a, const SaliencyMap& b) {
    // Relative variance floor: a constant map carries rounding noise only.
    const auto spread = [](const SaliencyMap& z) {
        const auto [lo, hi] = std::minmax_element(z.values().begin(), z.values().end());
        return *hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi));
    };
    if (a.size() < 2 || spread(a) || spread(b)) return std::nullopt;
    return cross_correlation(a, b);
}

}  // namespace

ComparisonResult run_qft_comparison(const ComparisonOptions& opts) {
    if (opts.trials < 1) throw std::invalid_argument("qft comparison: trials must be >= 1");
    if (opts.min_size < 1 || opts.min_size > opts.max_size) {
        throw std::invalid_argument("qft comparison: need 1 <= min_size <= max_size");
    }
    if (!(opts.sigma >= 0.0)) throw std::invalid_argument("qft comparison: sigma must be >= 0");

    std::mt19937_64 rng(opts.seed);
    ComparisonResult result;
    double sum_raw = 0.0, sum_smoothed = 0.0;
    std::size_t used = 0;
    for (std::size_t t = 0; t < opts.trials; ++t) {
        ComparisonTrial trial;
        trial.index = t;
        trial.rows = static_cast<std::size_t>(uniform_between(rng, opts.min_size, opts.max_size));
        trial.cols = static_cast<std::size_t>(uniform_between(rng, opts.min_size, opts.max_size));
        QuaternionImage img(trial.rows, trial.cols);
        for (auto& q : img.pixels()) q = {unit_uniform(rng), unit_uniform(rng), unit_uniform(rng), unit_uniform(rng)};

        trial.corr_raw = try_correlation(qft_saliency(img, 0.0), channel_sum_saliency(img, 0.0));
        trial.corr_smoothed = try_correlation(qft_saliency(img, opts.sigma), channel_sum_saliency(img, opts.sigma));
        if (trial.corr_raw && trial.corr_smoothed) {
            sum_raw += *trial.corr_raw;
            sum_smoothed += *trial.corr_smoothed;
            ++used;
        } else {
            ++result.skipped;
        }
        result.trials.push_back(trial);
    }
    if (used > 0) {
        result.mean_raw = sum_raw / static_cast<double>(used);
        result.mean_smoothed = sum_smoothed / static_cast<double>(used);
    }
    return result;
}

void write_comparison_csv(std::ostream& out, const ComparisonResult& result, const ComparisonOptions& opts) {
    out << "trial,r,c,corr_raw,corr_smoothed\n";
    const auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const auto& t : result.trials) {
        out << t.index << ',' << t.rows << ',' << t.cols << ',' << cell(t.corr_raw) << ',' << cell(t.corr_smoothed)
            << '\n';
    }
    out << "# mean_raw=" << format_double(result.mean_raw) << " mean_smoothed=" << format_double(result.mean_smoothed)
        << " skipped=" << result.skipped << " sigma=" << format_double(opts.sigma) << " seed=" << opts.seed << '\n';
}

}  // namespace stsal
