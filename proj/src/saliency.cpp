#include "stsal/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stsal/fft.hpp"
#include "stsal/gaussian.hpp"

namespace stsal {

double default_phase_epsilon(const ComplexVolume& y) {
    double peak = 0.0;
    for (const auto& v : y.values()) peak = std::max(peak, std::abs(v));
    return 1e-12 * std::max(1.0, peak);
}

ComplexVolume phase_normalize(ComplexVolume y, std::optional<double> eps) {
    const double floor = eps ? *eps : default_phase_epsilon(y);
    if (!(floor > 0.0)) throw std::invalid_argument("phase_normalize: eps must be > 0");
    for (auto& v : y.values()) {
        const double mag = std::abs(v);
        v = mag > floor ? v / mag : std::complex<double>{};
    }
    return y;
}

PhaseOnlyResult phase_only_saliency(const Volume& x) {
    ComplexVolume spectrum = forward_dft3(x);
    const double floor = default_phase_epsilon(spectrum);
    std::size_t retained = 0;
    for (const auto& v : spectrum.values()) retained += std::abs(v) > floor ? 1 : 0;

    ComplexVolume recon = inverse_dft3(phase_normalize(std::move(spectrum), floor));
    SaliencyMap z(x.dims());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = std::norm(recon[k]);
    return {std::move(z), retained};
}

SaliencyMap saliency_eq1(const Volume& x, const SmoothSpec& smooth) {
    auto raw = phase_only_saliency(x).map;
    if (smooth.sigma_spatial == 0.0 && smooth.sigma_temporal == 0.0) return raw;
    return gaussian_smooth3(raw, smooth.sigma_spatial, smooth.sigma_temporal);
}

std::vector<std::size_t> window_starts(std::size_t frames, const WindowSpec& win) {
    if (win.length == 0 || win.hop == 0 || win.hop > win.length) {
        throw std::invalid_argument("window: need 1 <= hop <= length");
    }
    if (win.length > frames) {
        throw std::invalid_argument("window length " + std::to_string(win.length) + " exceeds the " +
                                    std::to_string(frames) +
                                    " available frames; run without a window (full-span saliency) instead");
    }
    std::vector<std::size_t> starts;
    std::size_t s = 0;
    for (; s + win.length < frames; s += win.hop) starts.push_back(s);
    const std::size_t last = frames - win.length;
    if (starts.empty() || starts.back() != last) starts.push_back(last);
    return starts;
}

SaliencyMap windowed_saliency(const Volume& x, const WindowSpec& win, const SmoothSpec& smooth) {
    require_valid(x, "windowed_saliency");
    const auto starts = window_starts(x.frames(), win);
    const std::size_t fs = x.dims().frame_size();

    SaliencyMap acc(x.dims(), 0.0);
    std::vector<unsigned> coverage(x.frames(), 0);
    for (const std::size_t s : starts) {
        const SaliencyMap part = saliency_eq1(slice_frames(x, s, win.length), smooth);
        auto dst = acc.values().subspan(s * fs, win.length * fs);
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += part[k];
        for (std::size_t t = s; t < s + win.length; ++t) ++coverage[t];
    }
    for (std::size_t t = 0; t < x.frames(); ++t) {
        const double c = coverage[t];
        for (auto& v : acc.frame(t)) v /= c;
    }
    return acc;
}

SaliencyMap multi_channel_saliency(std::span<const Volume> channels, const std::optional<WindowSpec>& win,
                                   const SmoothSpec& smooth, std::span<const double> weights) {
    if (channels.empty()) throw std::invalid_argument("multi_channel_saliency: no channels");
    if (!weights.empty() && weights.size() != channels.size()) {
        throw std::invalid_argument("multi_channel_saliency: one weight per channel required");
    }
    const Dims d = channels.front().dims();
    for (const auto& c : channels) {
        if (c.dims() != d) {
            throw std::invalid_argument("multi_channel_saliency: channel dims " + to_string(c.dims()) +
                                        " differ from " + to_string(d));
        }
    }
    SaliencyMap total(d, 0.0);
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const SaliencyMap z = win ? windowed_saliency(channels[c], *win, smooth) : saliency_eq1(channels[c], smooth);
        const double w = weights.empty() ? 1.0 : weights[c];
        if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("multi_channel_saliency: weights must be >= 0");
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += w * z[k];
    }
    return total;
}

namespace {

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

std::array<double, 3> srgb_to_lab(double r255, double g255, double b255) {
    for (const double c : {r255, g255, b255}) {
        if (!(c >= 0.0 && c <= 255.0)) throw std::invalid_argument("srgb_to_lab: components must lie in [0, 255]");
    }
    const double r = srgb_to_linear(r255 / 255.0);
    const double g = srgb_to_linear(g255 / 255.0);
    const double b = srgb_to_linear(b255 / 255.0);
    // D65 reference white
    constexpr double xn = 0.95047, yn = 1.0, zn = 1.08883;
    const double x = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b) / xn;
    const double y = (0.2126729 * r + 0.7151522 * g + 0.0721750 * b) / yn;
    const double z = (0.0193339 * r + 0.1191920 * g + 0.9503041 * b) / zn;
    const double fx = lab_f(x), fy = lab_f(y), fz = lab_f(z);
    return {std::clamp(116.0 * fy - 16.0, 0.0, 100.0), 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<double, 3> srgb_pixel_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return srgb_to_lab(r, g, b);
}

std::array<Volume, 3> rgb_to_lab(std::span<const Volume> rgb) {
    if (rgb.size() != 3) throw std::invalid_argument("rgb_to_lab: expected 3 channels (R, G, B), got " + std::to_string(rgb.size()));
    const Dims d = rgb[0].dims();
    if (rgb[1].dims() != d || rgb[2].dims() != d) throw std::invalid_argument("rgb_to_lab: channel dims differ");
    std::array<Volume, 3> lab{Volume(d), Volume(d), Volume(d)};
    for (std::size_t k = 0; k < d.voxels(); ++k) {
        const auto v = srgb_to_lab(rgb[0][k], rgb[1][k], rgb[2][k]);
        for (std::size_t c = 0; c < 3; ++c) lab[c][k] = v[c];
    }
    return lab;
}

std::array<Volume, 3> rgb_to_lab(const RgbVolume& rgb) {
    if (rgb.pixels.size() != rgb.dims.voxels()) throw std::invalid_argument("rgb_to_lab: pixel count mismatch");
    std::array<Volume, 3> lab{Volume(rgb.dims), Volume(rgb.dims), Volume(rgb.dims)};
    for (std::size_t k = 0; k < rgb.pixels.size(); ++k) {
        const auto& p = rgb.pixels[k];
        const auto v = srgb_pixel_to_lab(p[0], p[1], p[2]);
        for (std::size_t c = 0; c < 3; ++c) lab[c][k] = v[c];
    }
    return lab;
}

Volume downsample_spatial(const Volume& x, std::size_t factor) {
    if (factor < 1) throw std::invalid_argument("downsample_spatial: factor must be >= 1");
    if (factor == 1) return x;
    const Dims in = x.dims();
    const Dims out{in.rows / factor, in.cols / factor, in.frames};
    if (out.empty()) {
        throw std::invalid_argument("downsample_spatial: factor " + std::to_string(factor) +
                                    " leaves no pixels for frames of " + to_string(in));
    }
    Volume y(out);
    const double inv_area = 1.0 / static_cast<double>(factor * factor);
    for (std::size_t t = 0; t < out.frames; ++t) {
        for (std::size_t i = 0; i < out.rows; ++i) {
            for (std::size_t j = 0; j < out.cols; ++j) {
                double sum = 0.0;
                for (std::size_t di = 0; di < factor; ++di) {
                    for (std::size_t dj = 0; dj < factor; ++dj) sum += x(i * factor + di, j * factor + dj, t);
                }
                y(i, j, t) = sum * inv_area;
            }
        }
    }
    return y;
}

}  // namespace stsal
