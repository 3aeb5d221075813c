#include "stsal/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stsal {

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_kernel: sigma must be finite and >= 0");
    }
    if (sigma == 0.0) return {1.0};
    const auto radius = static_cast<long long>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (long long k = -radius; k <= radius; ++k) {
        const double v = std::exp(-0.5 * static_cast<double>(k * k) / (sigma * sigma));
        taps[static_cast<std::size_t>(k + radius)] = v;
        sum += v;
    }
    for (auto& v : taps) v /= sum;
    return taps;
}

std::size_t reflect_index(long long i, std::size_t n) noexcept {
    const auto period = static_cast<long long>(2 * n);
    long long r = i % period;
    if (r < 0) r += period;
    if (r >= static_cast<long long>(n)) r = period - 1 - r;
    return static_cast<std::size_t>(r);
}

namespace {

// Convolves every line along one axis (see transform_axis in fft.cpp for the layout).
void smooth_axis(std::vector<double>& data, std::size_t outer, std::size_t length, std::size_t inner,
                 const std::vector<double>& taps) {
    if (taps.size() == 1) return;
    const auto radius = static_cast<long long>(taps.size() / 2);
    const std::size_t padded_len = length + 2 * static_cast<std::size_t>(radius);
    constexpr std::size_t kBlock = 16;
    const std::size_t block = std::min(kBlock, inner);
    std::vector<double> padded(block * padded_len);
    for (std::size_t o = 0; o < outer; ++o) {
        double* group = data.data() + o * length * inner;
        for (std::size_t c0 = 0; c0 < inner; c0 += block) {
            const std::size_t width = std::min(block, inner - c0);
            for (long long k = -radius; k < static_cast<long long>(length) + radius; ++k) {
                const double* src = group + reflect_index(k, length) * inner + c0;
                const auto pk = static_cast<std::size_t>(k + radius);
                for (std::size_t b = 0; b < width; ++b) padded[b * padded_len + pk] = src[b];
            }
            for (std::size_t k = 0; k < length; ++k) {
                double* dst = group + k * inner + c0;
                for (std::size_t b = 0; b < width; ++b) {
                    const double* window = padded.data() + b * padded_len + k;
                    double acc = 0.0;
                    for (std::size_t q = 0; q < taps.size(); ++q) acc += taps[q] * window[q];
                    dst[b] = acc;
                }
            }
        }
    }
}

std::vector<double> smooth_values(const Dims& d, std::vector<double> data, double sigma_spatial,
                                  double sigma_temporal) {
    if (sigma_spatial < 0.0 || sigma_temporal < 0.0) {
        throw std::invalid_argument("gaussian_smooth3: negative sigma");
    }
    const auto spatial = gaussian_kernel(sigma_spatial);
    const auto temporal = gaussian_kernel(sigma_temporal);
    smooth_axis(data, d.rows * d.frames, d.cols, 1, spatial);
    smooth_axis(data, d.frames, d.rows, d.cols, spatial);
    smooth_axis(data, 1, d.frames, d.frame_size(), temporal);
    return data;
}

}  // namespace

Volume gaussian_smooth3(const Volume& x, double sigma_spatial, double sigma_temporal) {
    return Volume(x.dims(), smooth_values(x.dims(), x.storage(), sigma_spatial, sigma_temporal));
}

SaliencyMap gaussian_smooth3(const SaliencyMap& z, double sigma_spatial, double sigma_temporal) {
    return SaliencyMap(z.dims(), smooth_values(z.dims(), z.storage(), sigma_spatial, sigma_temporal));
}

}  // namespace stsal
