// Independent reference implementations used only by the tests. Nothing here
// calls into the library's transform, smoothing or detection code.
#pragma once

#include <cmath>
#include <complex>
#include <array>
#include <cstdint>
#include <tuple>
#include <utility>
#include <numbers>
#include <random>
#include <vector>

#include "stsal/stsp.hpp"
#include "stsal/volume.hpp"

namespace oracle {

using stsal::ComplexVolume;
using stsal::Dims;
using stsal::Volume;
using cd = std::complex<double>;

inline Volume random_volume(const Dims& d, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Volume v(d);
    for (auto& x : v.values()) x = u(rng);
    return v;
}

inline Dims random_dims(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> u(lo, hi);
    return {u(rng), u(rng), u(rng)};
}

/// Direct triple sum. sign = -1 forward, +1 inverse (unnormalized).
inline ComplexVolume naive_dft3(const ComplexVolume& x, double sign) {
    const Dims d = x.dims();
    ComplexVolume y(d);
    for (std::size_t w = 0; w < d.frames; ++w)
        for (std::size_t u = 0; u < d.rows; ++u)
            for (std::size_t v = 0; v < d.cols; ++v) {
                cd acc{};
                for (std::size_t t = 0; t < d.frames; ++t)
                    for (std::size_t i = 0; i < d.rows; ++i)
                        for (std::size_t j = 0; j < d.cols; ++j) {
                            const double phase = 2.0 * std::numbers::pi *
                                                 (static_cast<double>((u * i) % d.rows) / d.rows +
                                                  static_cast<double>((v * j) % d.cols) / d.cols +
                                                  static_cast<double>((w * t) % d.frames) / d.frames);
                            acc += x(i, j, t) * cd(std::cos(phase), sign * std::sin(phase));
                        }
                y(u, v, w) = acc;
            }
    return y;
}

inline ComplexVolume to_complex(const Volume& x) {
    ComplexVolume y(x.dims());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k];
    return y;
}

inline double max_abs_diff(const ComplexVolume& a, const ComplexVolume& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

template <typename G>
double max_abs_diff_real(const G& a, const G& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

/// Mirror an out-of-range index back into [0, n) by repeated edge reflection.
inline long long mirror(long long i, long long n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - i - 1;
    }
    return i;
}

inline std::vector<double> gaussian_taps(double sigma) {
    if (sigma == 0.0) return {1.0};
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> g;
    double s = 0.0;
    for (int k = -r; k <= r; ++k) {
        g.push_back(std::exp(-(k * k) / (2.0 * sigma * sigma)));
        s += g.back();
    }
    for (auto& v : g) v /= s;
    return g;
}

/// Full (non-separable) 3D convolution with the product kernel.
inline Volume naive_smooth3(const Volume& x, double ss, double st) {
    const auto gs = gaussian_taps(ss);
    const auto gt = gaussian_taps(st);
    const long long rs = static_cast<long long>(gs.size() / 2), rt = static_cast<long long>(gt.size() / 2);
    const Dims d = x.dims();
    Volume y(d);
    for (long long t = 0; t < (long long)d.frames; ++t)
        for (long long i = 0; i < (long long)d.rows; ++i)
            for (long long j = 0; j < (long long)d.cols; ++j) {
                double acc = 0.0;
                for (long long a = -rt; a <= rt; ++a)
                    for (long long b = -rs; b <= rs; ++b)
                        for (long long c = -rs; c <= rs; ++c) {
                            const double w = gt[a + rt] * gs[b + rs] * gs[c + rs];
                            acc += w * x(mirror(i + b, d.rows), mirror(j + c, d.cols), mirror(t + a, d.frames));
                        }
                y(i, j, t) = acc;
            }
    return y;
}

/// Exhaustive NMS: every voxel checked against its whole clipped neighborhood.
inline std::vector<stsal::InterestPoint> brute_nms(const stsal::SaliencyMap& z, double rho, long long rx, long long ry,
                                                   long long rt) {
    const Dims d = z.dims();
    std::vector<stsal::InterestPoint> out;
    for (long long t = 0; t < (long long)d.frames; ++t)
        for (long long y = 0; y < (long long)d.rows; ++y)
            for (long long x = 0; x < (long long)d.cols; ++x) {
                const double v = z(y, x, t);
                if (v < rho) continue;
                bool keep = true;
                for (long long a = -rt; a <= rt && keep; ++a)
                    for (long long b = -ry; b <= ry && keep; ++b)
                        for (long long c = -rx; c <= rx && keep; ++c) {
                            const long long tt = t + a, yy = y + b, xx = x + c;
                            if (tt < 0 || yy < 0 || xx < 0 || tt >= (long long)d.frames || yy >= (long long)d.rows ||
                                xx >= (long long)d.cols)
                                continue;
                            const double w = z(yy, xx, tt);
                            if (w > v) keep = false;
                            const bool earlier = std::tuple(tt, yy, xx) < std::tuple(t, y, x);
                            if (w == v && earlier) keep = false;
                        }
                if (keep) out.push_back({(std::size_t)x, (std::size_t)y, (std::size_t)t, v});
            }
    return out;
}

/// Per-voxel accumulation of the subblock orientation histogram.
inline std::array<double, 72> naive_descriptor(const Volume& v, long long px, long long py, long long pt,
                                               long long sigma, long long tau) {
    const Dims d = v.dims();
    const auto clip = [](long long lo, long long hi, long long n) {
        return std::pair{std::max(0LL, lo), std::min(n, hi)};
    };
    const auto [x0, x1] = clip(px - sigma / 2, px - sigma / 2 + sigma, (long long)d.cols);
    const auto [y0, y1] = clip(py - sigma / 2, py - sigma / 2 + sigma, (long long)d.rows);
    const auto [t0, t1] = clip(pt - tau / 2, pt - tau / 2 + tau, (long long)d.frames);
    const auto block = [](long long off, long long n, long long parts) {
        const long long w = n / parts;
        for (long long b = parts - 1; b > 0; --b)
            if (w > 0 && off >= b * w) return b;
        return w == 0 ? parts - 1 : 0LL;
    };
    const auto grad = [&](long long i, long long lo, long long hi, auto&& f) {
        if (i == lo) return f(lo + 1) - f(lo);
        if (i == hi - 1) return f(hi - 1) - f(hi - 2);
        return (f(i + 1) - f(i - 1)) / 2.0;
    };
    std::array<double, 72> h{};
    for (long long t = t0; t < t1; ++t)
        for (long long y = y0; y < y1; ++y)
            for (long long x = x0; x < x1; ++x) {
                const double gx = grad(x, x0, x1, [&](long long q) { return v(y, q, t); });
                const double gy = grad(y, y0, y1, [&](long long q) { return v(q, x, t); });
                const double gt = grad(t, t0, t1, [&](long long q) { return v(y, x, q); });
                const double m = std::sqrt(gx * gx + gy * gy + gt * gt);
                if (m == 0.0) continue;
                const double ang = std::atan2(gy, gx);
                int bin = ang < -std::numbers::pi / 2 ? 0 : ang < 0 ? 1 : ang < std::numbers::pi / 2 ? 2 : 3;
                const long long s = (block(t - t0, t1 - t0, 2) * 9 + block(y - y0, y1 - y0, 3) * 3 +
                                     block(x - x0, x1 - x0, 3));
                h[s * 4 + bin] += m;
            }
    for (int s = 0; s < 18; ++s) {
        double sum = h[4 * s] + h[4 * s + 1] + h[4 * s + 2] + h[4 * s + 3];
        if (sum > 0)
            for (int q = 0; q < 4; ++q) h[4 * s + q] /= sum;
    }
    return h;
}

}  // namespace oracle
