#include "stsal/stsp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "stsal/io.hpp"

namespace stsal {

void NmsConfig::validate() const {
    if (rx < 1 || ry < 1 || rt < 1) throw std::invalid_argument("NmsConfig: neighborhood extents must be >= 1");
    if (rho && !std::isfinite(*rho)) throw std::invalid_argument("NmsConfig: rho must be finite");
    if (!rho && !(rho_mult >= 0.0 && std::isfinite(rho_mult))) {
        throw std::invalid_argument("NmsConfig: rho_mult must be finite and >= 0");
    }
}

double nms_threshold(const SaliencyMap& z, const NmsConfig& cfg) {
    if (cfg.rho) return *cfg.rho;
    double sum = 0.0;
    for (const double v : z.values()) sum += v;
    return cfg.rho_mult * (sum / static_cast<double>(z.size()));
}

namespace {

// Running max over [k - r, k + r] clipped, along one axis (layout as in fft.cpp).
void max_filter_axis(std::vector<double>& data, std::size_t outer, std::size_t length, std::size_t inner,
                     std::size_t r) {
    std::vector<double> line(length);
    for (std::size_t o = 0; o < outer; ++o) {
        double* group = data.data() + o * length * inner;
        for (std::size_t c = 0; c < inner; ++c) {
            for (std::size_t k = 0; k < length; ++k) line[k] = group[k * inner + c];
            for (std::size_t k = 0; k < length; ++k) {
                const std::size_t lo = k >= r ? k - r : 0;
                const std::size_t hi = std::min(length - 1, k + r);
                double m = line[lo];
                for (std::size_t q = lo + 1; q <= hi; ++q) m = std::max(m, line[q]);
                group[k * inner + c] = m;
            }
        }
    }
}

std::size_t lower(std::size_t v, std::size_t r) { return v >= r ? v - r : 0; }

}  // namespace

std::vector<InterestPoint> detect_points(const SaliencyMap& z, const NmsConfig& cfg) {
    cfg.validate();
    require_valid(z, "detect_points");
    const Dims d = z.dims();
    const double rho = nms_threshold(z, cfg);

    std::vector<double> nmax = z.storage();
    max_filter_axis(nmax, d.rows * d.frames, d.cols, 1, cfg.rx);
    max_filter_axis(nmax, d.frames, d.rows, d.cols, cfg.ry);
    max_filter_axis(nmax, 1, d.frames, d.frame_size(), cfg.rt);

    std::vector<InterestPoint> points;
    for (std::size_t t = 0; t < d.frames; ++t) {
        for (std::size_t y = 0; y < d.rows; ++y) {
            for (std::size_t x = 0; x < d.cols; ++x) {
                const std::size_t n = z.index(y, x, t);
                const double v = z[n];
                if (v < rho || v < nmax[n]) continue;
                // Tie break: an equal value earlier in (t, y, x) order wins.
                bool beaten = false;
                const std::size_t t0 = lower(t, cfg.rt), y0 = lower(y, cfg.ry), x0 = lower(x, cfg.rx);
                const std::size_t t1 = std::min(d.frames - 1, t + cfg.rt);
                const std::size_t y1 = std::min(d.rows - 1, y + cfg.ry);
                const std::size_t x1 = std::min(d.cols - 1, x + cfg.rx);
                for (std::size_t tt = t0; tt <= t1 && !beaten; ++tt) {
                    for (std::size_t yy = y0; yy <= y1 && !beaten; ++yy) {
                        for (std::size_t xx = x0; xx <= x1; ++xx) {
                            const std::size_t m = z.index(yy, xx, tt);
                            if (m >= n) break;
                            if (z[m] == v) {
                                beaten = true;
                                break;
                            }
                        }
                    }
                }
                if (!beaten) points.push_back({x, y, t, v});
            }
        }
    }
    return points;
}

Box descriptor_box(const Dims& dims, const InterestPoint& p, const DescriptorScale& scale) {
    const auto clip = [](std::size_t center, std::size_t side, std::size_t limit) {
        const long long begin = static_cast<long long>(center) - static_cast<long long>(side / 2);
        const long long end = begin + static_cast<long long>(side);
        return std::pair<std::size_t, std::size_t>{
            static_cast<std::size_t>(std::clamp<long long>(begin, 0, static_cast<long long>(limit))),
            static_cast<std::size_t>(std::clamp<long long>(end, 0, static_cast<long long>(limit)))};
    };
    const auto [x0, x1] = clip(p.x, scale.sigma, dims.cols);
    const auto [y0, y1] = clip(p.y, scale.sigma, dims.rows);
    const auto [t0, t1] = clip(p.t, scale.tau, dims.frames);
    return {x0, x1, y0, y1, t0, t1};
}

bool degenerate(const Box& b) noexcept {
    return b.x1 < b.x0 + 2 || b.y1 < b.y0 + 2 || b.t1 < b.t0 + 2;
}

std::size_t subblock_of(std::size_t offset, std::size_t extent, std::size_t parts) noexcept {
    const std::size_t base = extent / parts;
    if (base == 0) return parts - 1;
    return std::min(offset / base, parts - 1);
}

std::size_t orientation_bin(double gy, double gx) noexcept {
    // Quadrant of atan2(gy, gx) decided on signs alone, so no angle rounds across
    // a bin edge. atan2(0, 0) = 0 and atan2(0, -x) = pi.
    if (gy > 0.0) return gx > 0.0 ? 2 : 3;
    if (gy < 0.0) return gx >= 0.0 ? 1 : 0;
    return gx >= 0.0 ? 2 : 3;
}

Descriptor describe(const Volume& x, const InterestPoint& p, const DescriptorScale& scale) {
    require_valid(x, "describe");
    const Box b = descriptor_box(x.dims(), p, scale);
    if (degenerate(b)) throw std::invalid_argument("describe: clipped descriptor box is thinner than 2 voxels");

    const std::size_t nx = b.x1 - b.x0, ny = b.y1 - b.y0, nt = b.t1 - b.t0;
    const auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return x(b.y0 + j, b.x0 + i, b.t0 + k); };
    // Central difference inside the box, one-sided at the faces.
    const auto diff = [](std::size_t k, std::size_t n, auto&& sample) {
        if (k == 0) return sample(1) - sample(0);
        if (k == n - 1) return sample(n - 1) - sample(n - 2);
        return 0.5 * (sample(k + 1) - sample(k - 1));
    };

    Descriptor desc{};
    for (std::size_t k = 0; k < nt; ++k) {
        const std::size_t bt = subblock_of(k, nt, kSubblocksT);
        for (std::size_t j = 0; j < ny; ++j) {
            const std::size_t by = subblock_of(j, ny, kSubblocksY);
            for (std::size_t i = 0; i < nx; ++i) {
                const std::size_t bx = subblock_of(i, nx, kSubblocksX);
                const double gx = diff(i, nx, [&](std::size_t q) { return at(q, j, k); });
                const double gy = diff(j, ny, [&](std::size_t q) { return at(i, q, k); });
                const double gt = diff(k, nt, [&](std::size_t q) { return at(i, j, q); });
                const double mag = std::sqrt(gx * gx + gy * gy + gt * gt);
                if (mag == 0.0) continue;
                const std::size_t slot = ((bt * kSubblocksY + by) * kSubblocksX + bx) * kOrientationBins;
                desc[slot + orientation_bin(gy, gx)] += mag;
            }
        }
    }
    for (std::size_t s = 0; s < kDescriptorLength; s += kOrientationBins) {
        double sum = 0.0;
        for (std::size_t q = 0; q < kOrientationBins; ++q) sum += desc[s + q];
        if (sum > 0.0) {
            for (std::size_t q = 0; q < kOrientationBins; ++q) desc[s + q] /= sum;
        }
    }
    return desc;
}

std::vector<DescribedPoint> extract_all(const Volume& source, std::span<const InterestPoint> points,
                                        std::span<const DescriptorScale> scales) {
    std::vector<DescribedPoint> out;
    out.reserve(points.size() * scales.size());
    for (const auto& p : points) {
        for (const auto& s : scales) {
            if (degenerate(descriptor_box(source.dims(), p, s))) continue;
            out.push_back({p, s, describe(source, p, s)});
        }
    }
    return out;
}

std::vector<DescribedPoint> extract_all(const SaliencyMap& source, std::span<const InterestPoint> points,
                                        std::span<const DescriptorScale> scales) {
    return extract_all(Volume(source.dims(), source.storage()), points, scales);
}

void write_points_csv(std::ostream& out, std::span<const InterestPoint> points) {
    out << "x,y,t,score\n";
    for (const auto& p : points) out << p.x << ',' << p.y << ',' << p.t << ',' << format_double(p.score) << '\n';
}

void write_descriptors_csv(std::ostream& out, std::span<const DescribedPoint> descriptors) {
    out << "x,y,t,sigma,tau";
    for (std::size_t k = 0; k < kDescriptorLength; ++k) out << ",d" << k;
    out << '\n';
    for (const auto& d : descriptors) {
        out << d.point.x << ',' << d.point.y << ',' << d.point.t << ',' << d.scale.sigma << ',' << d.scale.tau;
        for (const double v : d.values) out << ',' << format_double(v);
        out << '\n';
    }
}

}  // namespace stsal
