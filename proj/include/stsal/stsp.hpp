#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "stsal/volume.hpp"

namespace stsal {

/// Detected point: x = col, y = row, t = frame.
struct InterestPoint {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t t = 0;
    double score = 0.0;

    friend bool operator==(const InterestPoint&, const InterestPoint&) = default;
};

/// Non-maximum suppression settings. Exactly one of `rho` (absolute) and
/// `rho_mult` (multiple of the mean saliency) is used; `rho` wins when set.
struct NmsConfig {
    std::optional<double> rho;
    double rho_mult = 2.0;
    std::size_t rx = 5;
    std::size_t ry = 5;
    std::size_t rt = 3;

    void validate() const;
};

/// Threshold actually applied to `z` under `cfg`.
[[nodiscard]] double nms_threshold(const SaliencyMap& z, const NmsConfig& cfg);

/// Points with Z >= rho that dominate their clipped (2rx+1)x(2ry+1)x(2rt+1)
/// neighborhood. Among equal values inside one neighborhood only the first in
/// (t, y, x) order survives. Output in (t, y, x) order.
[[nodiscard]] std::vector<InterestPoint> detect_points(const SaliencyMap& z, const NmsConfig& cfg = {});

/// Box side lengths for one descriptor scale.
struct DescriptorScale {
    std::size_t sigma = 18;  ///< spatial side, px
    std::size_t tau = 10;    ///< temporal side, frames
};

inline constexpr std::array<DescriptorScale, 3> kDefaultScales{{{18, 10}, {25, 14}, {36, 20}}};

inline constexpr std::size_t kSubblocksX = 3;
inline constexpr std::size_t kSubblocksY = 3;
inline constexpr std::size_t kSubblocksT = 2;
inline constexpr std::size_t kOrientationBins = 4;
inline constexpr std::size_t kDescriptorLength = kSubblocksX * kSubblocksY * kSubblocksT * kOrientationBins;

using Descriptor = std::array<double, kDescriptorLength>;

/// Half-open box [begin, end) per axis.
struct Box {
    std::size_t x0, x1, y0, y1, t0, t1;
};

/// The scale box centered on `p`, clipped to `dims`.
[[nodiscard]] Box descriptor_box(const Dims& dims, const InterestPoint& p, const DescriptorScale& scale);
[[nodiscard]] bool degenerate(const Box& b) noexcept;

/// Split of `extent` voxels into `parts` blocks; the remainder goes to the last block.
[[nodiscard]] std::size_t subblock_of(std::size_t offset, std::size_t extent, std::size_t parts) noexcept;

/// Orientation quadrant of atan2(gy, gx): [-pi,-pi/2) -> 0, [-pi/2,0) -> 1, [0,pi/2) -> 2, [pi/2,pi] -> 3.
[[nodiscard]] std::size_t orientation_bin(double gy, double gx) noexcept;

/// Gradient-orientation histogram over the 3x3x2 subblocks of the scale box.
/// Gradients are taken inside the clipped box (central differences, one-sided
/// at its faces); every 4-bin slice is l1-normalized or left at zero.
/// Throws when the clipped box is thinner than 2 voxels on any axis.
[[nodiscard]] Descriptor describe(const Volume& x, const InterestPoint& p, const DescriptorScale& scale);

struct DescribedPoint {
    InterestPoint point;
    DescriptorScale scale;
    Descriptor values;
};

/// Descriptors for every (point, scale), point-major; degenerate boxes are skipped.
[[nodiscard]] std::vector<DescribedPoint> extract_all(const Volume& source, std::span<const InterestPoint> points,
                                                      std::span<const DescriptorScale> scales);
[[nodiscard]] std::vector<DescribedPoint> extract_all(const SaliencyMap& source, std::span<const InterestPoint> points,
                                                      std::span<const DescriptorScale> scales);

/// `x,y,t,score` with header.
void write_points_csv(std::ostream& out, std::span<const InterestPoint> points);
/// `x,y,t,sigma,tau,d0..d71` with header.
void write_descriptors_csv(std::ostream& out, std::span<const DescribedPoint> descriptors);

}  // namespace stsal
