#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stsal/io.hpp"
#include "stsal/volume.hpp"

namespace stsal {

/// Gaussian applied to each saliency map; 0 disables an axis.
struct SmoothSpec {
    double sigma_spatial = 3.0;   // px
    double sigma_temporal = 1.5;  // frames

    [[nodiscard]] static constexpr SmoothSpec none() noexcept { return {0.0, 0.0}; }
};

/// Rectangular temporal window slid along the frame axis.
struct WindowSpec {
    std::size_t length = 0;  // frames
    std::size_t hop = 0;     // frames, 1 <= hop <= length

    [[nodiscard]] static constexpr WindowSpec tiled(std::size_t len) noexcept { return {len, len}; }
};

/// Default magnitude floor for phase_normalize: 1e-12 * max(1, max|Y|).
[[nodiscard]] double default_phase_epsilon(const ComplexVolume& y);

/// Y / |Y| where |Y| > eps, exactly 0 elsewhere.
[[nodiscard]] ComplexVolume phase_normalize(ComplexVolume y, std::optional<double> eps = std::nullopt);

/// Unsmoothed phase-only reconstruction |F^-1(Y/|Y|)|^2 and the number of spectral
/// bins that kept a phase. The map sums to retained_bins / voxel count.
struct PhaseOnlyResult {
    SaliencyMap map;
    std::size_t retained_bins = 0;
};
[[nodiscard]] PhaseOnlyResult phase_only_saliency(const Volume& x);

/// Phase spectrum saliency of the whole volume, followed by Gaussian smoothing.
[[nodiscard]] SaliencyMap saliency_eq1(const Volume& x, const SmoothSpec& smooth = {});

/// Window start frames for a volume of `frames` frames: 0, hop, 2 hop, ...
/// with the final placement clamped to end at the last frame.
[[nodiscard]] std::vector<std::size_t> window_starts(std::size_t frames, const WindowSpec& win);

/// Short-time variant: saliency_eq1 on each temporal window, averaged where
/// windows overlap.
[[nodiscard]] SaliencyMap windowed_saliency(const Volume& x, const WindowSpec& win, const SmoothSpec& smooth = {});

/// Per-channel saliency (windowed when `win` is set) summed voxelwise. Optional
/// weights scale each channel's map; by default all weights are 1.
[[nodiscard]] SaliencyMap multi_channel_saliency(std::span<const Volume> channels,
                                                 const std::optional<WindowSpec>& win = std::nullopt,
                                                 const SmoothSpec& smooth = {},
                                                 std::span<const double> weights = {});

/// sRGB to CIE L*a*b* under D65, one volume per component. The span overload
/// takes R, G, B volumes with values in [0, 255] (e.g. after downsampling).
[[nodiscard]] std::array<Volume, 3> rgb_to_lab(const RgbVolume& rgb);
[[nodiscard]] std::array<Volume, 3> rgb_to_lab(std::span<const Volume> rgb);
[[nodiscard]] std::array<double, 3> srgb_to_lab(double r, double g, double b);
[[nodiscard]] std::array<double, 3> srgb_pixel_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Box-average downsampling by `factor` in rows and cols. Trailing rows/cols
/// that do not fill a whole block are dropped.
[[nodiscard]] Volume downsample_spatial(const Volume& x, std::size_t factor);

}  // namespace stsal
