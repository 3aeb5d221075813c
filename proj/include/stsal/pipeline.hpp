#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stsal/saliency.hpp"
#include "stsal/volume.hpp"

namespace stsal {

/// How input channels become saliency channels.
enum class ColorMode {
    Gray,    ///< frame directories collapse to luma; VOL1 channels are used as stored
    LabSum,  ///< three R, G, B channels in [0, 255] converted to L*, a*, b*
};

[[nodiscard]] std::string to_string(ColorMode m);
[[nodiscard]] ColorMode parse_color_mode(const std::string& s);

/// Reads a VOL1 file or a directory of PGM/PPM frames. In LabSum mode the
/// result is the three R, G, B channels; in Gray mode a frame directory gives
/// one luma channel and a VOL1 file gives its channels unchanged.
[[nodiscard]] std::vector<Volume> load_channels(const std::filesystem::path& input, ColorMode mode);

/// Downsampling, then colour conversion.
[[nodiscard]] std::vector<Volume> prepare_channels(std::span<const Volume> raw, std::size_t downsample, ColorMode mode);

struct SaliencyOptions {
    std::size_t downsample = 1;
    ColorMode color = ColorMode::Gray;
    std::optional<WindowSpec> window;
    SmoothSpec smooth;
    std::vector<double> weights;
};

/// prepare_channels followed by multi_channel_saliency.
[[nodiscard]] SaliencyMap video_saliency(std::span<const Volume> raw, const SaliencyOptions& opts);

}  // namespace stsal
