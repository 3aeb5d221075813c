#include "stsal/pipeline.hpp"

#include <stdexcept>

#include "stsal/io.hpp"

namespace stsal {

std::string to_string(ColorMode m) { return m == ColorMode::Gray ? "gray" : "lab-sum"; }

ColorMode parse_color_mode(const std::string& s) {
    if (s == "gray") return ColorMode::Gray;
    if (s == "lab-sum") return ColorMode::LabSum;
    throw std::invalid_argument("unknown color mode '" + s + "' (expected gray or lab-sum)");
}

std::vector<Volume> load_channels(const std::filesystem::path& input, ColorMode mode) {
    if (std::filesystem::is_directory(input)) {
        const FrameSequence seq = read_frame_directory(input);
        if (mode == ColorMode::Gray) return {gray_volume(seq)};
        const RgbVolume rgb = rgb_volume(seq);
        std::vector<Volume> out(3, Volume(rgb.dims));
        for (std::size_t k = 0; k < rgb.pixels.size(); ++k) {
            for (std::size_t c = 0; c < 3; ++c) out[c][k] = rgb.pixels[k][c];
        }
        return out;
    }
    auto channels = read_vol1(input);
    if (mode == ColorMode::LabSum && channels.size() != 3) {
        throw std::invalid_argument("lab-sum mode needs a 3-channel (R, G, B) input; " + input.string() + " has " +
                                    std::to_string(channels.size()));
    }
    return channels;
}

std::vector<Volume> prepare_channels(std::span<const Volume> raw, std::size_t downsample, ColorMode mode) {
    if (raw.empty()) throw std::invalid_argument("prepare_channels: no channels");
    std::vector<Volume> small;
    small.reserve(raw.size());
    for (const auto& c : raw) small.push_back(downsample_spatial(c, downsample));
    if (mode == ColorMode::Gray) return small;
    auto lab = rgb_to_lab(small);
    return {std::move(lab[0]), std::move(lab[1]), std::move(lab[2])};
}

SaliencyMap video_saliency(std::span<const Volume> raw, const SaliencyOptions& opts) {
    const auto channels = prepare_channels(raw, opts.downsample, opts.color);
    return multi_channel_saliency(channels, opts.window, opts.smooth, opts.weights);
}

}  // namespace stsal
