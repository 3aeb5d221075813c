#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stsal/volume.hpp"

namespace stsal {

/// Payload sample type of a VOL1 file.
enum class SampleType { F32, F64 };

/// VOL1 container: ASCII header `VOL1 M N T C dtype\n` followed by a
/// little-endian payload ordered channel, frame, row, col.
void write_vol1(std::ostream& out, std::span<const Volume> channels, SampleType type);
[[nodiscard]] std::vector<Volume> read_vol1(std::istream& in);

void write_vol1(const std::filesystem::path& path, std::span<const Volume> channels, SampleType type);
[[nodiscard]] std::vector<Volume> read_vol1(const std::filesystem::path& path);

[[nodiscard]] Volume to_volume(const Mask& m);
[[nodiscard]] Volume to_volume(const SaliencyMap& z);

/// 8-bit RGB video, pixels in frame/row/col order.
struct RgbVolume {
    Dims dims;
    std::vector<std::array<std::uint8_t, 3>> pixels;
};

/// Frames loaded from a directory of binary PGM (P5) or PPM (P6) files.
struct FrameSequence {
    Dims dims;
    std::size_t channels = 0;            ///< 1 for PGM, 3 for PPM
    std::vector<std::uint8_t> samples;   ///< interleaved, frame-major
};

/// Reads all *.pgm / *.ppm files in `dir`, sorted by file name. Mixing the
/// two kinds or frames of differing size is rejected.
[[nodiscard]] FrameSequence read_frame_directory(const std::filesystem::path& dir);

[[nodiscard]] Volume gray_volume(const FrameSequence& frames);
[[nodiscard]] RgbVolume rgb_volume(const FrameSequence& frames);

/// Normalization used for PGM export: byte = round(255 * (v - min) / (max - min)).
struct ExportRange {
    double min = 0.0;
    double max = 0.0;
};

/// Writes one P5 file per frame (`frame_%05zu.pgm`) plus `normalization.txt`
/// holding the per-video min and max.
ExportRange write_pgm_sequence(const std::filesystem::path& dir, const SaliencyMap& z);

/// Writes a file through a temporary sibling and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

/// Shortest round-trip decimal text for a double.
[[nodiscard]] std::string format_double(double v);

}  // namespace stsal
