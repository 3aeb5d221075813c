#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stsal {

/// Extent of a video volume: rows (M), cols (N), frames (T).
struct Dims {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t frames = 0;

    [[nodiscard]] constexpr std::size_t frame_size() const noexcept { return rows * cols; }
    [[nodiscard]] constexpr std::size_t voxels() const noexcept { return rows * cols * frames; }
    [[nodiscard]] constexpr bool empty() const noexcept { return voxels() == 0; }

    friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

[[nodiscard]] std::string to_string(const Dims& d);

/// Dense 3D grid. Row-major within a frame, frames contiguous:
/// index(i, j, t) = (t * rows + i) * cols + j.
///
/// The Tag parameter keeps semantically different fields (input video,
/// spectrum, saliency, mask) from silently converting into each other.
template <typename T, typename Tag>
class Grid3 {
public:
    using value_type = T;

    Grid3() = default;

    explicit Grid3(Dims dims, T fill = T{}) : dims_(dims), data_(dims.voxels(), fill) {}

    Grid3(Dims dims, std::vector<T> data) : dims_(dims), data_(std::move(data)) {
        if (data_.size() != dims_.voxels()) {
            throw std::invalid_argument("Grid3: data length " + std::to_string(data_.size()) +
                                        " does not match dims " + to_string(dims_));
        }
    }

    [[nodiscard]] const Dims& dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t rows() const noexcept { return dims_.rows; }
    [[nodiscard]] std::size_t cols() const noexcept { return dims_.cols; }
    [[nodiscard]] std::size_t frames() const noexcept { return dims_.frames; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, std::size_t t) const noexcept {
        return (t * dims_.rows + i) * dims_.cols + j;
    }

    [[nodiscard]] T& operator()(std::size_t i, std::size_t j, std::size_t t) noexcept {
        return data_[index(i, j, t)];
    }
    [[nodiscard]] const T& operator()(std::size_t i, std::size_t j, std::size_t t) const noexcept {
        return data_[index(i, j, t)];
    }
    [[nodiscard]] T& operator[](std::size_t k) noexcept { return data_[k]; }
    [[nodiscard]] const T& operator[](std::size_t k) const noexcept { return data_[k]; }

    [[nodiscard]] std::span<T> values() noexcept { return data_; }
    [[nodiscard]] std::span<const T> values() const noexcept { return data_; }

    /// Frame t as a contiguous rows*cols span.
    [[nodiscard]] std::span<const T> frame(std::size_t t) const noexcept {
        return std::span<const T>(data_).subspan(t * dims_.frame_size(), dims_.frame_size());
    }
    [[nodiscard]] std::span<T> frame(std::size_t t) noexcept {
        return std::span<T>(data_).subspan(t * dims_.frame_size(), dims_.frame_size());
    }

    [[nodiscard]] const std::vector<T>& storage() const& noexcept { return data_; }
    [[nodiscard]] std::vector<T>&& release() && noexcept { return std::move(data_); }

    friend bool operator==(const Grid3&, const Grid3&) = default;

private:
    Dims dims_{};
    std::vector<T> data_;
};

struct VolumeTag {};
struct SpectrumTag {};
struct SaliencyTag {};
struct MaskTag {};

/// Real scalar field, one video channel.
using Volume = Grid3<double, VolumeTag>;
/// Complex field, used for spectra and complex-valued inverse transforms.
using ComplexVolume = Grid3<std::complex<double>, SpectrumTag>;
/// Nonnegative saliency field.
using SaliencyMap = Grid3<double, SaliencyTag>;
/// Binary field, 1 = set.
using Mask = Grid3<std::uint8_t, MaskTag>;

/// Moves the storage of one grid kind into another with the same value type.
template <typename To, typename T, typename Tag>
[[nodiscard]] To retag(Grid3<T, Tag> from) {
    const Dims dims = from.dims();
    return To(dims, std::move(from).release());
}

/// Throws std::invalid_argument unless dims are non-empty and every value is finite.
void require_valid(const Volume& x, const char* what);
void require_valid(const ComplexVolume& y, const char* what);
void require_valid(const SaliencyMap& z, const char* what);

/// Copies frames [first, first + count) into a new volume.
template <typename T, typename Tag>
[[nodiscard]] Grid3<T, Tag> slice_frames(const Grid3<T, Tag>& x, std::size_t first, std::size_t count) {
    if (first + count > x.frames()) {
        throw std::out_of_range("slice_frames: range exceeds frame count");
    }
    Dims d = x.dims();
    d.frames = count;
    const auto fs = d.frame_size();
    const auto src = x.values().subspan(first * fs, count * fs);
    return Grid3<T, Tag>(d, std::vector<T>(src.begin(), src.end()));
}

}  // namespace stsal
