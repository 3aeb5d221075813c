#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "stsal/saliency.hpp"
#include "stsal/volume.hpp"

namespace stsal {

struct Quaternion {
    double w = 0.0;  ///< scalar part
    double x = 0.0;  ///< i
    double y = 0.0;  ///< j
    double z = 0.0;  ///< k

    friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) noexcept {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) noexcept {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr Quaternion operator*(double s, const Quaternion& q) noexcept {
        return {s * q.w, s * q.x, s * q.y, s * q.z};
    }
    /// Hamilton product.
    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) noexcept {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    [[nodiscard]] constexpr double norm2() const noexcept { return w * w + x * x + y * y + z * z; }
    [[nodiscard]] double abs() const noexcept { return std::sqrt(norm2()); }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// r x c image of quaternions, row-major. Pixel = c0 + c1 i + c2 j + c3 k.
class QuaternionImage {
public:
    QuaternionImage() = default;
    QuaternionImage(std::size_t rows, std::size_t cols);
    QuaternionImage(std::size_t rows, std::size_t cols, std::vector<Quaternion> pixels);

    /// Stacks four single-frame channels.
    [[nodiscard]] static QuaternionImage from_channels(std::span<const Volume> channels);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] Quaternion& operator()(std::size_t i, std::size_t j) noexcept { return px_[i * cols_ + j]; }
    [[nodiscard]] const Quaternion& operator()(std::size_t i, std::size_t j) const noexcept { return px_[i * cols_ + j]; }
    [[nodiscard]] std::span<const Quaternion> pixels() const noexcept { return px_; }
    [[nodiscard]] std::span<Quaternion> pixels() noexcept { return px_; }

    /// Component c (0..3) as a 1-frame volume.
    [[nodiscard]] Volume channel(std::size_t c) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Quaternion> px_;
};

/// (i + j + k) / sqrt(3).
[[nodiscard]] Quaternion default_qft_axis() noexcept;

/// Left-sided quaternion DFT with exponent kernel exp(-+mu 2 pi (ui/r + vj/c)),
/// computed through the symplectic split q = s1 + s2 mu2 into two complex DFTs.
/// The inverse carries 1/(rc). `axis` must be a unit pure quaternion.
[[nodiscard]] QuaternionImage qft2(const QuaternionImage& img, const Quaternion& axis = default_qft_axis());
[[nodiscard]] QuaternionImage iqft2(const QuaternionImage& spectrum, const Quaternion& axis = default_qft_axis());

/// Phase-only saliency through the quaternion spectrum, then 2D Gaussian smoothing.
[[nodiscard]] SaliencyMap qft_saliency(const QuaternionImage& img, double sigma,
                                       const Quaternion& axis = default_qft_axis());

/// Sum of the four per-channel phase-only saliency maps, each smoothed first.
[[nodiscard]] SaliencyMap channel_sum_saliency(const QuaternionImage& img, double sigma);

/// Pearson correlation over all voxels. Throws on mismatched dims or zero variance.
[[nodiscard]] double cross_correlation(const SaliencyMap& a, const SaliencyMap& b);

struct ComparisonTrial {
    std::size_t index = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::optional<double> corr_raw;       ///< empty when undefined (zero variance)
    std::optional<double> corr_smoothed;
};

struct ComparisonOptions {
    std::size_t trials = 100;
    std::size_t min_size = 8;
    std::size_t max_size = 128;
    double sigma = 2.0;
    std::uint64_t seed = 0;
};

struct ComparisonResult {
    std::vector<ComparisonTrial> trials;
    double mean_raw = 0.0;       ///< over trials with a defined correlation
    double mean_smoothed = 0.0;
    std::size_t skipped = 0;
};

/// Random uniform [0,1) four-channel images with rows, cols uniform in
/// [min_size, max_size]; compares QFT and channel-sum saliency.
[[nodiscard]] ComparisonResult run_qft_comparison(const ComparisonOptions& opts);

/// `trial,r,c,corr_raw,corr_smoothed` rows (empty cells for skipped trials),
/// then a `# mean_raw=... mean_smoothed=... skipped=... sigma=...` summary line.
void write_comparison_csv(std::ostream& out, const ComparisonResult& result, const ComparisonOptions& opts);

}  // namespace stsal
