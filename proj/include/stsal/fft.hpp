#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "stsal/volume.hpp"

namespace stsal {

enum class FftDirection { Forward, Inverse };

/// Unnormalized 1D DFT of a fixed length, backed by FFTW.
/// A plan is immutable after construction and may be shared across threads.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    /// out[k] = sum_j in[j] * exp(s * 2 pi i j k / n), s = -1 forward, +1 inverse.
    /// `in` and `out` must not alias.
    void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
                 FftDirection dir) const;

    /// Shared plan from a process-wide cache.
    [[nodiscard]] static std::shared_ptr<const FftPlan> get(std::size_t n);

private:
    struct Impl;

    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

/// Forward 3D DFT, Y(u,v,w) = sum X(i,j,t) exp(-2 pi i (ui/M + vj/N + wt/T)).
[[nodiscard]] ComplexVolume forward_dft3(const Volume& x);
[[nodiscard]] ComplexVolume forward_dft3(ComplexVolume x);

/// Inverse 3D DFT including the 1/(MNT) factor.
[[nodiscard]] ComplexVolume inverse_dft3(ComplexVolume y);

/// In-place transform over all three axes. No normalization in either direction.
void transform3_inplace(ComplexVolume& y, FftDirection dir);

}  // namespace stsal
