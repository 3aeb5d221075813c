#pragma once

#include <vector>

#include "stsal/volume.hpp"

namespace stsal {

/// Normalized 1D Gaussian taps over [-r, r], r = ceil(3 sigma). sigma == 0 yields {1}.
[[nodiscard]] std::vector<double> gaussian_kernel(double sigma);

/// Half-sample symmetric reflection of an index into [0, n): ... c b a | a b c ... | c b a ...
[[nodiscard]] std::size_t reflect_index(long long i, std::size_t n) noexcept;

/// Separable Gaussian smoothing; rows and cols share sigma_spatial, frames use
/// sigma_temporal. A zero sigma skips that axis. Reflect padding at borders.
[[nodiscard]] Volume gaussian_smooth3(const Volume& x, double sigma_spatial, double sigma_temporal);
[[nodiscard]] SaliencyMap gaussian_smooth3(const SaliencyMap& z, double sigma_spatial, double sigma_temporal);

}  // namespace stsal
