#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stsal/gaussian.hpp"

using namespace stsal;

TEST_CASE("kernel shape") {
    CHECK(gaussian_kernel(0.0) == std::vector<double>{1.0});
    const auto k = gaussian_kernel(1.0);
    CHECK(k.size() == 7);
    CHECK(std::accumulate(k.begin(), k.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gaussian_kernel(1.5).size() == 11);
    CHECK_THROWS_AS((void)gaussian_kernel(-0.1), std::invalid_argument);
}

TEST_CASE("reflect index mirrors about the half-sample edge") {
    CHECK(reflect_index(-1, 4) == 0);
    CHECK(reflect_index(-2, 4) == 1);
    CHECK(reflect_index(4, 4) == 3);
    CHECK(reflect_index(5, 4) == 2);
    CHECK(reflect_index(9, 4) == 1);  // beyond one reflection
    CHECK(reflect_index(-3, 1) == 0);
}

TEST_CASE("constants are preserved for any sigma") {
    Volume c(Dims{5, 6, 7}, 3.25);
    for (auto [s, t] : {std::pair{0.5, 0.0}, {1.0, 1.0}, {3.0, 1.5}, {4.0, 5.0}}) {
        const auto y = gaussian_smooth3(c, s, t);
        for (double v : y.values()) CHECK(v == doctest::Approx(3.25).epsilon(1e-14));
    }
}

TEST_CASE("impulse mass is conserved") {
    Volume x(Dims{9, 9, 9}, 0.0);
    x(4, 4, 4) = 1.0;
    const auto y = gaussian_smooth3(x, 1.0, 1.0);
    const double sum = std::accumulate(y.values().begin(), y.values().end(), 0.0);
    CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("mass is conserved at borders under reflect padding") {
    Volume x(Dims{6, 5, 4}, 0.0);
    x(0, 0, 0) = 1.0;
    x(5, 4, 3) = 2.0;
    const auto y = gaussian_smooth3(x, 2.0, 1.0);
    CHECK(std::accumulate(y.values().begin(), y.values().end(), 0.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("separable passes equal a naive 3D convolution") {
    std::mt19937_64 rng(8);
    const auto x = oracle::random_volume(Dims{8, 8, 8}, rng);
    const auto fast = gaussian_smooth3(x, 2.0, 1.0);
    const auto slow = oracle::naive_smooth3(x, 2.0, 1.0);
    CHECK(oracle::max_abs_diff_real(fast, slow) <= 1e-9);
}

TEST_CASE("smoothing stays within the input range") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const auto x = oracle::random_volume(oracle::random_dims(rng, 1, 9), rng, -5.0, 7.0);
        const auto [lo, hi] = std::minmax_element(x.values().begin(), x.values().end());
        const auto y = gaussian_smooth3(x, 1.3, 0.7);
        for (double v : y.values()) {
            CHECK(v >= *lo - 1e-12);
            CHECK(v <= *hi + 1e-12);
        }
    }
}

TEST_CASE("negative sigma is rejected") {
    Volume x(Dims{2, 2, 2}, 1.0);
    CHECK_THROWS_AS((void)gaussian_smooth3(x, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)gaussian_smooth3(x, 1.0, -0.5), std::invalid_argument);
}
