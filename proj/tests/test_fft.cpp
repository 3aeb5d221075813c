#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stsal/fft.hpp"

using namespace stsal;
using cd = std::complex<double>;

TEST_CASE("single voxel transform is the identity") {
    Volume x(Dims{1, 1, 1}, 5.0);
    const auto y = forward_dft3(x);
    CHECK(y[0] == cd(5.0, 0.0));
}

TEST_CASE("delta has a flat spectrum") {
    Volume x(Dims{2, 2, 2}, 0.0);
    x(0, 0, 0) = 1.0;
    const auto y = forward_dft3(x);
    for (const auto& v : y.values()) CHECK(std::abs(v - cd(1.0, 0.0)) < 1e-15);
}

TEST_CASE("flat spectrum inverts to a delta") {
    ComplexVolume y(Dims{2, 2, 2}, cd(1.0, 0.0));
    const auto x = inverse_dft3(y);
    for (std::size_t k = 0; k < x.size(); ++k) {
        CHECK(std::abs(x[k] - cd(k == 0 ? 1.0 : 0.0, 0.0)) < 1e-15);
    }
}

TEST_CASE("DC-only spectrum of value MNT inverts to ones") {
    const Dims d{3, 4, 5};
    ComplexVolume y(d, cd{});
    y[0] = static_cast<double>(d.voxels());
    const auto x = inverse_dft3(y);
    for (const auto& v : x.values()) CHECK(std::abs(v - cd(1.0, 0.0)) < 1e-14);
}

TEST_CASE("random 4x4x4 matches the naive triple sum") {
    std::mt19937_64 rng(11);
    const auto x = oracle::random_volume(Dims{4, 4, 4}, rng);
    const auto fast = forward_dft3(x);
    const auto slow = oracle::naive_dft3(oracle::to_complex(x), -1.0);
    CHECK(oracle::max_abs_diff(fast, slow) <= 1e-10);
    const auto back = inverse_dft3(fast);
    CHECK(oracle::max_abs_diff(back, oracle::to_complex(x)) <= 1e-10);
}

TEST_CASE("1D plans match the naive DFT across lengths") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 12u, 16u, 25u, 29u, 31u, 58u, 61u, 67u, 97u, 127u,
                          174u, 200u, 211u, 400u}) {
        CAPTURE(n);
        std::vector<cd> in(n), out(n);
        for (auto& v : in) v = {u(rng), u(rng)};
        const auto plan = FftPlan::get(n);
        for (auto dir : {FftDirection::Forward, FftDirection::Inverse}) {
            plan->execute(in, out, dir);
            const double sign = dir == FftDirection::Forward ? -1.0 : 1.0;
            double err = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                cd acc{};
                for (std::size_t j = 0; j < n; ++j) {
                    const double a = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / n;
                    acc += in[j] * cd(std::cos(a), sign * std::sin(a));
                }
                err = std::max(err, std::abs(acc - out[k]));
            }
            CHECK(err <= 1e-10 * std::max<double>(1.0, std::sqrt(static_cast<double>(n))));
        }
    }
}

TEST_CASE("Parseval, linearity and round trip on random volumes") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const Dims d = oracle::random_dims(rng, 1, 8);
        CAPTURE(to_string(d));
        const auto x1 = oracle::random_volume(d, rng);
        const auto x2 = oracle::random_volume(d, rng);
        const auto y1 = forward_dft3(x1);

        double ex = 0.0, ey = 0.0;
        for (double v : x1.values()) ex += v * v;
        for (const auto& v : y1.values()) ey += std::norm(v);
        CHECK(std::abs(ey - static_cast<double>(d.voxels()) * ex) <= 1e-8 * ey);

        const double a = 1.7, b = -0.3;
        Volume mix(d);
        for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = a * x1[k] + b * x2[k];
        const auto ymix = forward_dft3(mix);
        const auto y2 = forward_dft3(x2);
        double err = 0.0;
        for (std::size_t k = 0; k < mix.size(); ++k) err = std::max(err, std::abs(ymix[k] - (a * y1[k] + b * y2[k])));
        CHECK(err <= 1e-10);

        CHECK(oracle::max_abs_diff(inverse_dft3(y1), oracle::to_complex(x1)) <= 1e-10);
    }
}

TEST_CASE("complex input path agrees with the real input path") {
    std::mt19937_64 rng(3);
    const auto x = oracle::random_volume(Dims{5, 3, 6}, rng);
    CHECK(oracle::max_abs_diff(forward_dft3(x), forward_dft3(oracle::to_complex(x))) == 0.0);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS((void)forward_dft3(Volume{}), std::invalid_argument);
    Volume bad(Dims{2, 2, 2}, 0.0);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)forward_dft3(bad), std::invalid_argument);
    ComplexVolume inf(Dims{1, 2, 1}, cd{});
    inf[1] = cd(std::numeric_limits<double>::infinity(), 0.0);
    CHECK_THROWS_AS((void)inverse_dft3(inf), std::invalid_argument);
    CHECK_THROWS_AS(FftPlan(0), std::invalid_argument);
}
