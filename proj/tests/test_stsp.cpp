#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "stsal/stsp.hpp"

using namespace stsal;

namespace {

SaliencyMap random_map(const Dims& d, std::mt19937_64& rng, int levels = 0) {
    SaliencyMap z(d);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : z.values()) v = levels > 0 ? static_cast<double>(rng() % levels) : u(rng);
    return z;
}

double slice_sum(const Descriptor& d, std::size_t s) { return d[4 * s] + d[4 * s + 1] + d[4 * s + 2] + d[4 * s + 3]; }

}  // namespace

TEST_CASE("constant map yields no points") {
    const SaliencyMap z(Dims{12, 12, 12}, 0.7);
    CHECK(detect_points(z).empty());
}

TEST_CASE("single Gaussian bump gives one point at its center") {
    SaliencyMap z(Dims{20, 20, 10}, 0.0);
    for (std::size_t t = 0; t < 10; ++t)
        for (std::size_t y = 0; y < 20; ++y)
            for (std::size_t x = 0; x < 20; ++x) {
                const double r2 = (x - 10.0) * (x - 10.0) + (y - 10.0) * (y - 10.0) + (t - 5.0) * (t - 5.0);
                z(y, x, t) = std::exp(-r2 / 8.0);
            }
    const auto pts = detect_points(z);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == InterestPoint{10, 10, 5, 1.0});
}

TEST_CASE("NMS equals the exhaustive scan, including ties") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        // Alternate continuous maps and heavily tied integer maps.
        const auto z = random_map(Dims{12, 12, 12}, rng, trial % 2 ? 4 : 0);
        NmsConfig cfg;
        const double rho = nms_threshold(z, cfg);
        CHECK(detect_points(z, cfg) == oracle::brute_nms(z, rho, 5, 5, 3));

        NmsConfig small;
        small.rx = 1;
        small.ry = 2;
        small.rt = 1;
        small.rho = 0.5;
        CHECK(detect_points(z, small) == oracle::brute_nms(z, 0.5, 1, 2, 1));
    }
}

TEST_CASE("NMS properties") {
    std::mt19937_64 rng(5);
    const auto z = random_map(Dims{14, 13, 9}, rng);
    NmsConfig cfg;
    cfg.rho_mult = 1.0;
    cfg.rx = 2;
    cfg.ry = 2;
    cfg.rt = 1;
    const auto pts = detect_points(z, cfg);
    REQUIRE_FALSE(pts.empty());
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const bool near = std::abs((long long)pts[a].x - (long long)pts[b].x) <= 2 &&
                              std::abs((long long)pts[a].y - (long long)pts[b].y) <= 2 &&
                              std::abs((long long)pts[a].t - (long long)pts[b].t) <= 1;
            CHECK_FALSE(near);
        }
    SaliencyMap scaled = z;
    for (auto& v : scaled.values()) v *= 8.0;
    const auto pts2 = detect_points(scaled, cfg);
    REQUIRE(pts2.size() == pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        CHECK(pts2[k].x == pts[k].x);
        CHECK(pts2[k].y == pts[k].y);
        CHECK(pts2[k].t == pts[k].t);
    }
    NmsConfig bad;
    bad.rx = 0;
    CHECK_THROWS_AS((void)detect_points(z, bad), std::invalid_argument);
}

TEST_CASE("box geometry and subblocks") {
    const Box b = descriptor_box(Dims{50, 60, 30}, InterestPoint{30, 25, 15, 0}, {18, 10});
    CHECK(b.x0 == 21);
    CHECK(b.x1 == 39);
    CHECK(b.y0 == 16);
    CHECK(b.y1 == 34);
    CHECK(b.t0 == 10);
    CHECK(b.t1 == 20);
    const Box edge = descriptor_box(Dims{50, 60, 30}, InterestPoint{0, 49, 29, 0}, {25, 14});
    CHECK(edge.x0 == 0);
    CHECK(edge.x1 == 13);
    CHECK(edge.y1 == 50);
    CHECK(edge.t1 == 30);
    CHECK_FALSE(degenerate(edge));
    CHECK(degenerate(descriptor_box(Dims{50, 60, 1}, InterestPoint{0, 0, 0, 0}, {18, 10})));

    // 10 voxels into 3 blocks: 3, 3, 4.
    CHECK(subblock_of(2, 10, 3) == 0);
    CHECK(subblock_of(3, 10, 3) == 1);
    CHECK(subblock_of(6, 10, 3) == 2);
    CHECK(subblock_of(9, 10, 3) == 2);
    CHECK(subblock_of(1, 2, 3) == 2);

    CHECK(orientation_bin(-1, -1) == 0);
    CHECK(orientation_bin(-1, 1) == 1);
    CHECK(orientation_bin(0, 1) == 2);
    CHECK(orientation_bin(1, 1) == 2);
    CHECK(orientation_bin(1, 0) == 3);
    CHECK(orientation_bin(0, -1) == 3);
    CHECK(orientation_bin(-1, 0) == 1);
    CHECK(orientation_bin(0, 0) == 2);
}

TEST_CASE("constant volume gives the zero descriptor") {
    const Volume x(Dims{40, 40, 24}, 3.0);
    const auto d = describe(x, InterestPoint{20, 20, 12, 0}, {36, 20});
    CHECK(std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("ramp along x puts all mass in the orientation-0 bin") {
    Volume x(Dims{30, 30, 20});
    for (std::size_t t = 0; t < 20; ++t)
        for (std::size_t i = 0; i < 30; ++i)
            for (std::size_t j = 0; j < 30; ++j) x(i, j, t) = 0.5 * static_cast<double>(j);
    const auto d = describe(x, InterestPoint{15, 15, 10, 0}, {18, 10});
    for (std::size_t s = 0; s < 18; ++s) {
        CHECK(d[4 * s + 2] == 1.0);
        CHECK(slice_sum(d, s) == 1.0);
    }
}

TEST_CASE("descriptor matches the accumulation oracle and its contract") {
    std::mt19937_64 rng(31);
    const Volume x = oracle::random_volume(Dims{40, 44, 26}, rng, 0.0, 1.0);
    for (const auto& sc : kDefaultScales) {
        for (int k = 0; k < 8; ++k) {
            const InterestPoint p{rng() % 44, rng() % 40, rng() % 26, 0.0};
            if (degenerate(descriptor_box(x.dims(), p, sc))) continue;
            CAPTURE(p.x);
            CAPTURE(p.y);
            CAPTURE(p.t);
            const auto d = describe(x, p, sc);
            const auto ref = oracle::naive_descriptor(x, (long long)p.x, (long long)p.y, (long long)p.t,
                                                      (long long)sc.sigma, (long long)sc.tau);
            double err = 0.0;
            for (std::size_t q = 0; q < kDescriptorLength; ++q) err = std::max(err, std::abs(d[q] - ref[q]));
            CHECK(err <= 1e-12);
            for (std::size_t s = 0; s < 18; ++s) {
                const double sum = slice_sum(d, s);
                CHECK((sum == 0.0 || std::abs(sum - 1.0) <= 1e-9));
            }
            for (double v : d) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
            Volume shifted = x;
            for (auto& v : shifted.values()) v += 0.25;
            const auto ds = describe(shifted, p, sc);
            err = 0.0;
            for (std::size_t q = 0; q < kDescriptorLength; ++q) err = std::max(err, std::abs(d[q] - ds[q]));
            CHECK(err <= 1e-9);
        }
    }
    CHECK_THROWS_AS((void)describe(Volume(Dims{10, 10, 1}, 0.0), InterestPoint{5, 5, 0, 0}, {18, 10}),
                    std::invalid_argument);
}

TEST_CASE("extract_all ordering and sources") {
    std::mt19937_64 rng(4);
    const Volume x = oracle::random_volume(Dims{40, 40, 24}, rng, 0.0, 1.0);
    const std::vector<InterestPoint> pts{{20, 20, 12, 1.0}, {10, 30, 8, 0.5}};
    CHECK(extract_all(x, std::span<const InterestPoint>{}, kDefaultScales).empty());
    const auto all = extract_all(x, pts, kDefaultScales);
    REQUIRE(all.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(all[k].point == pts[k / 3]);
        CHECK(all[k].scale.sigma == kDefaultScales[k % 3].sigma);
        CHECK(all[k].values == describe(x, pts[k / 3], kDefaultScales[k % 3]));
    }

    SaliencyMap same(x.dims(), x.storage());
    const auto from_map = extract_all(same, pts, kDefaultScales);
    for (std::size_t k = 0; k < 6; ++k) CHECK(from_map[k].values == all[k].values);

    SaliencyMap other(x.dims());
    for (std::size_t n = 0; n < x.size(); ++n) other[n] = x[n] * x[n];
    CHECK_FALSE(extract_all(other, pts, kDefaultScales)[0].values == all[0].values);

    const std::vector<InterestPoint> flat_edge{{0, 0, 0, 0}};
    const Volume thin(Dims{40, 40, 1}, 1.0);
    CHECK(extract_all(thin, flat_edge, kDefaultScales).empty());
}

TEST_CASE("CSV layout") {
    std::ostringstream p;
    const std::vector<InterestPoint> pts{{3, 4, 5, 0.5}};
    write_points_csv(p, pts);
    CHECK(p.str() == "x,y,t,score\n3,4,5,0.5\n");

    std::ostringstream d;
    write_descriptors_csv(d, std::vector<DescribedPoint>{{pts[0], {18, 10}, Descriptor{}}});
    std::istringstream lines(d.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(std::count(header.begin(), header.end(), ',') == 76);
    CHECK(header.rfind("x,y,t,sigma,tau,d0,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',') == 76);
    CHECK(row.rfind("3,4,5,18,10,0,", 0) == 0);
}
