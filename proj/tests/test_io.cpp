#include <filesystem>
#include <fstream>
#include <random>
#include <cstring>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "stsal/io.hpp"

using namespace stsal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("stsal_io_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("VOL1 round trip in f64 is exact") {
    std::mt19937_64 rng(1);
    const Dims d{3, 4, 5};
    const std::vector<Volume> ch{oracle::random_volume(d, rng), oracle::random_volume(d, rng)};
    std::stringstream ss;
    write_vol1(ss, ch, SampleType::F64);
    const auto back = read_vol1(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == ch[0]);
    CHECK(back[1] == ch[1]);
}

TEST_CASE("VOL1 f32 round trip rounds to float") {
    Volume v(Dims{1, 2, 1});
    v[0] = 0.1;
    v[1] = -3.0;
    std::stringstream ss;
    write_vol1(ss, std::span(&v, 1), SampleType::F32);
    const std::string bytes = ss.str();
    CHECK(bytes.substr(0, 17) == "VOL1 1 2 1 1 f32\n");
    CHECK(bytes.size() == 17 + 8);
    const auto back = read_vol1(ss);
    CHECK(back[0][0] == static_cast<double>(0.1f));
    CHECK(back[0][1] == -3.0);
}

TEST_CASE("VOL1 payload is little-endian, channel then frame then row") {
    std::vector<Volume> ch{Volume(Dims{1, 1, 2}), Volume(Dims{1, 1, 2})};
    ch[0][0] = 1.0;
    ch[0][1] = 2.0;
    ch[1][0] = 3.0;
    ch[1][1] = 4.0;
    std::stringstream ss;
    write_vol1(ss, ch, SampleType::F32);
    const std::string bytes = ss.str().substr(17);
    REQUIRE(bytes.size() == 16);
    // 1.0f = 0x3f800000, stored low byte first
    CHECK(static_cast<unsigned char>(bytes[3]) == 0x3f);
    CHECK(static_cast<unsigned char>(bytes[2]) == 0x80);
    float vals[4];
    std::memcpy(vals, bytes.data(), 16);
    CHECK(vals[0] == 1.0f);
    CHECK(vals[1] == 2.0f);
    CHECK(vals[2] == 3.0f);
    CHECK(vals[3] == 4.0f);
}

TEST_CASE("malformed VOL1 input is rejected") {
    const auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_vol1(in);
    };
    CHECK_THROWS((void)parse(""));
    CHECK_THROWS((void)parse("VOL2 1 1 1 1 f32\n"));
    CHECK_THROWS((void)parse("VOL1 0 1 1 1 f32\n"));
    CHECK_THROWS((void)parse("VOL1 1 1 1 1 i16\n"));
    CHECK_THROWS((void)parse("VOL1 1 1 1 1 f32 extra\n"));
    CHECK_THROWS((void)parse("VOL1 1 1 2 1 f32\n\x00\x00\x80\x3f"));
    CHECK_THROWS((void)parse(std::string("VOL1 1 1 1 1 f32\n\x00\x00\x80\x3f\x00", 22)));
    // NaN payload
    CHECK_THROWS((void)parse(std::string("VOL1 1 1 1 1 f32\n\x00\x00\xc0\x7f", 21)));
}

TEST_CASE("VOL1 file round trip goes through an atomic rename") {
    TempDir tmp;
    const auto p = tmp.path / "sub" / "v.vol";
    Volume v(Dims{2, 2, 2}, 1.5);
    write_vol1(p, std::span(&v, 1), SampleType::F64);
    CHECK(fs::exists(p));
    CHECK_FALSE(fs::exists(p.string() + ".tmp"));
    CHECK(read_vol1(p)[0] == v);
    CHECK_THROWS((void)read_vol1(tmp.path / "missing.vol"));
}

TEST_CASE("failed writer leaves no file behind") {
    TempDir tmp;
    const auto p = tmp.path / "x.txt";
    CHECK_THROWS(write_atomically(p, [](std::ostream&) { throw std::runtime_error("boom"); }));
    CHECK_FALSE(fs::exists(p));
    CHECK_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST_CASE("PGM frame directory loads in name order") {
    TempDir tmp;
    write_file(tmp.path / "frame_00001.pgm", std::string("P5\n2 1\n255\n\x03\x04", 13));
    write_file(tmp.path / "frame_00000.pgm", std::string("P5\n# comment\n2 1\n255\n\x01\x02", 23));
    write_file(tmp.path / "notes.txt", "ignored");
    const auto seq = read_frame_directory(tmp.path);
    CHECK(seq.dims == Dims{1, 2, 2});
    CHECK(seq.channels == 1);
    const auto v = gray_volume(seq);
    CHECK(v(0, 0, 0) == 1.0);
    CHECK(v(0, 1, 0) == 2.0);
    CHECK(v(0, 0, 1) == 3.0);
    CHECK(v(0, 1, 1) == 4.0);
}

TEST_CASE("PPM frames convert to gray and RGB") {
    TempDir tmp;
    write_file(tmp.path / "a.ppm", std::string("P6\n1 1\n255\n\xff\x00\x00", 14));
    const auto seq = read_frame_directory(tmp.path);
    CHECK(seq.channels == 3);
    CHECK(gray_volume(seq)[0] == doctest::Approx(0.299 * 255));
    const auto rgb = rgb_volume(seq);
    CHECK(rgb.pixels[0] == std::array<std::uint8_t, 3>{255, 0, 0});
}

TEST_CASE("inconsistent frame directories are rejected") {
    TempDir tmp;
    CHECK_THROWS((void)read_frame_directory(tmp.path));
    write_file(tmp.path / "a.pgm", std::string("P5\n2 1\n255\n\x01\x02", 13));
    write_file(tmp.path / "b.pgm", std::string("P5\n1 2\n255\n\x01\x02", 13));
    CHECK_THROWS((void)read_frame_directory(tmp.path));
    fs::remove(tmp.path / "b.pgm");
    write_file(tmp.path / "b.pgm", std::string("P5\n2 1\n255\n\x01", 12));
    CHECK_THROWS((void)read_frame_directory(tmp.path));
    fs::remove(tmp.path / "b.pgm");
    write_file(tmp.path / "b.ppm", std::string("P6\n2 1\n255\n\x01\x02\x03\x04\x05\x06", 17));
    CHECK_THROWS((void)read_frame_directory(tmp.path));
    CHECK_THROWS((void)read_frame_directory(tmp.path / "a.pgm"));
}

TEST_CASE("PGM export normalizes per video") {
    TempDir tmp;
    SaliencyMap z(Dims{1, 2, 2});
    z[0] = 1.0;
    z[1] = 3.0;
    z[2] = 2.0;
    z[3] = 5.0;
    const auto r = write_pgm_sequence(tmp.path, z);
    CHECK(r.min == 1.0);
    CHECK(r.max == 5.0);
    CHECK(read_file(tmp.path / "frame_00000.pgm") == std::string("P5\n2 1\n255\n\x00\x80", 13));
    CHECK(read_file(tmp.path / "frame_00001.pgm") == std::string("P5\n2 1\n255\n\x40\xff", 13));
    CHECK(read_file(tmp.path / "normalization.txt") == "min 1\nmax 5\n");
}

TEST_CASE("format_double is shortest round trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-10) == "-2.5e-10");
}
