#include "stsal/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stsal {

namespace fs = std::filesystem;

namespace {

template <typename T>
T to_little_endian(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    }
    return v;
}

const char* type_name(SampleType t) { return t == SampleType::F32 ? "f32" : "f64"; }

template <typename T>
void write_samples(std::ostream& out, std::span<const double> values) {
    std::vector<T> buf(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) buf[k] = to_little_endian(static_cast<T>(values[k]));
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(T)));
}

template <typename T>
std::vector<double> read_samples(std::istream& in, std::size_t count) {
    std::vector<T> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count * sizeof(T)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(T)) {
        throw std::runtime_error("VOL1: truncated payload");
    }
    std::vector<double> values(count);
    for (std::size_t k = 0; k < count; ++k) values[k] = static_cast<double>(to_little_endian(buf[k]));
    return values;
}

}  // namespace

void write_vol1(std::ostream& out, std::span<const Volume> channels, SampleType type) {
    if (channels.empty()) throw std::invalid_argument("write_vol1: no channels");
    const Dims d = channels.front().dims();
    for (const auto& c : channels) {
        if (c.dims() != d) throw std::invalid_argument("write_vol1: channel dimension mismatch");
    }
    out << "VOL1 " << d.rows << ' ' << d.cols << ' ' << d.frames << ' ' << channels.size() << ' '
        << type_name(type) << '\n';
    for (const auto& c : channels) {
        if (type == SampleType::F32) {
            write_samples<float>(out, c.values());
        } else {
            write_samples<double>(out, c.values());
        }
    }
    if (!out) throw std::runtime_error("write_vol1: stream error");
}

std::vector<Volume> read_vol1(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("VOL1: missing header");
    std::istringstream hs(header);
    std::string magic, dtype;
    long long m = 0, n = 0, t = 0, c = 0;
    hs >> magic >> m >> n >> t >> c >> dtype;
    if (!hs || magic != "VOL1") throw std::runtime_error("VOL1: malformed header '" + header + "'");
    std::string extra;
    if (hs >> extra) throw std::runtime_error("VOL1: trailing header fields");
    if (m < 1 || n < 1 || t < 1 || c < 1) throw std::runtime_error("VOL1: dimensions must be positive");
    if (dtype != "f32" && dtype != "f64") throw std::runtime_error("VOL1: unknown dtype '" + dtype + "'");

    const Dims d{static_cast<std::size_t>(m), static_cast<std::size_t>(n), static_cast<std::size_t>(t)};
    std::vector<Volume> channels;
    channels.reserve(static_cast<std::size_t>(c));
    for (long long k = 0; k < c; ++k) {
        auto values = dtype == "f32" ? read_samples<float>(in, d.voxels()) : read_samples<double>(in, d.voxels());
        Volume v(d, std::move(values));
        require_valid(v, "read_vol1");
        channels.push_back(std::move(v));
    }
    if (in.peek() != std::char_traits<char>::eof()) throw std::runtime_error("VOL1: trailing bytes after payload");
    return channels;
}

void write_vol1(const fs::path& path, std::span<const Volume> channels, SampleType type) {
    write_atomically(path, [&](std::ostream& out) { write_vol1(out, channels, type); });
}

std::vector<Volume> read_vol1(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_vol1(in);
}

Volume to_volume(const Mask& m) {
    std::vector<double> v(m.values().begin(), m.values().end());
    return Volume(m.dims(), std::move(v));
}

Volume to_volume(const SaliencyMap& z) { return Volume(z.dims(), z.storage()); }

namespace {

struct Netpbm {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t channels = 0;
    std::vector<std::uint8_t> samples;
};

std::string next_token(std::istream& in) {
    std::string tok;
    while (true) {
        const int ch = in.peek();
        if (ch == std::char_traits<char>::eof()) break;
        if (ch == '#') {
            std::string skip;
            std::getline(in, skip);
            continue;
        }
        if (std::isspace(ch)) {
            in.get();
            continue;
        }
        break;
    }
    in >> tok;
    return tok;
}

Netpbm read_netpbm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const std::string magic = next_token(in);
    Netpbm img;
    if (magic == "P5") {
        img.channels = 1;
    } else if (magic == "P6") {
        img.channels = 3;
    } else {
        throw std::runtime_error(path.string() + ": not a binary PGM/PPM file");
    }
    const auto parse = [&](const char* what) {
        const std::string tok = next_token(in);
        long long v = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size() || v < 1) {
            throw std::runtime_error(path.string() + ": bad " + what);
        }
        return static_cast<std::size_t>(v);
    };
    img.cols = parse("width");
    img.rows = parse("height");
    const std::size_t maxval = parse("maxval");
    if (maxval > 255) throw std::runtime_error(path.string() + ": only 8-bit samples are supported");
    in.get();  // single whitespace before raster
    img.samples.resize(img.rows * img.cols * img.channels);
    in.read(reinterpret_cast<char*>(img.samples.data()), static_cast<std::streamsize>(img.samples.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.samples.size()) {
        throw std::runtime_error(path.string() + ": truncated raster");
    }
    if (maxval != 255) {
        for (auto& s : img.samples) {
            s = static_cast<std::uint8_t>(std::lround(255.0 * std::min<double>(s, maxval) / static_cast<double>(maxval)));
        }
    }
    return img;
}

}  // namespace

FrameSequence read_frame_directory(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm")) files.push_back(entry.path());
    }
    if (files.empty()) throw std::runtime_error(dir.string() + ": no .pgm or .ppm frames found");
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

    FrameSequence seq;
    for (const auto& f : files) {
        Netpbm img = read_netpbm(f);
        if (seq.channels == 0) {
            seq.channels = img.channels;
            seq.dims = {img.rows, img.cols, 0};
        } else if (img.channels != seq.channels || img.rows != seq.dims.rows || img.cols != seq.dims.cols) {
            throw std::runtime_error(f.string() + ": frame size or type differs from the first frame");
        }
        seq.samples.insert(seq.samples.end(), img.samples.begin(), img.samples.end());
        ++seq.dims.frames;
    }
    return seq;
}

Volume gray_volume(const FrameSequence& frames) {
    Volume v(frames.dims);
    if (frames.channels == 1) {
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = frames.samples[k];
    } else {
        // Rec. 601 luma
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto* p = &frames.samples[3 * k];
            v[k] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        }
    }
    return v;
}

RgbVolume rgb_volume(const FrameSequence& frames) {
    RgbVolume out{frames.dims, std::vector<std::array<std::uint8_t, 3>>(frames.dims.voxels())};
    for (std::size_t k = 0; k < out.pixels.size(); ++k) {
        if (frames.channels == 3) {
            out.pixels[k] = {frames.samples[3 * k], frames.samples[3 * k + 1], frames.samples[3 * k + 2]};
        } else {
            const auto g = frames.samples[k];
            out.pixels[k] = {g, g, g};
        }
    }
    return out;
}

ExportRange write_pgm_sequence(const fs::path& dir, const SaliencyMap& z) {
    fs::create_directories(dir);
    ExportRange range{0.0, 0.0};
    if (!z.empty()) {
        const auto [lo, hi] = std::minmax_element(z.values().begin(), z.values().end());
        range = {*lo, *hi};
    }
    const double span = range.max - range.min;
    const Dims d = z.dims();
    for (std::size_t t = 0; t < d.frames; ++t) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05zu.pgm", t);
        write_atomically(dir / name, [&](std::ostream& out) {
            out << "P5\n" << d.cols << ' ' << d.rows << "\n255\n";
            std::vector<std::uint8_t> bytes(d.frame_size());
            const auto frame = z.frame(t);
            for (std::size_t k = 0; k < bytes.size(); ++k) {
                const double unit = span > 0.0 ? (frame[k] - range.min) / span : 0.0;
                bytes[k] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(unit, 0.0, 1.0)));
            }
            out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        });
    }
    write_atomically(dir / "normalization.txt", [&](std::ostream& out) {
        out << "min " << format_double(range.min) << "\nmax " << format_double(range.max) << '\n';
    });
    return range;
}

void write_atomically(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        try {
            writer(out);
        } catch (...) {
            out.close();
            fs::remove(tmp);
            throw;
        }
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("write failed for " + path.string());
        }
    }
    fs::rename(tmp, path);
}

std::string format_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, p);
}

}  // namespace stsal
