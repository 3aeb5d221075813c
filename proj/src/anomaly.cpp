#include "stsal/anomaly.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "stsal/io.hpp"

namespace stsal {

std::vector<double> frame_scores(const SaliencyMap& z) {
    require_valid(z, "frame_scores");
    std::vector<double> scores(z.frames());
    const double inv = 1.0 / static_cast<double>(z.dims().frame_size());
    for (std::size_t t = 0; t < z.frames(); ++t) {
        double sum = 0.0;
        for (const double v : z.frame(t)) sum += v;
        scores[t] = sum * inv;
    }
    return scores;
}

std::vector<std::uint8_t> abnormal_frames(const std::vector<double>& scores, double threshold) {
    if (!std::isfinite(threshold)) throw std::invalid_argument("abnormal_frames: threshold must be finite");
    std::vector<std::uint8_t> flags(scores.size());
    for (std::size_t t = 0; t < scores.size(); ++t) flags[t] = scores[t] > threshold ? 1 : 0;
    return flags;
}

Mask abnormal_regions(const SaliencyMap& z, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("abnormal_regions: k must be > 0");
    require_valid(z, "abnormal_regions");
    double sum = 0.0;
    for (const double v : z.values()) sum += v;
    const double cut = k * (sum / static_cast<double>(z.size()));
    Mask flags(z.dims(), 0);
    for (std::size_t n = 0; n < z.size(); ++n) flags[n] = z[n] > cut ? 1 : 0;
    return flags;
}

void write_frame_scores_csv(std::ostream& out, const std::vector<double>& scores) {
    out << "frame,score\n";
    for (std::size_t t = 0; t < scores.size(); ++t) out << t << ',' << format_double(scores[t]) << '\n';
}

std::vector<std::uint8_t> read_frame_labels_csv(std::istream& in, std::size_t frames) {
    std::vector<int> labels(frames, -1);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        long long frame = -1, label = -1;
        try {
            if (comma == std::string::npos) throw std::invalid_argument("no comma");
            std::size_t ua = 0, ub = 0;
            const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
            frame = std::stoll(a, &ua);
            label = std::stoll(b, &ub);
            if (ua != a.size() || ub != b.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            if (lineno == 1) continue;  // header
            throw std::runtime_error("labels line " + std::to_string(lineno) + ": expected frame,label");
        }
        if (frame < 0 || static_cast<std::size_t>(frame) >= frames) {
            throw std::runtime_error("labels line " + std::to_string(lineno) + ": frame out of range");
        }
        if (label != 0 && label != 1) throw std::runtime_error("labels line " + std::to_string(lineno) + ": label must be 0 or 1");
        if (labels[static_cast<std::size_t>(frame)] != -1) {
            throw std::runtime_error("labels line " + std::to_string(lineno) + ": frame labelled twice");
        }
        labels[static_cast<std::size_t>(frame)] = static_cast<int>(label);
    }
    std::vector<std::uint8_t> out(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        if (labels[t] < 0) throw std::runtime_error("labels: frame " + std::to_string(t) + " has no label");
        out[t] = static_cast<std::uint8_t>(labels[t]);
    }
    return out;
}

}  // namespace stsal
