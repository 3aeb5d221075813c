#include "stsal/volume.hpp"

#include <algorithm>
#include <cmath>

namespace stsal {

std::string to_string(const Dims& d) {
    return std::to_string(d.rows) + "x" + std::to_string(d.cols) + "x" + std::to_string(d.frames);
}

namespace {

void require_nonempty(const Dims& d, const char* what) {
    if (d.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty volume " + to_string(d));
    }
}

}  // namespace

void require_valid(const Volume& x, const char* what) {
    require_nonempty(x.dims(), what);
    if (!std::all_of(x.values().begin(), x.values().end(), [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument(std::string(what) + ": non-finite value in input volume");
    }
}

void require_valid(const ComplexVolume& y, const char* what) {
    require_nonempty(y.dims(), what);
    for (const auto& v : y.values()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + ": non-finite value in spectrum");
        }
    }
}

void require_valid(const SaliencyMap& z, const char* what) {
    require_nonempty(z.dims(), what);
    for (double v : z.values()) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument(std::string(what) + ": saliency values must be finite and >= 0");
        }
    }
}

}  // namespace stsal
