#include "stsal/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace stsal {

using cd = std::complex<double>;

namespace {

// The FFTW planner is not reentrant; execution of an existing plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cd* p) { return reinterpret_cast<fftw_complex*>(p); }

int fftw_sign(FftDirection dir) { return dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD; }

}  // namespace

struct FftPlan::Impl {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (inverse) fftw_destroy_plan(inverse);
    }
};

FftPlan::FftPlan(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
    if (n == 0) throw std::invalid_argument("FftPlan: length must be positive");
    std::vector<cd> a(n), b(n);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    impl_->forward = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
    impl_->inverse = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
    if (!impl_->forward || !impl_->inverse) throw std::runtime_error("FftPlan: planner failed");
}

FftPlan::~FftPlan() = default;

void FftPlan::execute(std::span<const cd> in, std::span<cd> out, FftDirection dir) const {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FftPlan::execute: buffer size mismatch");
    if (in.data() == out.data()) throw std::invalid_argument("FftPlan::execute: in and out must not alias");
    // Out-of-place complex plans leave the input untouched.
    fftw_execute_dft(dir == FftDirection::Forward ? impl_->forward : impl_->inverse,
                     as_fftw(const_cast<cd*>(in.data())), as_fftw(out.data()));
}

std::shared_ptr<const FftPlan> FftPlan::get(std::size_t n) {
    static std::mutex m;
    static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
    std::lock_guard lock(m);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const FftPlan>(n);
    return slot;
}

void transform3_inplace(ComplexVolume& y, FftDirection dir) {
    const Dims d = y.dims();
    if (d.empty()) throw std::invalid_argument("transform3_inplace: empty volume");
    fftw_complex* data = as_fftw(y.values().data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        // Estimate-mode planning does not touch the buffer.
        plan = fftw_plan_dft_3d(static_cast<int>(d.frames), static_cast<int>(d.rows), static_cast<int>(d.cols), data,
                                data, fftw_sign(dir), FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("transform3_inplace: planner failed");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

ComplexVolume forward_dft3(const Volume& x) {
    require_valid(x, "forward_dft3");
    std::vector<cd> data(x.values().begin(), x.values().end());
    ComplexVolume y(x.dims(), std::move(data));
    transform3_inplace(y, FftDirection::Forward);
    return y;
}

ComplexVolume forward_dft3(ComplexVolume x) {
    require_valid(x, "forward_dft3");
    transform3_inplace(x, FftDirection::Forward);
    return x;
}

ComplexVolume inverse_dft3(ComplexVolume y) {
    require_valid(y, "inverse_dft3");
    transform3_inplace(y, FftDirection::Inverse);
    const double scale = 1.0 / static_cast<double>(y.size());
    for (auto& v : y.values()) v *= scale;
    return y;
}

}  // namespace stsal
