#include "fsp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fsp {

namespace {
std::mutex planner_mutex;  // FFTW's planner is not thread-safe
}

Dft::Dft(int dim, int n) : dim_(dim), n_(n) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("Dft: dim must be 1 or 2");
    if (n < 2) throw std::invalid_argument("Dft: n too small");
    const std::size_t nn = static_cast<std::size_t>(n);
    real_size_ = dim == 2 ? nn * nn : nn;
    spec_size_ = dim == 2 ? nn * (nn / 2 + 1) : (nn / 2 + 1);

    std::lock_guard<std::mutex> lock(planner_mutex);
    double* rbuf = fftw_alloc_real(real_size_);
    fftw_complex* cbuf = fftw_alloc_complex(spec_size_);
    // FFTW_UNALIGNED: plans stay valid for any caller buffer.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (dim == 1) {
        fwd_plan_ = fftw_plan_dft_r2c_1d(n, rbuf, cbuf, flags);
        inv_plan_ = fftw_plan_dft_c2r_1d(n, cbuf, rbuf, flags);
    } else {
        fwd_plan_ = fftw_plan_dft_r2c_2d(n, n, rbuf, cbuf, flags);
        inv_plan_ = fftw_plan_dft_c2r_2d(n, n, cbuf, rbuf, flags);
    }
    fftw_free(rbuf);
    fftw_free(cbuf);
    if (!fwd_plan_ || !inv_plan_) throw std::runtime_error("Dft: FFTW planning failed");
}

Dft::~Dft() {
    std::lock_guard<std::mutex> lock(planner_mutex);
    if (fwd_plan_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
    if (inv_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inv_plan_));
}

const Dft& Dft::plan(int dim, int n) {
    static std::mutex cache_mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<Dft>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& slot = cache[{dim, n}];
    if (!slot) slot = std::unique_ptr<Dft>(new Dft(dim, n));
    return *slot;
}

void Dft::forward(const std::vector<double>& in, std::vector<std::complex<double>>& out) const {
    if (in.size() != real_size_) throw std::invalid_argument("Dft::forward: size mismatch");
    out.resize(spec_size_);
    // Out-of-place r2c preserves its input.
    fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_plan_),
                         const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
}

void Dft::inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out) const {
    if (in.size() != spec_size_) throw std::invalid_argument("Dft::inverse: size mismatch");
    // c2r destroys its input; work on a scratch copy.
    std::vector<std::complex<double>> scratch(in);
    out.resize(real_size_);
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_plan_),
                         reinterpret_cast<fftw_complex*>(scratch.data()),
                         out.data());
    const double scale = 1.0 / static_cast<double>(real_size_);
    for (double& x : out) x *= scale;
}

}  // namespace fsp
