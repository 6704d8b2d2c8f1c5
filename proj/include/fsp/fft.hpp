// Real-to-half-complex discrete Fourier transforms (FFTW backend).
//
// Plans are cached per (dim, n) for the lifetime of the process; executing a
// cached plan on caller-provided buffers is thread-safe.  Spectra use the
// FFTW r2c layout: the last axis is halved to n/2+1 complex entries, row-major.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fsp {

class Dft {
public:
    // Cached plan for an n^dim real lattice (n need not match a GridSpec;
    // zero-padded transforms use 2n).
    static const Dft& plan(int dim, int n);

    // out = unnormalized forward transform of in.
    void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out) const;
    // out = inverse transform of in, scaled by 1/n^dim so inverse(forward(u)) == u.
    void inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out) const;

    std::size_t real_size() const { return real_size_; }
    std::size_t spec_size() const { return spec_size_; }
    int dim() const { return dim_; }
    int n() const { return n_; }

    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;
    ~Dft();

private:
    Dft(int dim, int n);

    int dim_;
    int n_;
    std::size_t real_size_;
    std::size_t spec_size_;
    void* fwd_plan_ = nullptr;
    void* inv_plan_ = nullptr;
};

}  // namespace fsp
