#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

namespace qfall {

/// RAII wrapper around a pair of in-place FFTW plans of fixed size.
/// Forward is unnormalized; inverse carries the 1/n factor.
class Fft1D {
  public:
    explicit Fft1D(std::size_t n);
    ~Fft1D();
    Fft1D(const Fft1D&) = delete;
    Fft1D& operator=(const Fft1D&) = delete;

    std::size_t size() const { return n_; }
    void forward(std::complex<double>* data);
    void inverse(std::complex<double>* data);

  private:
    std::size_t n_;
    fftw_plan fwd_;
    fftw_plan inv_;
    std::vector<std::complex<double>> buf_;
};

}  // namespace qfall
