#include "fft.hpp"

#include <cstring>

namespace qfall {

Fft1D::Fft1D(std::size_t n) : n_(n), buf_(n) {
    auto* p = reinterpret_cast<fftw_complex*>(buf_.data());
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft1D::~Fft1D() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
}

void Fft1D::forward(std::complex<double>* data) {
    std::memcpy(buf_.data(), data, n_ * sizeof(std::complex<double>));
    fftw_execute(fwd_);
    std::memcpy(data, buf_.data(), n_ * sizeof(std::complex<double>));
}

void Fft1D::inverse(std::complex<double>* data) {
    std::memcpy(buf_.data(), data, n_ * sizeof(std::complex<double>));
    fftw_execute(inv_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] = buf_[i] * scale;
}

}  // namespace qfall
