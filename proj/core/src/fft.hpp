#pragma once

#include <complex>
#include <cstddef>

#include <fftw3.h>

namespace wedgeqft::detail {

std::size_t smooth_even_size(std::size_t n);

// Owning forward DFT (e^{-2 pi i jk/n}) of rank 1 or 2 over a square grid.
class ForwardFft {
public:
    ForwardFft(std::size_t n, int rank);
    ~ForwardFft();
    ForwardFft(const ForwardFft&) = delete;
    ForwardFft& operator=(const ForwardFft&) = delete;

    std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buf_); }
    std::size_t size() const { return total_; }
    void execute();

private:
    std::size_t total_;
    fftw_complex* buf_;
    fftw_plan plan_;
};

} // namespace wedgeqft::detail
