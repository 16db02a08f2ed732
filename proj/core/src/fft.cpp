#include "fft.hpp"

#include <mutex>
#include <new>

namespace wedgeqft::detail {

namespace {
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

std::size_t smooth_even_size(std::size_t n)
{
    if (n < 2)
        n = 2;
    for (std::size_t m = n + (n % 2);; m += 2) {
        std::size_t r = m;
        for (std::size_t p : {2, 3, 5})
            while (r % p == 0)
                r /= p;
        if (r == 1)
            return m;
    }
}

ForwardFft::ForwardFft(std::size_t n, int rank)
    : total_(rank == 2 ? n * n : n)
{
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_ = fftw_alloc_complex(total_);
    if (!buf_)
        throw std::bad_alloc();
    if (rank == 2)
        plan_ = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf_, buf_,
                                 FFTW_FORWARD, FFTW_ESTIMATE);
    else
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
}

ForwardFft::~ForwardFft()
{
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buf_);
}

void ForwardFft::execute() { fftw_execute(plan_); }

} // namespace wedgeqft::detail
