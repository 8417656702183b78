#pragma once

#include <complex>
#include <vector>

namespace vorwave {

/// In-place radix-2 FFT. `data.size()` must be a power of two.
/// `inverse` applies the conjugate transform and divides by the length.
void fft(std::vector<std::complex<double>>& data, bool inverse);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace vorwave
