#pragma once

#include <complex>
#include <vector>

namespace attoqo {

// Forward DFT, X[k] = sum_n x[n] exp(-i 2 pi k n / N). Input is copied and
// zero padded to the requested length (next power of two if pad == 0).
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& x,
                                              std::size_t pad = 0);

std::size_t next_pow2(std::size_t n);

} // namespace attoqo
