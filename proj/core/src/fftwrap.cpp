#include "attoqo/fftwrap.hpp"

#include <unsupported/Eigen/FFT>

#include "attoqo/errors.hpp"

namespace attoqo {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& x,
                                              std::size_t pad) {
  require(!x.empty(), errc::domain, "fft of empty sequence");
  const std::size_t n = pad == 0 ? next_pow2(x.size()) : pad;
  require(n >= x.size(), errc::domain, "fft pad length shorter than input");
  std::vector<std::complex<double>> in(n, {0.0, 0.0});
  std::copy(x.begin(), x.end(), in.begin());
  std::vector<std::complex<double>> out(n);
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  return out;
}

} // namespace attoqo
