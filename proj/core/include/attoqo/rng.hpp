#pragma once

#include <cstdint>

namespace attoqo {

// Deterministic, platform-independent random streams. std:: distributions are
// implementation-defined, so sampling is hand-rolled to keep golden digests
// stable across standard libraries. Streams derived from (seed, block) are
// independent of how work is partitioned across threads.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, std::uint64_t block = 0);

  std::uint64_t next_u64();
  double uniform();            // in (0, 1]
  double normal();             // standard normal, Box-Muller pair (no cache)
  std::uint64_t poisson(double mean);

private:
  std::uint64_t s_[4];
};

// inverse standard normal CDF (Acklam's rational approximation, |err| < 2e-9)
double norminv(double p);

} // namespace attoqo
