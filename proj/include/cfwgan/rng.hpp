// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace cfwgan {

// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept;

// Counter-based stream. The 64-bit seed is the Philox key and the stream index
// occupies the upper half of the counter, so (seed, stream) pairs never overlap
// and any number of streams can be handed to independent consumers.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  double normal() noexcept;
  // Student-t with the given degrees of freedom.
  double student_t(double dof);
  std::uint64_t below(std::uint64_t n) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint32_t next32() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Disjoint ranges of stream indices, so that data rows, projection directions,
// Monte Carlo draws and optimizer minibatches never share a stream even when
// they are keyed by the same seed.
inline constexpr std::uint64_t kStreamData = 0;
inline constexpr std::uint64_t kStreamProjection = 1ull << 62;
inline constexpr std::uint64_t kStreamMonteCarlo = 2ull << 62;
inline constexpr std::uint64_t kStreamOptimizer = 3ull << 62;

// Uniform direction on the unit sphere in R^d (normalized isotropic Gaussian).
std::vector<double> sample_sphere_direction(std::size_t d, RngStream& rng);
void sample_sphere_direction(std::size_t d, RngStream& rng, double* out);

}  // namespace cfwgan
