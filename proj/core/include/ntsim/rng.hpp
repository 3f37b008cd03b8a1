#ifndef NTSIM_RNG_HPP
#define NTSIM_RNG_HPP

#include "ntsim/common.hpp"

#include <array>
#include <cstdint>

namespace ntsim {

/// SplitMix64 (Steele, Lea, Flood 2014). Used to expand seeds.
class SplitMix64
{
public:
  explicit
  SplitMix64(std::uint64_t state) noexcept
    : m_state(state)
  {
  }

  std::uint64_t
  next() noexcept;

private:
  std::uint64_t m_state;
};

/// SplitMix64 output function applied to a single word.
std::uint64_t
mix64(std::uint64_t x) noexcept;

/**
 * @brief xoshiro256** 1.0 (Blackman, Vigna) with a portable sampling layer.
 *
 * State is four 64-bit words filled from SplitMix64(seed). All derived draws
 * (unit interval, bounded integers, Bernoulli) are defined here rather than by
 * <random> distributions, so sequences match across standard libraries.
 */
class Rng
{
public:
  explicit
  Rng(std::uint64_t seed) noexcept;

  std::uint64_t
  next_u64() noexcept;

  /// Uniform on [0, 1) with 53 bits of precision.
  double
  uniform01() noexcept;

  /// Uniform on [lo, hi]; unbiased. Requires lo <= hi.
  std::uint64_t
  uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept;

  /// Uniform on [lo, hi).
  double
  uniform_real(double lo, double hi) noexcept;

  /// True with probability p; p <= 0 never, p >= 1 always.
  bool
  bernoulli(double p) noexcept;

  const std::array<std::uint64_t, 4>&
  state() const noexcept
  {
    return m_s;
  }

private:
  std::array<std::uint64_t, 4> m_s;
};

enum class Purpose : std::uint8_t {
  Mobility = 1,
  Strategy = 2,
  App = 3,
  Medium = 4,
  Placement = 5,
};

/// Independent stream for (master_seed, purpose, node); never depends on event order.
Rng
derive_stream(std::uint64_t master_seed, Purpose purpose, NodeId node) noexcept;

} // namespace ntsim

#endif // NTSIM_RNG_HPP
