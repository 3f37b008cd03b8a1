#include "ntsim/rng.hpp"

#include <bit>

namespace ntsim {

std::uint64_t
SplitMix64::next() noexcept
{
  m_state += 0x9e3779b97f4a7c15ULL;
  return mix64(m_state);
}

std::uint64_t
mix64(std::uint64_t z) noexcept
{
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) noexcept
{
  SplitMix64 sm(seed);
  for (auto& word : m_s) {
    word = sm.next();
  }
}

std::uint64_t
Rng::next_u64() noexcept
{
  const std::uint64_t result = std::rotl(m_s[1] * 5, 7) * 9;
  const std::uint64_t t = m_s[1] << 17;
  m_s[2] ^= m_s[0];
  m_s[3] ^= m_s[1];
  m_s[1] ^= m_s[2];
  m_s[0] ^= m_s[3];
  m_s[2] ^= t;
  m_s[3] = std::rotl(m_s[3], 45);
  return result;
}

double
Rng::uniform01() noexcept
{
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t
Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept
{
  const std::uint64_t range = hi - lo + 1;
  if (range == 0) {
    return next_u64();
  }
  // reject the low (2^64 mod range) values so the modulo is unbiased
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x < threshold);
  return lo + x % range;
}

double
Rng::uniform_real(double lo, double hi) noexcept
{
  return lo + (hi - lo) * uniform01();
}

bool
Rng::bernoulli(double p) noexcept
{
  if (p <= 0.0) {
    return false;
  }
  if (p >= 1.0) {
    return true;
  }
  return uniform01() < p;
}

Rng
derive_stream(std::uint64_t master_seed, Purpose purpose, NodeId node) noexcept
{
  std::uint64_t key = (static_cast<std::uint64_t>(purpose) << 32) | to_index(node);
  return Rng(mix64(mix64(master_seed) ^ mix64(key + 0x9e3779b97f4a7c15ULL)));
}

} // namespace ntsim
