#include "ntsim/rng.hpp"

#include <gtest/gtest.h>

#include <set>

namespace ntsim {
namespace {

// Reference values were produced by an independent Python transcription of
// SplitMix64 and xoshiro256**.

TEST(SplitMix64, PublishedSequence)
{
  SplitMix64 sm(0);
  EXPECT_EQ(sm.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(sm.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(sm.next(), 0x06c45d188009454fULL);
}

TEST(Rng, FrozenOutputs)
{
  Rng r0(0);
  EXPECT_EQ(r0.next_u64(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(r0.next_u64(), 0xbf6e1f784956452aULL);
  EXPECT_EQ(r0.next_u64(), 0x1a5f849d4933e6e0ULL);
  EXPECT_EQ(r0.next_u64(), 0x6aa594f1262d2d2cULL);

  Rng r1(1);
  EXPECT_EQ(r1.next_u64(), 0xb3f2af6d0fc710c5ULL);
  EXPECT_EQ(r1.next_u64(), 0x853b559647364ceaULL);

  Rng r42(42);
  EXPECT_EQ(r42.next_u64(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(r42.next_u64(), 0x6104d9866d113a7eULL);
}

TEST(Rng, Uniform01Frozen)
{
  Rng r(7);
  EXPECT_DOUBLE_EQ(r.uniform01(), 0.7005764821796896);
  EXPECT_DOUBLE_EQ(r.uniform01(), 0.2787512294737843);
  EXPECT_DOUBLE_EQ(r.uniform01(), 0.8396274618764198);
}

TEST(Rng, DeriveStreamFrozen)
{
  Rng r = derive_stream(1, Purpose::Strategy, NodeId{3});
  EXPECT_EQ(r.next_u64(), 0x30c21712edf63af2ULL);
  EXPECT_EQ(r.next_u64(), 0x4f27ba4fe60d8386ULL);
}

TEST(Rng, UniformIntBounds)
{
  Rng r(5);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    auto v = r.uniform_int(3, 9);
    ASSERT_GE(v, 3u);
    ASSERT_LE(v, 9u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(r.uniform_int(4, 4), 4u);
}

TEST(Rng, BernoulliDegenerateDrawsNothing)
{
  Rng a(9), b(9);
  EXPECT_FALSE(a.bernoulli(0.0));
  EXPECT_TRUE(a.bernoulli(1.0));
  EXPECT_EQ(a.state(), b.state());
}

TEST(DeriveStream, SameTripleSameDraws)
{
  auto a = derive_stream(11, Purpose::Mobility, NodeId{4});
  auto b = derive_stream(11, Purpose::Mobility, NodeId{4});
  for (int i = 0; i < 100; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
  }
}

TEST(DeriveStream, DistinctNodesAndPurposes)
{
  std::set<std::uint64_t> firsts;
  for (std::uint32_t n = 0; n < 1000; ++n) {
    for (auto p : {Purpose::Mobility, Purpose::Strategy, Purpose::App, Purpose::Medium,
                   Purpose::Placement}) {
      firsts.insert(derive_stream(1, p, NodeId{n}).next_u64());
    }
  }
  EXPECT_EQ(firsts.size(), 5000u);
  EXPECT_NE(derive_stream(1, Purpose::Mobility, NodeId{0}).next_u64(),
            derive_stream(2, Purpose::Mobility, NodeId{0}).next_u64());
}

} // namespace
} // namespace ntsim
