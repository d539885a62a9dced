#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fcucb/rng.hpp"

using namespace fcucb;

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(99), b(99);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RandomStream, Uniform01InHalfOpenUnitInterval) {
  RandomStream rng(5);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(StreamFactory, KeysAddressDistinctStreams) {
  const StreamFactory f(7);
  std::set<std::uint64_t> seeds;
  for (std::uint64_t rep = 0; rep < 4; ++rep) {
    for (std::uint64_t t = 1; t <= 50; ++t) {
      for (std::uint32_t arm = 0; arm < 4; ++arm) {
        for (auto p : {StreamPurpose::Outcome, StreamPurpose::Filter,
                       StreamPurpose::Policy, StreamPurpose::TieBreak}) {
          seeds.insert(f.derive_seed({rep, t, arm, p}));
        }
      }
    }
  }
  EXPECT_EQ(seeds.size(), 4u * 50u * 4u * 4u);
}

TEST(StreamFactory, RootSeedChangesEveryStream) {
  const StreamKey key{3, 17, 2, StreamPurpose::Filter};
  EXPECT_NE(StreamFactory(1).derive_seed(key), StreamFactory(2).derive_seed(key));
  EXPECT_EQ(StreamFactory(1).derive_seed(key), StreamFactory(1).derive_seed(key));
}

TEST(RandomStream, WorksWithStandardDistributions) {
  RandomStream a(11), b(11);
  std::poisson_distribution<int> pa(4.0), pb(4.0);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(pa(a), pb(b));
}
