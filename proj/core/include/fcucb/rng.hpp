#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace fcucb {

/// What a stream is used for. Part of the stream address, so outcome and
/// filter draws for the same (replication, round, arm) never overlap.
enum class StreamPurpose : std::uint32_t {
  Outcome = 1,
  Filter = 2,
  Policy = 3,
  TieBreak = 4,
  Gamma = 5,
};

struct StreamKey {
  std::uint64_t replication = 0;
  std::uint64_t round = 0;
  std::uint32_t arm = 0;
  StreamPurpose purpose = StreamPurpose::Outcome;
};

/// xoshiro256** engine. Satisfies UniformRandomBitGenerator, so it plugs
/// into the <random> distributions.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::array<std::uint64_t, 4> state_{};
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives independent streams from a root seed. Two factories with the
/// same root seed hand out bit-identical streams for the same key, which
/// gives different policies common random numbers.
class StreamFactory {
 public:
  explicit StreamFactory(std::uint64_t root_seed) : root_seed_(root_seed) {}

  [[nodiscard]] std::uint64_t root_seed() const { return root_seed_; }
  [[nodiscard]] std::uint64_t derive_seed(const StreamKey& key) const;
  [[nodiscard]] RandomStream stream(const StreamKey& key) const {
    return RandomStream(derive_seed(key));
  }

 private:
  std::uint64_t root_seed_;
};

}  // namespace fcucb
