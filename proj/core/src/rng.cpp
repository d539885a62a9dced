#include "fcucb/rng.hpp"

namespace fcucb {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) {
  // SplitMix64 expansion; never produces the all-zero state.
  std::uint64_t s = seed;
  for (auto& word : state_) {
    s += kGolden;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    word = z ^ (z >> 31);
  }
}

RandomStream::result_type RandomStream::operator()() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform01() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t StreamFactory::derive_seed(const StreamKey& key) const {
  std::uint64_t h = mix64(root_seed_ ^ 0x6A09E667F3BCC908ULL);
  h = mix64(h ^ key.replication);
  h = mix64(h ^ key.round);
  h = mix64(h ^ ((static_cast<std::uint64_t>(key.arm) << 8) |
                 static_cast<std::uint64_t>(key.purpose)));
  return h;
}

}  // namespace fcucb
