#pragma once

#include <cstddef>
#include <cstdint>

namespace fcucb {

/// Arms are numbered from 0 inside the library.
using ArmId = std::uint32_t;

/// Index into ActionSpace::combinations().
using CombinationId = std::uint32_t;

/// Rounds are numbered from 1.
using Round = std::uint64_t;

/// The played combination as seen by per-arm models that only need its
/// identity and size (detection tables and size rules).
struct PlayedCombination {
  CombinationId id = 0;
  std::size_t size = 0;
};

}  // namespace fcucb
