// Copyright 2026 The maskdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MASKDP_SEEDING_H_
#define MASKDP_SEEDING_H_

#include <cstdint>
#include <random>

namespace maskdp {

using Rng = std::mt19937_64;

// Independent sub-streams derived from one user seed. The numeric values are
// part of the replay contract; do not renumber.
enum class Stream : uint64_t {
  kMasking = 1,
  kNoise = 2,
  kAuditOuter = 3,
  kAuditInner = 4,
  kSubspace = 5,
  kSphere = 6,
  kAuditData = 7,
};

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based split: (seed, stream, index) -> child seed.
inline uint64_t DeriveSeed(uint64_t seed, Stream stream, uint64_t index = 0) {
  uint64_t x = SplitMix64(seed);
  x = SplitMix64(x ^ (static_cast<uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
  return SplitMix64(x ^ (index * 0x8cb92ba72f3d8dd7ULL));
}

inline Rng MakeRng(uint64_t seed, Stream stream, uint64_t index = 0) {
  return Rng(DeriveSeed(seed, stream, index));
}

}  // namespace maskdp

#endif  // MASKDP_SEEDING_H_
