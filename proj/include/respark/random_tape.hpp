// Copyright 2026 The respark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RESPARK_RANDOM_TAPE_HPP
#define RESPARK_RANDOM_TAPE_HPP

#include <array>
#include <cstdint>

namespace respark {

/// Philox4x32-10 block function (Salmon et al., SC'11). Pure function of
/// (key, counter); no internal state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Independent sub-streams of one tape.
enum class TapeStream : std::uint32_t {
  kSampling = 0,    // u_{s,e,j}: copy keep/add decisions
  kNoise = 1,       // injected resistance noise, keyed by (s, e)
  kDominating = 2,  // draws for 1/w_0 samples
  kAuxiliary = 3,   // anything else (replays, seeding)
};

/// Counter-based uniform source keyed by (seed, s, e, j). Every value depends
/// only on its key, never on call order, so replays are bit-exact and any
/// subset of draws can be recomputed in isolation.
class RandomTape {
 public:
  explicit RandomTape(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Raw 64 bits for the key.
  std::uint64_t bits(std::uint32_t s, std::uint32_t e, std::uint32_t j,
                     TapeStream stream = TapeStream::kSampling) const;

  /// u in the open interval (0, 1): (k + 0.5) / 2^53 for a 53-bit k.
  double uniform(std::uint32_t s, std::uint32_t e, std::uint32_t j,
                 TapeStream stream = TapeStream::kSampling) const;

  /// The copy-keep decision I{u_{s,e,j} <= ratio}.
  bool keep(std::uint32_t s, std::uint32_t e, std::uint32_t j, double ratio) const {
    return uniform(s, e, j) <= ratio;
  }

  /// Seed for a derived tape (e.g. trial t of an experiment).
  std::uint64_t derive_seed(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

}  // namespace respark

#endif  // RESPARK_RANDOM_TAPE_HPP
