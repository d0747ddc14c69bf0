// Copyright 2026 The bictx Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace bictx::rng {

// SplitMix64 (Vigna). Used only to mix user seeds and stream indices into
// well-separated engine seeds; the draws themselves come from mt19937_64,
// which is fully specified by the standard and therefore bit-identical
// across platforms.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent engine seed from (seed, stream, substream).
/// Distinct triples give unrelated streams, so shot counts drawn in one
/// setting never perturb another, and parallel workers are bit-stable.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t substream = 0) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= stream + 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(s);
  s ^= substream + 0xd1b54a32d192ed03ULL;
  std::uint64_t c = splitmix64(s);
  return a ^ (b << 1 | b >> 63) ^ c;
}

/// A seeded, splittable draw stream. Uniform doubles are built from the raw
/// 64-bit output (not std::uniform_real_distribution, whose mapping is
/// implementation-defined), keeping outputs reproducible everywhere.
class Stream {
 public:
  explicit Stream(std::uint64_t engine_seed) : engine_(engine_seed) {}
  Stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
      : engine_(derive_stream(seed, stream, substream)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double uniform_symmetric() { return 2.0 * uniform() - 1.0; }

  /// Samples an index in {0,1,2,3} from four cell probabilities by
  /// cumulative inversion. Probabilities must be non-negative; any rounding
  /// deficit lands on the last cell.
  int sample4(const std::array<double, 4>& p) {
    const double u = uniform();
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      acc += p[static_cast<std::size_t>(i)];
      if (u < acc) return i;
    }
    return 3;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bictx::rng
