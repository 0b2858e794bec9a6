// Copyright 2026 The spatialqa Authors.
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

#ifndef SPATIALQA_SPLIT_H_
#define SPATIALQA_SPLIT_H_

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "spatialqa/document.h"

namespace spatialqa {

// Uniform integer in [0, bound) from a 64-bit Mersenne Twister by rejection,
// so results do not depend on the standard library's distributions.
uint64_t UniformBelow(std::mt19937_64 &rng, uint64_t bound);

// Fisher-Yates permutation of [0, n): for i = n-1 .. 1, swap i with
// UniformBelow(i + 1). Identical on every platform for a given seed.
std::vector<size_t> SeededPermutation(size_t n, uint64_t seed);

struct CorpusSplit {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Documents are ordered by doc_id, permuted, then cut into consecutive
// train/dev/test blocks. Throws Error(kSizeMismatch) unless the sizes sum to
// the corpus size.
CorpusSplit SplitCorpus(const Corpus &corpus, uint64_t seed,
                        const std::array<size_t, 3> &sizes);

}  // namespace spatialqa

#endif  // SPATIALQA_SPLIT_H_
