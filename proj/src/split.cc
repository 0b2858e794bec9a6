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

#include "spatialqa/split.h"

#include <algorithm>
#include <numeric>

#include "spatialqa/errors.h"

namespace spatialqa {

uint64_t UniformBelow(std::mt19937_64 &rng, uint64_t bound) {
  // Reject the low 2^64 mod bound values so every residue is equally likely.
  const uint64_t threshold = (0 - bound) % bound;
  while (true) {
    uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

std::vector<size_t> SeededPermutation(size_t n, uint64_t seed) {
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::mt19937_64 rng(seed);
  for (size_t i = n; i-- > 1;) {
    size_t j = static_cast<size_t>(UniformBelow(rng, i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

CorpusSplit SplitCorpus(const Corpus &corpus, uint64_t seed,
                        const std::array<size_t, 3> &sizes) {
  const size_t n = corpus.documents.size();
  if (sizes[0] + sizes[1] + sizes[2] != n) {
    throw Error(ErrorCode::kSizeMismatch,
                std::to_string(sizes[0]) + "+" + std::to_string(sizes[1]) +
                    "+" + std::to_string(sizes[2]) + " != " + std::to_string(n));
  }
  Corpus sorted = corpus;
  SortByDocId(sorted);
  std::vector<size_t> perm = SeededPermutation(n, seed);
  CorpusSplit split;
  Corpus *parts[3] = {&split.train, &split.dev, &split.test};
  size_t next = 0;
  for (int p = 0; p < 3; ++p) {
    for (size_t k = 0; k < sizes[p]; ++k, ++next) {
      parts[p]->documents.push_back(sorted.documents[perm[next]]);
    }
  }
  return split;
}

}  // namespace spatialqa
