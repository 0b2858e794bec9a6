#!/usr/bin/env python3
# Copyright 2026 The spatialqa Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference for the seeded split.

Pure-Python MT19937-64 (Matsumoto and Nishimura's reference constants),
rejection-sampled bounded integers and Fisher-Yates. Prints the values
frozen into tests/split_test.cc.
"""

import sys

MASK = (1 << 64) - 1


class MT64:
    NN, MM = 312, 156
    MATRIX_A = 0xB5026F5AA96619E9
    UM, LM = 0xFFFFFFFF80000000, 0x7FFFFFFF

    def __init__(self, seed):
        self.mt = [0] * self.NN
        self.mt[0] = seed & MASK
        for i in range(1, self.NN):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK
        self.mti = self.NN

    def next(self):
        if self.mti >= self.NN:
            mag = (0, self.MATRIX_A)
            for i in range(self.NN):
                x = (self.mt[i] & self.UM) | (self.mt[(i + 1) % self.NN] & self.LM)
                self.mt[i] = self.mt[(i + self.MM) % self.NN] ^ (x >> 1) ^ mag[x & 1]
            self.mti = 0
        x = self.mt[self.mti]
        self.mti += 1
        x ^= (x >> 29) & 0x5555555555555555
        x ^= (x << 17) & 0x71D67FFFEDA60000
        x ^= (x << 37) & 0xFFF7EEE000000000
        x ^= x >> 43
        return x & MASK


def uniform_below(rng, bound):
    threshold = ((1 << 64) - bound) % bound
    while True:
        x = rng.next()
        if x >= threshold:
            return x % bound


def permutation(n, seed):
    rng = MT64(seed)
    p = list(range(n))
    for i in range(n - 1, 0, -1):
        j = uniform_below(rng, i + 1)
        p[i], p[j] = p[j], p[i]
    return p


def main():
    rng = MT64(5489)
    for _ in range(9999):
        rng.next()
    print("mt19937_64 default seed, 10000th:", rng.next())
    print("permutation(10, 42):", permutation(10, 42))
    ids = ["note_%04d" % (i + 1) for i in range(600)]
    perm = permutation(600, 13)
    shuffled = [ids[k] for k in perm]
    train, dev, test = shuffled[:450], shuffled[450:500], shuffled[500:]
    print("train[:10]:", train[:10])
    print("dev:", dev)
    print("test:", test)
    sys.stdout.flush()


if __name__ == "__main__":
    main()
