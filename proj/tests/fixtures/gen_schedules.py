#!/usr/bin/env python3
# Copyright 2026 The GoodVibes Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent schedule oracle: MT19937-64, SplitMix64 finalizer, Fisher-Yates."""
import sys

M64 = (1 << 64) - 1


class MT64:
    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & M64
        for i in range(1, 312):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & M64
        self.idx = 312

    def _twist(self):
        for i in range(312):
            x = (self.mt[i] & 0xFFFFFFFF80000000) | (self.mt[(i + 1) % 312] & 0x7FFFFFFF)
            xa = x >> 1
            if x & 1:
                xa ^= 0xB5026F5AA96619E9
            self.mt[i] = self.mt[(i + 156) % 312] ^ xa
        self.idx = 0

    def next(self):
        if self.idx >= 312:
            self._twist()
        x = self.mt[self.idx]
        self.idx += 1
        x ^= (x >> 29) & 0x5555555555555555
        x ^= (x << 17) & 0x71D67FFFEDA60000
        x ^= (x << 37) & 0xFFF7EEE000000000
        x ^= x >> 43
        return x & M64

    def uniform(self, lo, hi):
        rng = hi - lo + 1
        limit = M64 - M64 % rng
        while True:
            d = self.next()
            if d < limit:
                return lo + d % rng


def mix(v):
    z = (v + 0x9E3779B97F4A7C15) & M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
    return z ^ (z >> 31)


def schedule(seed, counts=(9, 6, 3, 3, 3)):
    trials = []
    for k, c in enumerate(counts):
        trials += ["S%d" % (k + 1)] * c
    r = MT64(mix(seed))
    for i in range(len(trials), 1, -1):
        j = r.uniform(0, i - 1)
        trials[i - 1], trials[j] = trials[j], trials[i - 1]
    return "".join("%d %s\n" % (i + 1, s) for i, s in enumerate(trials))


if __name__ == "__main__":
    assert MT64(5489).next() == 14514284786278117030
    sys.stdout.write(schedule(int(sys.argv[1])))
