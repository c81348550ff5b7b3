#!/usr/bin/env python3
# Copyright 2026 The qsubset Authors
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
"""Independent enumeration of the reference fixtures.

Computes, straight from the definitions and with exact fractions, the values
frozen into the C++ tests: feasible-set counts, the infeasible/feasible ratio,
per-bit conditional probabilities along the optimum's bit path, Grover
closed-form probabilities and the knapsack optimum.
"""
from fractions import Fraction
from itertools import product
import math

VALUES = [56, 54, 52, 48, 28, 12, 2]
TARGET = 102
M = 9


def subset_sums(values):
    n = len(values)
    return [sum(v for k, v in enumerate(values) if mask >> k & 1) for mask in range(1 << n)]


def main():
    sums = subset_sums(VALUES)
    feasible = [s for s in sums if s < TARGET]
    count_l = len(feasible)
    count_lp = len(sums) - count_l
    phi_max = max(feasible)
    argmax = [mask for mask, s in enumerate(sums) if s == phi_max]
    print(f"count_L={count_l} count_Lprime={count_lp} ratio={Fraction(count_lp, count_l)}")
    print(f"phi_max={phi_max} argmax={argmax}")

    bits = [(phi_max >> (M - 1 - t)) & 1 for t in range(M)]
    print("phi_max bits", bits)
    for t in range(M):
        prefix = [s for s in feasible
                  if all(((s >> (M - 1 - i)) & 1) == bits[i] for i in range(t))]
        if not prefix:
            print(t, "undefined")
            continue
        ones = sum(1 for s in prefix if (s >> (M - 1 - t)) & 1)
        print(f"t={t} p={Fraction(ones, len(prefix))} ({ones}/{len(prefix)})")

    theta = math.asin(math.sqrt(count_l / 128))
    for k in range(6):
        print(f"grover k={k} good={math.sin((2 * k + 1) * theta) ** 2:.17g}")
    print("planned k", max(0, round(math.pi / (4 * theta) - 0.5)))

    weights, kvalues, cap = [2, 3, 4], [3, 4, 5], 6
    best = max(sum(kvalues[i] for i in range(3) if bits_[i])
               for bits_ in product([0, 1], repeat=3)
               if sum(weights[i] for i in range(3) if bits_[i]) < cap)
    print("knapsack best", best)

    print("dp [1,2,3] W7 ->", max(s for s in subset_sums([1, 2, 3]) if s < 7))


if __name__ == "__main__":
    main()
