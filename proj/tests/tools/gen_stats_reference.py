"""Regenerates tests/unit/stats_reference.inc from scipy.

Rank-sum p-values come from scipy's asymptotic Mann-Whitney U test (tie
corrected, continuity corrected); A12 is brute-forced over all pairs.
"""
import numpy as np
from scipy.stats import mannwhitneyu


def a12(a, b):
    wins = sum(1 for x in a for y in b if x > y)
    ties = sum(1 for x in a for y in b if x == y)
    return (wins + 0.5 * ties) / (len(a) * len(b))


def main():
    rng = np.random.default_rng(12345)
    vecs = [
        (list(range(1, 11)), list(range(11, 21))),
        ([1, 2, 3], [2, 3, 4]),
        ([5, 5, 5, 6], [5, 6, 6, 7]),
        ([9, 9, 8, 9, 9], [9, 8, 7, 7, 9, 9]),
    ]
    for i in range(21):
        n1 = int(rng.integers(3, 21))
        n2 = int(rng.integers(3, 21))
        if i % 3 == 0:
            a = rng.integers(0, 8, n1).astype(float)
            b = rng.integers(1, 9, n2).astype(float)
        else:
            a = np.round(rng.normal(10, 3, n1), 2)
            b = np.round(rng.normal(11, 3, n2), 2)
        vecs.append((list(a), list(b)))
    print("// Generated by tests/tools/gen_stats_reference.py. Do not edit.")
    for a, b in vecs:
        p = mannwhitneyu(a, b, alternative="two-sided", use_continuity=True,
                         method="asymptotic").pvalue
        fa = ", ".join(repr(float(x)) for x in a)
        fb = ", ".join(repr(float(x)) for x in b)
        print("{{%s}, {%s}, %.17g, %.17g}," % (fa, fb, p, a12(a, b)))


if __name__ == "__main__":
    main()
