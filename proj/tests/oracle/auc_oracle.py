#!/usr/bin/env python3
"""Brute-force pairwise AUC for the frozen cases in test_metrics.cpp.

AUC = (1/(n1*n0)) * sum over (positive, negative) pairs of
      1 if s_pos > s_neg, 0.5 if equal, 0 otherwise.

Every score below is a small dyadic-friendly decimal; the pair sums divide
exactly or give short fractions, so the printed repr strings are stable.

Run:  python3 tests/oracle/auc_oracle.py
"""

from fractions import Fraction

CASES = {
    "ties_mixed": (
        [0.9, 0.8, 0.8, 0.7, 0.6, 0.5, 0.5, 0.5, 0.3, 0.1],
        [1, 1, 0, 0, 1, 1, 0, 0, 0, 1],
    ),
    "perfect": ([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]),
    "reversed": ([0.1, 0.2, 0.8, 0.9], [1, 1, 0, 0]),
    "all_tied": ([0.5, 0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0, 0]),
    "single_pair_tie": ([0.8, 0.5, 0.5, 0.2], [1, 1, 0, 0]),
    "imbalanced": ([0.9, 0.4, 0.6, 0.4, 0.3, 0.6, 0.2], [1, 0, 1, 0, 0, 0, 0]),
}


def brute_auc(scores, labels):
    pos = [Fraction(s).limit_denominator(10**6) for s, y in zip(scores, labels) if y == 1]
    neg = [Fraction(s).limit_denominator(10**6) for s, y in zip(scores, labels) if y == 0]
    total = Fraction(0)
    for p in pos:
        for q in neg:
            if p > q:
                total += 1
            elif p == q:
                total += Fraction(1, 2)
    return total / (len(pos) * len(neg))


def main():
    for name, (scores, labels) in CASES.items():
        auc = brute_auc(scores, labels)
        print(f"{name}: {auc} = {float(auc)!r}")


if __name__ == "__main__":
    main()
