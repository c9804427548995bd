from __future__ import annotations

from fractions import Fraction
from math import comb


def sign_test_exact(n_diff: int, k_better: int) -> Fraction:
    """min(1, 2 * P[Binomial(n, 1/2) >= k]) as an exact fraction; 1 when n is 0."""
    if not 0 <= k_better <= n_diff:
        raise ValueError("need 0 <= k_better <= n_diff")
    if n_diff == 0:
        return Fraction(1)
    tail = sum(comb(n_diff, i) for i in range(k_better, n_diff + 1))
    return min(Fraction(1), Fraction(2 * tail, 2**n_diff))


def sign_test(n_diff: int, k_better: int) -> float:
    return float(sign_test_exact(n_diff, k_better))


SIGNIFICANCE = 0.01


def paired_sign_test(a: list[float], b: list[float]) -> tuple[int, int, int, float]:
    """``(n_diff, a_wins, b_wins, p)`` where lower values win and ties are dropped."""
    a_wins = sum(1 for x, y in zip(a, b) if x < y)
    b_wins = sum(1 for x, y in zip(a, b) if y < x)
    n = a_wins + b_wins
    return n, a_wins, b_wins, sign_test(n, max(a_wins, b_wins))
