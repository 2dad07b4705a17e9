"""Shared fixtures, random-element helpers and an independent product oracle."""

from __future__ import annotations

import random

import pytest

from nctorus.algebra import TorusElement, TorusParams, distance

THETA = 0.3819660113
ALT_THETA = 0.7182818285


@pytest.fixture
def params():
    return TorusParams(THETA)


@pytest.fixture
def rng():
    return random.Random(20260808)


def assert_close(a: TorusElement, b: TorusElement, tol: float = 1e-12):
    d = distance(a, b)
    assert d <= tol, f"element distance {d} > {tol}\n  a={a!r}\n  b={b!r}"


# -- brute-force normal-ordering oracle ------------------------------------
#
# The only axiom used is u v = lambda v u, applied one letter at a time:
# swapping adjacent v^e / u^f letters costs lambda^{-e f}.  Independent of
# the closed-form monomial rule in nctorus.algebra.


def _letters(m: int, n: int) -> list[tuple[str, int]]:
    word = []
    word += [("u", 1 if m > 0 else -1)] * abs(m)
    word += [("v", 1 if n > 0 else -1)] * abs(n)
    return word


def oracle_monomial_product(m, n, p, q) -> tuple[int, int, int]:
    """Normal-order (u^m v^n)(u^p v^q) by bubble sort; return (M, N, lam_exp)."""
    word = _letters(m, n) + _letters(p, q)
    lam_exp = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            (g1, e1), (g2, e2) = word[i], word[i + 1]
            if g1 == "v" and g2 == "u":
                lam_exp += -e1 * e2
                word[i], word[i + 1] = word[i + 1], word[i]
                changed = True
    total_u = sum(e for g, e in word if g == "u")
    total_v = sum(e for g, e in word if g == "v")
    return (total_u, total_v, lam_exp)


def oracle_monomial_star(m, n) -> tuple[int, int, int]:
    """(u^m v^n)* = v^{-n} u^{-m}, normal-ordered by the same bubble sort."""
    return oracle_monomial_product(0, -n, -m, 0)
