"""Modular rank over prime fields and reproducible random streams."""

from __future__ import annotations

import zlib
from fractions import Fraction
from typing import Sequence

import numpy as np

# primes between 2^30 and 2^31, so products of two residues fit in int64
DEFAULT_PRIMES: tuple[int, ...] = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


def _tag(x: int | str) -> int:
    if isinstance(x, int):
        return x & 0xFFFFFFFF
    return zlib.crc32(x.encode())


def rng_for(seed: int, *tags: int | str) -> np.random.Generator:
    """A generator determined by ``seed`` and the tags, independent of call order."""
    words = [seed & 0xFFFFFFFF, (seed >> 32) & 0xFFFFFFFF] + [_tag(t) for t in tags]
    return np.random.default_rng(np.random.SeedSequence(words))


def modular_rank(M: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p) by Gaussian elimination."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = np.nonzero(A[r + 1 :, c])[0] + r + 1
        if below.size:
            f = A[below, c].reshape(-1, 1)
            A[below, c:] = (A[below, c:] - f * A[r, c:]) % p
        r += 1
    return r


def reduce_fraction(x: Fraction, p: int) -> int | None:
    """``x`` mod p, or None when p divides the denominator."""
    den = x.denominator % p
    if den == 0:
        return None
    return (x.numerator % p) * pow(den, p - 2, p) % p


def reduce_matrix(rows: Sequence[Sequence[Fraction]], p: int) -> np.ndarray | None:
    out = np.zeros((len(rows), len(rows[0]) if rows else 0), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x:
                v = reduce_fraction(x, p)
                if v is None:
                    return None
                out[i, j] = v
    return out
