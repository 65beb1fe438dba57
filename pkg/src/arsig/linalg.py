"""Small exact linear algebra over Q on list-of-rows matrices of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]  # list of rows

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product of an r x k and a k x c matrix.  ``inner`` gives k when r = 0."""
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    c = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * c
        for i in range(k):
            x = row[i]
            if x:
                bi = b[i]
                for j in range(c):
                    y = bi[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def columns(a: Matrix, start: int, stop: int) -> Matrix:
    return [row[start:stop] for row in a]


def reduce_rows(rows: Sequence[Sequence[Fraction]], ncols: int, from_right: bool = False) -> tuple[Matrix, list[int]]:
    """Fully reduced echelon form of the row span.

    Returns ``(basis_rows, pivots)`` with basis_rows[k] equal to 1 at
    pivots[k] and zero at every other pivot.  With ``from_right`` each row's
    pivot is its last nonzero column, so the leftmost coordinates survive in
    a quotient.
    """
    basis: Matrix = []
    pivots: list[int] = []
    order = range(ncols - 1, -1, -1) if from_right else range(ncols)
    for r in rows:
        v = list(r)
        for b, p in zip(basis, pivots):
            if v[p]:
                c = v[p]
                v = [x - c * y for x, y in zip(v, b)]
        piv = next((j for j in order if v[j]), None)
        if piv is None:
            continue
        inv = ONE / v[piv]
        v = [x * inv for x in v]
        for k, (b, p) in enumerate(zip(basis, pivots)):
            if b[piv]:
                c = b[piv]
                basis[k] = [x - c * y for x, y in zip(b, v)]
        basis.append(v)
        pivots.append(piv)
    return basis, pivots


class RowEchelon:
    """Incrementally grown reduced row basis; ``add`` reports whether a vector was new."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: Matrix = []
        self.pivots: list[int] = []

    def add(self, v: Sequence[Fraction]) -> bool:
        w = list(v)
        for b, p in zip(self.rows, self.pivots):
            if w[p]:
                c = w[p]
                w = [x - c * y for x, y in zip(w, b)]
        piv = next((j for j in range(self.ncols) if w[j]), None)
        if piv is None:
            return False
        inv = ONE / w[piv]
        self.rows.append([x * inv for x in w])
        self.pivots.append(piv)
        return True

    def __len__(self) -> int:
        return len(self.rows)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(reduce_rows(rows, ncols)[1])


def quotient(image: Sequence[Sequence[Fraction]], dim: int) -> tuple[Matrix, Matrix]:
    """Projection and section for k^dim / span(image).

    Pivots are taken from the right, so the quotient basis is the classes of
    the unit vectors on the leftmost non-pivot coordinates.  Returns
    ``(Q, S)`` with Q of shape q x dim and S of shape dim x q.
    """
    basis, pivots = reduce_rows(image, dim, from_right=True)
    pset = set(pivots)
    free = [j for j in range(dim) if j not in pset]
    pos = {j: k for k, j in enumerate(free)}
    q = len(free)
    Q = zeros(q, dim)
    for j in free:
        Q[pos[j]][j] = ONE
    for b, p in zip(basis, pivots):
        for j in free:
            if b[j]:
                Q[pos[j]][p] = -b[j]
    S = zeros(dim, q)
    for j in free:
        S[j][pos[j]] = ONE
    return Q, S


def in_span(v: Sequence[Fraction], rows: Sequence[Sequence[Fraction]], ncols: int) -> bool:
    return rank(list(rows) + [list(v)], ncols) == rank(rows, ncols)


def frac_vector(xs: Sequence[int | Fraction]) -> Vector:
    return [Fraction(x) for x in xs]
