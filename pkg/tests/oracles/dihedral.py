"""Invariant-theory oracle for the binary dihedral groups, independent of the mesh model.

The group BD of order 4N (N = n - 2) acts on S = k[x1, x2] over GF(p) with
p = 1 mod 4N.  For each irreducible V_t the module M_t = (S (x) V_t)^G is
computed degree by degree with the Reynolds operator, its top M_t / m M_t
from products with invariants, and Hom(M_t, M_m) = (S (x) Hom(V_t, V_m))^G.
The coverage space of t on m is the span of the induced maps on tops, and
the block value is the largest n for which d_t = rank_t * rank_m random
copies, each with n random components, give a full-rank map onto the top
of M_m^n.

Vertex order matches the catalog: R, the other one-dimensional rep with a
trivial, the two-dimensional reps k = 1..N-1 (vertex k + 1), then the two
one-dimensional reps with a = -1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % q for q in range(2, int(p**0.5) + 1))


def _prime_1_mod(mod: int, start: int = 10**6) -> int:
    p = start - start % mod + 1
    while not _is_prime(p):
        p += mod
    return p


class _Echelon:
    """Reduced row basis mod p, pivots tracked by column."""

    def __init__(self, p: int, ncols: int):
        self.p, self.ncols = p, ncols
        self.rows: dict[int, list[int]] = {}

    def copy(self) -> "_Echelon":
        e = _Echelon(self.p, self.ncols)
        e.rows = dict(self.rows)
        return e

    def reduce(self, v: list[int]) -> list[int]:
        p = self.p
        v = list(v)
        for piv, r in self.rows.items():
            c = v[piv]
            if c:
                v = [(x - c * y) % p for x, y in zip(v, r)]
        return v

    def add(self, v: list[int]) -> bool:
        p = self.p
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = pow(v[piv], p - 2, p)
        v = [x * inv % p for x in v]
        for k, r in list(self.rows.items()):
            if r[piv]:
                c = r[piv]
                self.rows[k] = [(x - c * y) % p for x, y in zip(r, v)]
        self.rows[piv] = v
        return True


@dataclass
class DihedralOracle:
    n: int
    max_degree: int
    p: int = field(init=False)

    def __post_init__(self) -> None:
        N = self.n - 2
        self.N = N
        self.p = p = _prime_1_mod(4 * N)
        z = next(w for g in range(2, p) if pow(w := pow(g, (p - 1) // (2 * N), p), N, p) == p - 1)
        i4 = next(w for g in range(2, p) if (w := pow(g, (p - 1) // 4, p)) * w % p == p - 1)
        reps = [([[1]], [[1]]), ([[1]], [[p - 1]])]
        for k in range(1, N):
            reps.append(([[pow(z, k, p), 0], [0, pow(z, 2 * N - k, p)]], [[0, 1], [(-1) ** k % p, 0]]))
        b = 1 if N % 2 == 0 else i4
        reps += [([[p - 1]], [[b]]), ([[p - 1]], [[(p - b) % p]])]
        self.dims = [len(A) for A, _ in reps]
        self.nv = len(reps)
        # every element a^j b^e in every representation; index 2 is the natural one
        self.elements = []
        for j in range(2 * N):
            for e in range(2):
                mats = []
                for A, B in reps:
                    M = _identity(len(A))
                    for _ in range(j):
                        M = _matmul(M, A, p)
                    if e:
                        M = _matmul(M, B, p)
                    mats.append(M)
                self.elements.append(mats)
        self._inverses = [[_inv2(M, p) for M in mats] for mats in self.elements]
        self._modules = {t: self._module(t) for t in range(self.nv)}

    # -- invariants ---------------------------------------------------------

    def _monomial_image(self, g: int, a: int, d: int) -> tuple[int, int]:
        """g acts by f(x) -> f(g^-1 x); the natural matrices are monomial."""
        A = self._inverses[g][2]
        p = self.p
        if A[0][1] == 0:
            return pow(A[0][0], a, p) * pow(A[1][1], d - a, p) % p, a
        return pow(A[0][1], a, p) * pow(A[1][0], d - a, p) % p, d - a

    def invariants(self, d: int, left: int, right: int | None = None) -> list[list[int]]:
        """Basis of (S_d (x) V_left)^G, or of (S_d (x) Hom(V_right, V_left))^G."""
        p = self.p
        dl = self.dims[left]
        dr = 1 if right is None else self.dims[right]
        size = (d + 1) * dl * dr
        ech = _Echelon(p, size)
        out = []
        for a0 in range(d + 1):
            for i0 in range(dl):
                for j0 in range(dr):
                    v = [0] * size
                    for g, mats in enumerate(self.elements):
                        c, a = self._monomial_image(g, a0, d)
                        L = mats[left]
                        Rinv = self._inverses[g][right] if right is not None else [[1]]
                        for i in range(dl):
                            for j in range(dr):
                                x = c * L[i][i0] * Rinv[j0][j] % p
                                if x:
                                    k = (a * dl + i) * dr + j
                                    v[k] = (v[k] + x) % p
                    if ech.add(v):
                        out.append(v)
        return out

    def _module(self, t: int):
        p, dim, D = self.p, self.dims[t], self.max_degree
        W = {d: self.invariants(d, t) for d in range(D + 1)}
        R = {k: self.invariants(k, 0) for k in range(1, D + 1)}
        gens, rad = {}, {}
        for d in range(D + 1):
            size = (d + 1) * dim
            ech = _Echelon(p, size)
            for k in range(1, d + 1):
                for f in R[k]:
                    for w in W[d - k]:
                        v = [0] * size
                        for a, x in enumerate(f):
                            if x:
                                for idx, y in enumerate(w):
                                    if y:
                                        a2, i = divmod(idx, dim)
                                        q = (a + a2) * dim + i
                                        v[q] = (v[q] + x * y) % p
                        ech.add(v)
            rad[d] = ech
            top = ech.copy()
            gens[d] = [w for w in W[d] if top.add(w)]
        return gens, rad

    def generator_degrees(self, t: int) -> list[int]:
        gens, _ = self._modules[t]
        return [d for d in sorted(gens) for _ in gens[d]]

    # -- coverage and block value -------------------------------------------

    def coverage(self, t: int, m: int) -> list[list[list[int]]]:
        p, D = self.p, self.max_degree
        gt, _ = self._modules[t]
        gm, radm = self._modules[m]
        src = [(d, g) for d in sorted(gt) for g in gt[d]]
        rowoff, c = {}, 0
        for d in sorted(gm):
            rowoff[d] = c
            c += len(gm[d])
        mu_m = c
        dt, dm = self.dims[t], self.dims[m]
        reduced_gens = {d: [radm[d].reduce(g) for g in gm[d]] for d in gm}
        ech = _Echelon(p, mu_m * len(src))
        out = []
        for e in range(D + 1):
            for phi in self.invariants(e, m, t):
                X = [[0] * len(src) for _ in range(mu_m)]
                for col, (d, g) in enumerate(src):
                    if d + e > D or not gm[d + e]:
                        continue
                    v = [0] * ((d + e + 1) * dm)
                    for pi, x in enumerate(phi):
                        if not x:
                            continue
                        ab, j = divmod(pi, dt)
                        a, i = divmod(ab, dm)
                        for gi, y in enumerate(g):
                            if y:
                                a2, j2 = divmod(gi, dt)
                                if j2 == j:
                                    q = (a + a2) * dm + i
                                    v[q] = (v[q] + x * y) % p
                    coords = _solve(reduced_gens[d + e], radm[d + e].reduce(v), p)
                    for r, x in enumerate(coords):
                        X[rowoff[d + e] + r][col] = x
                if ech.add([x for row in X for x in row]):
                    out.append(X)
        return out

    def block_value(self, m: int, trials: int = 2, seed: int = 0) -> int:
        p = self.p
        rnd = random.Random(seed)
        mu = len(self.generator_degrees(m))
        cov = {t: self.coverage(t, m) for t in range(self.nv)}
        copies = {t: self.dims[t] * self.dims[m] for t in range(self.nv)}
        best = 0
        for n in range(1, 4 * self.N * self.dims[m] + 1):
            if not any(self._full_rank(n, mu, cov, copies, rnd) for _ in range(trials)):
                return best
            best = n
        return best

    def _full_rank(self, n, mu, cov, copies, rnd) -> bool:
        p = self.p
        ech = _Echelon(p, n * mu)
        rank = 0
        for t in range(self.nv):
            mt = len(self.generator_degrees(t))
            for _ in range(copies[t]):
                comps = []
                for _alpha in range(n):
                    X = [[0] * mt for _ in range(mu)]
                    for B in cov[t]:
                        s = rnd.randrange(p)
                        for r in range(mu):
                            for c in range(mt):
                                if B[r][c]:
                                    X[r][c] = (X[r][c] + s * B[r][c]) % p
                    comps.append(X)
                for c in range(mt):
                    rank += ech.add([comps[a][r][c] for a in range(n) for r in range(mu)])
        return rank == n * mu


def _identity(k: int) -> list[list[int]]:
    return [[int(r == c) for c in range(k)] for r in range(k)]


def _matmul(A, B, p):
    return [[sum(A[r][k] * B[k][c] for k in range(len(B))) % p for c in range(len(B[0]))] for r in range(len(A))]


def _inv2(M, p):
    if len(M) == 1:
        return [[pow(M[0][0], p - 2, p)]]
    (a, b), (c, d) = M
    det = pow((a * d - b * c) % p, p - 2, p)
    return [[d * det % p, -b * det % p], [-c * det % p, a * det % p]]


def _solve(basis: list[list[int]], w: list[int], p: int) -> list[int]:
    """Coefficients expressing w in the (independent) basis."""
    k = len(basis)
    ech = _Echelon(p, k + 1)
    for i in range(len(w)):
        ech.add([basis[r][i] for r in range(k)] + [w[i]])
    coords = [0] * k
    for piv, row in ech.rows.items():
        if piv >= k:
            raise ValueError("vector is not in the span of the generators")
        coords[piv] = row[k]
    return coords
