"""Greedy chain certificates for surjections onto V^n.

A d x r table of 0/1 entries records which basis vectors v_i of V lie in
which coordinate subspaces W_j.  With n the minimum row sum, the greedy chain
picks, for alpha = 1..n and i = 1..d, the least unused column j with
a_ij = 1.  The chain indexes a dn x dn minor of the block matrix whose (alpha,
j) block is X^(alpha)_j * diag(a_1j, ..., a_dj); the product of the chosen
entries is the unique lex-largest monomial of that minor, so the minor is
nonzero and the sum of the W_j surjects onto V^n.

Indices in certificates are 1-based, column t = i + (j - 1) d.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .primes import DEFAULT_PRIMES, modular_rank, rng_for

BRUTE_FORCE_MAX_N = 7


class CertificateError(ValueError):
    """The certificate does not fit the table."""


class TableParseError(ValueError):
    """The input could not be read as a 0/1 table."""


@dataclass(frozen=True)
class GeneratorTable:
    a: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.a or not self.a[0]:
            raise TableParseError("table must have at least one row and one column")
        r = len(self.a[0])
        for row in self.a:
            if len(row) != r:
                raise TableParseError("rows have different lengths")
            if any(x not in (0, 1) for x in row):
                raise TableParseError("entries must be 0 or 1")

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def r(self) -> int:
        return len(self.a[0])

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "GeneratorTable":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def from_csv(cls, text: str) -> "GeneratorTable":
        """Parse CSV rows of 0/1 entries; a first row that is not all 0/1 is taken as a header."""
        rows = [[c.strip() for c in row] for row in csv.reader(io.StringIO(text)) if any(c.strip() for c in row)]
        if rows and not all(c in ("0", "1") for c in rows[0]):
            rows = rows[1:]
        if not rows:
            raise TableParseError("empty table")
        for row in rows:
            if not all(c in ("0", "1") for c in row):
                raise TableParseError(f"bad table row {row!r}")
        return cls.from_rows([[int(c) for c in row] for row in rows])


@dataclass(frozen=True)
class ChainCertificate:
    n: int
    columns: tuple[int, ...]
    assignments: tuple[tuple[int, ...], ...]  # assignments[alpha-1][i-1] = j, 1-based

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "columns": list(self.columns), "assignments": [list(x) for x in self.assignments]}


@dataclass(frozen=True)
class Verification:
    verified: bool
    strategy: str
    witness: dict[str, Any] = field(default_factory=dict)


def min_row_sum(table: GeneratorTable) -> int:
    return min(sum(row) for row in table.a)


def greedy_chain(table: GeneratorTable) -> ChainCertificate:
    n = min_row_sum(table)
    d = table.d
    a = [list(row) for row in table.a]
    cols: list[int] = []
    steps: list[tuple[int, ...]] = []
    for _alpha in range(n):
        step = []
        for i in range(d):
            j = next((j for j, x in enumerate(a[i]) if x == 1), None)
            # n is the minimum row sum, so every row still has a 1 here
            assert j is not None, "greedy chain stalled before step n"
            a[i][j] = 0
            step.append(j + 1)
            cols.append((i + 1) + j * d)
        steps.append(tuple(step))
    return ChainCertificate(n, tuple(cols), tuple(steps))


def _check_structure(table: GeneratorTable, cert: ChainCertificate) -> None:
    d = table.d
    if len(cert.assignments) != cert.n or any(len(s) != d for s in cert.assignments):
        raise CertificateError("assignments must be n steps of d columns")
    if len(cert.columns) != d * cert.n:
        raise CertificateError("chain length must be d * n")
    used = set()
    for alpha, step in enumerate(cert.assignments):
        for i, j in enumerate(step):
            if not 1 <= j <= table.r:
                raise CertificateError(f"column {j} out of range")
            if table.a[i][j - 1] != 1:
                raise CertificateError(f"entry ({i + 1}, {j}) is zero, the sequence is not a chain")
            t = (i + 1) + (j - 1) * d
            if cert.columns[alpha * d + i] != t:
                raise CertificateError("columns disagree with assignments")
            if t in used:
                raise CertificateError("columns repeat")
            used.add(t)


def block_matrix_entries(table: GeneratorTable, n: int) -> dict[tuple[int, int], tuple[int, int]]:
    """Nonzero entries of the dn x dr block matrix: (row s, column t) -> variable (alpha, j), all 1-based."""
    d = table.d
    out = {}
    for alpha in range(1, n + 1):
        for j in range(1, table.r + 1):
            for i in range(1, d + 1):
                if table.a[i - 1][j - 1]:
                    out[(d * (alpha - 1) + i, i + (j - 1) * d)] = (alpha, j)
    return out


def _lex_check(table: GeneratorTable, cert: ChainCertificate) -> tuple[bool, dict[str, Any]]:
    """Check the chain monomial is the unique lex-maximum of the selected minor.

    Row (alpha, i) of the block matrix only meets columns with the same i, so
    the minor is, up to sign, a product over i of the n x n determinants
    [X^(alpha)_j] with j running over the columns chosen for row i.  Lex order
    is multiplicative, so the chain monomial is the unique maximum of the
    minor iff each factor's chain term is the unique maximum of that factor.
    A monomial of factor i picks one column per alpha; it is lex-larger when
    its column tuple (indexed by alpha) is lexicographically smaller.
    """
    per_row = []
    for i in range(table.d):
        Js = [cert.assignments[alpha][i] for alpha in range(cert.n)]
        chain_term = tuple(Js)
        best = None
        count = 0
        for perm in itertools.permutations(Js):
            if best is None or perm < best:
                best, count = perm, 1
            elif perm == best:
                count += 1
        ok = best == chain_term and count == 1
        per_row.append({"row": i + 1, "columns": list(Js), "unique_max": ok})
        if not ok:
            return False, {"components": per_row}
    monomial = [[alpha + 1, cert.assignments[alpha][i]] for alpha in range(cert.n) for i in range(table.d)]
    return True, {"components": per_row, "monomial": sorted(monomial)}


def selected_minor(table: GeneratorTable, cert: ChainCertificate) -> list[list[tuple[int, int] | None]]:
    """The dn x dn minor as a matrix of variables (alpha, j) or None for zero entries."""
    ent = block_matrix_entries(table, cert.n)
    dn = table.d * cert.n
    return [[ent.get((s, t)) for t in cert.columns] for s in range(1, dn + 1)]


def _modular_check(
    table: GeneratorTable, cert: ChainCertificate, seed: int, primes: Sequence[int]
) -> tuple[bool, dict[str, Any]]:
    minor = selected_minor(table, cert)
    dn = len(minor)
    results = []
    for p in primes:
        rng = rng_for(seed, "keylemma", p)
        vals = {(alpha, j): int(x) for (alpha, j), x in zip(
            [(al, j) for al in range(1, cert.n + 1) for j in range(1, table.r + 1)],
            rng.integers(1, p, size=cert.n * table.r),
        )}
        M = np.zeros((dn, dn), dtype=np.int64)
        for s in range(dn):
            for c in range(dn):
                v = minor[s][c]
                if v is not None:
                    M[s, c] = vals[v]
        nonzero = modular_rank(M, p) == dn
        results.append({"prime": p, "nonzero": nonzero})
        if nonzero:
            return True, {"evaluations": results}
    return False, {"evaluations": results}


def verify_minor(
    table: GeneratorTable,
    cert: ChainCertificate,
    seed: int = 0,
    primes: Sequence[int] = DEFAULT_PRIMES,
    strategy: str = "auto",
) -> Verification:
    """Verify that the chain's dn-minor is nonzero.

    ``strategy`` is ``"lex"`` (exact unique-maximum check), ``"modular"``
    (random evaluation over several primes) or ``"auto"`` (lex when n is
    small enough for permutation enumeration, else modular).
    """
    _check_structure(table, cert)
    if cert.n == 0:
        return Verification(True, "vacuous", {})
    if strategy == "auto":
        strategy = "lex" if cert.n <= BRUTE_FORCE_MAX_N else "modular"
    if strategy == "lex":
        ok, wit = _lex_check(table, cert)
        return Verification(ok, "lex", wit)
    if strategy == "modular":
        if len(primes) < 3:
            raise ValueError("modular verification needs at least 3 primes")
        ok, wit = _modular_check(table, cert, seed, primes)
        wit["seed"] = seed
        return Verification(ok, "modular", wit)
    raise ValueError(f"unknown strategy {strategy!r}")


def certificate_json(table: GeneratorTable, cert: ChainCertificate, ver: Verification, seed: int, primes: Sequence[int]) -> str:
    doc = {
        "d": table.d,
        "r": table.r,
        "n": cert.n,
        "columns": list(cert.columns),
        "assignments": [list(s) for s in cert.assignments],
        "strategy": ver.strategy,
        "verified": ver.verified,
        "primes": list(primes) if ver.strategy == "modular" else [],
        "seed": seed,
    }
    return json.dumps(doc, sort_keys=True)
