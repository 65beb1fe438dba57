"""The counting (knitting) recurrence on a finite AR quiver.

Started at the projective, the recurrence lists the degrees of the minimal
generators of every MCM module.  Started at a non-projective vertex s it
lists graded dimensions of stable Hom out of M_s.

Writing lambda[d][N] for the value written at vertex N in degree d and nu for
lambda with the projective entries replaced by 0 (for d >= 1):

    lambda[d][N] = sum_{L -> N} nu[d-1][L] - nu[d-2][tau0(N)]

The projective start puts lambda[0][R] = 1 and keeps it in nu, so degree 1
is the middle term E of the fundamental sequence and degree 2 carries the
-1 at tau0^{-1}(R).  The run stops at the first degree d >= 1 where every
non-projective entry vanishes.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Any

from .catalog import ARQuiverSpec, VertexId, vertex_to_json

DEFAULT_MAX_DEGREE = 128


class HorizonExceededError(RuntimeError):
    """The recurrence did not terminate within ``max_degree``."""


class SignConventionError(RuntimeError):
    """A negative multiplicity appeared, which means bad tau0 or relation data."""


@dataclass(frozen=True)
class CountProfile:
    """Nonzero multiplicities keyed by ``(vertex, degree)``.

    Entries at the projective vertex are recorded only for degree 0: at
    positive degree that slot carries the tail of the fundamental sequence
    rather than a module multiplicity.  ``projective_trace`` keeps the raw
    values written there for inspection.  ``truncations`` lists the slots
    where a non-Gorenstein run produced a negative raw value that was replaced
    by 0 (the mesh map into that slot was not injective).
    """

    start: str
    source: VertexId
    entries: dict[tuple[VertexId, int], int]
    horizon: int
    projective_trace: dict[int, int]
    truncations: dict[tuple[VertexId, int], int]

    def at(self, v: VertexId, degree: int) -> int:
        return self.entries.get((v, degree), 0)

    def total(self, v: VertexId) -> int:
        return sum(m for (w, _), m in self.entries.items() if w == v)

    def degrees(self, v: VertexId) -> list[int]:
        out = []
        for (w, d), m in sorted(self.entries.items(), key=lambda kv: kv[0][1]):
            if w == v:
                out.extend([d] * m)
        return out

    def to_json(self) -> dict[str, Any]:
        start: Any = self.start if self.start == "projective" else {"vertex": vertex_to_json(self.source)}
        return {
            "start": start,
            "entries": [
                [vertex_to_json(v), d, m]
                for (v, d), m in sorted(self.entries.items(), key=lambda kv: (kv[0][1], repr(kv[0][0])))
            ],
            "horizon": self.horizon,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _run(spec: ARQuiverSpec, source: VertexId, projective_start: bool, max_degree: int) -> CountProfile:
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    P = spec.projective
    preds = {v: [a.src for a in spec.arrows_into(v)] for v in spec.vertices}
    lam0 = {v: 0 for v in spec.vertices}
    lam0[source] = 1
    # nu keeps the unit at R in degree 0 for the projective start
    nu = [dict(lam0)]
    entries: dict[tuple[VertexId, int], int] = {(source, 0): 1}
    trace: dict[int, int] = {}
    truncations: dict[tuple[VertexId, int], int] = {}
    for d in range(1, max_degree + 1):
        prev = nu[d - 1]
        prev2 = nu[d - 2] if d >= 2 else None
        lam = {}
        for N in spec.vertices:
            val = sum(prev[L] for L in preds[N])
            if prev2 is not None:
                val -= prev2[spec.tau0[N]]
            lam[N] = val
        trace[d] = lam[P]
        cur = {}
        for N in spec.vertices:
            if N == P:
                cur[N] = 0
                continue
            if lam[N] < 0:
                if spec.gorenstein:
                    raise SignConventionError(
                        f"{spec.label}: negative multiplicity {lam[N]} at vertex {N}, degree {d}"
                    )
                # the mesh map out of H(tau y) is not injective here; its cokernel is zero
                truncations[(N, d)] = lam[N]
                lam[N] = 0
            cur[N] = lam[N]
            if lam[N]:
                entries[(N, d)] = lam[N]
        nu.append(cur)
        if all(v == 0 for v in cur.values()):
            horizon = max((dd for (_, dd) in entries), default=0)
            return CountProfile(
                "projective" if projective_start else "vertex",
                source,
                entries,
                horizon,
                trace,
                truncations,
            )
    raise HorizonExceededError(f"{spec.label}: no termination within degree {max_degree}")


def count_from_projective(spec: ARQuiverSpec, max_degree: int = DEFAULT_MAX_DEGREE) -> CountProfile:
    """Generator degrees of every MCM module, read off the recurrence started at R."""
    return _run(spec, spec.projective, True, max_degree)


def count_from_vertex(
    spec: ARQuiverSpec, s: VertexId, max_degree: int = DEFAULT_MAX_DEGREE
) -> CountProfile:
    """Graded stable-Hom dimensions out of the non-projective vertex ``s``."""
    if s == spec.projective:
        raise ValueError("count_from_vertex needs a non-projective start; use count_from_projective")
    if s not in spec.ranks:
        raise KeyError(s)
    return _run(spec, s, False, max_degree)


def minimal_generators(
    spec: ARQuiverSpec, t: VertexId, profile: CountProfile | None = None
) -> tuple[int, list[int]]:
    """Return ``(mu, degrees)`` for M_t, degrees listed with multiplicity."""
    if t == spec.projective:
        return 1, [0]
    prof = profile if profile is not None else count_from_projective(spec)
    degs = prof.degrees(t)
    return len(degs), degs


def mu_table(spec: ARQuiverSpec) -> dict[VertexId, int]:
    prof = count_from_projective(spec)
    return {v: minimal_generators(spec, v, prof)[0] for v in spec.vertices}


def degree_multiset(spec: ARQuiverSpec, t: VertexId) -> Counter[int]:
    return Counter(minimal_generators(spec, t)[1])
