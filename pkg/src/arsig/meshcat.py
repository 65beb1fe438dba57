"""Hom spaces in the mesh category of the unrolled translation quiver.

The unrolled quiver has occurrences ``(v, z)`` with arrows ``(v, z) -> (w, z+1)``
for every arrow ``v -> w`` and translation ``tau(v, z) = (tau0(v), z-2)``.  In
the mesh category, every path ending at y ends with some arrow ``gamma: L -> y``,
and the relations ending at y are the two-sided ideal coming in from the
predecessors plus the mesh relation at y precomposed with everything that
reaches ``tau(y)``.  So, for a fixed source s,

    H(y) = coker( H(tau y) --mesh--> (+)_{gamma: L -> y} H(L) ),

which is what :class:`HomTable` computes slice by slice.  In stable mode the
projective occurrences other than the source are treated as zero wherever they
are used, which kills exactly the paths through a projective occurrence.

A :class:`HomTable` for source vertex s serves every source occurrence
``(s, z0)`` because shifting all slices by one is an automorphism of the
unrolled quiver that preserves the projective occurrences.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

from . import linalg as la
from .catalog import ARQuiverSpec, Arrow, VertexId, vertex_to_json
from .counting import count_from_projective, count_from_vertex

MAX_DEPTH = 512
DEPTH_MARGIN = 4

Occurrence = tuple[VertexId, int]  # (vertex, slice)


class CompositionError(ValueError):
    """Endpoints or stability modes of two morphisms do not match."""


class DepthError(ValueError):
    """A requested slice lies outside the computed strip."""


@dataclass(frozen=True)
class RelationInstance:
    target: Occurrence
    terms: tuple[tuple[int, str, str], ...]  # (coefficient, first arrow, second arrow)


@dataclass(frozen=True)
class UnrolledQuiver:
    spec: ARQuiverSpec
    depth: int
    occurrences: tuple[Occurrence, ...]
    relations: tuple[RelationInstance, ...]

    def paths_of_length_2(self, src: Occurrence, dst: Occurrence) -> list[tuple[str, str]]:
        (v, z0), (w, z1) = src, dst
        if z1 != z0 + 2:
            return []
        out = []
        for a in self.spec.arrows_out_of(v):
            for b in self.spec.arrows_out_of(a.dst):
                if b.dst == w:
                    out.append((a.label, b.label))
        return out


def unroll(spec: ARQuiverSpec, depth: int) -> UnrolledQuiver:
    """Strip ``0 <= z <= depth`` of the component of ``(projective, 0)``."""
    if depth < 2:
        raise DepthError("depth must be at least 2")
    if depth > MAX_DEPTH:
        raise DepthError(f"depth {depth} exceeds the cap {MAX_DEPTH}")
    start = (spec.projective, 0)
    seen = {start}
    queue = deque([start])
    while queue:
        v, z = queue.popleft()
        nbrs = []
        if z < depth:
            nbrs += [(a.dst, z + 1) for a in spec.arrows_out_of(v)]
        if z > 0:
            nbrs += [(a.src, z - 1) for a in spec.arrows_into(v)]
        for o in nbrs:
            if o not in seen:
                seen.add(o)
                queue.append(o)
    order = {v: k for k, v in enumerate(spec.vertices)}
    occ = tuple(sorted(seen, key=lambda o: (o[1], order[o[0]])))
    rels = tuple(
        RelationInstance((v, z), spec.relation_at(v).terms) for (v, z) in occ if z >= 2
    )
    return UnrolledQuiver(spec, depth, occ, rels)


class HomTable:
    """Bases of H((s, 0), (v, z)) for every vertex v and 0 <= z <= depth.

    For each occurrence y the table stores

    * ``comps[y]``: the incoming arrows ``(label, predecessor)`` in label order,
    * ``Q[y]``: the projection from the direct sum of predecessor spaces onto H(y),
    * ``S[y]``: a section of ``Q[y]`` sending basis vectors to unit coordinates.

    Post-composition of H(L) with an arrow gamma: L -> y is the gamma block of Q[y].
    """

    def __init__(self, spec: ARQuiverSpec, source: VertexId, depth: int, stable: bool):
        if depth > MAX_DEPTH:
            raise DepthError(f"depth {depth} exceeds the cap {MAX_DEPTH}")
        self.spec = spec
        self.source = source
        self.depth = depth
        self.stable = stable
        self.dim: dict[Occurrence, int] = {}
        self.comps: dict[Occurrence, list[tuple[str, Occurrence]]] = {}
        self.offsets: dict[Occurrence, dict[str, int]] = {}
        self.Q: dict[Occurrence, la.Matrix] = {}
        self.S: dict[Occurrence, la.Matrix] = {}
        self.killed_dim: dict[Occurrence, int] = {}
        self._build()

    def killed(self, o: Occurrence) -> bool:
        return self.stable and o[0] == self.spec.projective and o != (self.source, 0)

    def eff_dim(self, o: Occurrence) -> int:
        if o[1] < 0 or o[1] > self.depth:
            return 0
        return self.dim.get(o, 0)

    def _build(self) -> None:
        spec = self.spec
        incoming = {v: sorted(spec.arrows_into(v), key=lambda a: a.label) for v in spec.vertices}
        for v in spec.vertices:
            self.dim[(v, 0)] = 1 if v == self.source else 0
            self.comps[(v, 0)] = []
            self.offsets[(v, 0)] = {}
            d = self.dim[(v, 0)]
            self.Q[(v, 0)] = la.identity(d)
            self.S[(v, 0)] = la.identity(d)
        for z in range(1, self.depth + 1):
            for v in spec.vertices:
                y = (v, z)
                comps = [(a.label, (a.src, z - 1)) for a in incoming[v]]
                offs: dict[str, int] = {}
                total = 0
                for lab, L in comps:
                    offs[lab] = total
                    total += self.dim[L]
                image: la.Matrix = []
                ty = (spec.tau0[v], z - 2)
                dt = self.eff_dim(ty) if z >= 2 else 0
                if dt:
                    rel = spec.relation_at(v)
                    rows = [[la.ZERO] * total for _ in range(dt)]
                    for c, beta, gamma in rel.terms:
                        L = (spec.arrow(beta).dst, z - 1)
                        dL = self.dim[L]
                        if not dL:
                            continue
                        post = la.columns(self.Q[L], self.offsets[L][beta], self.offsets[L][beta] + dt)
                        off = offs[gamma]
                        for i in range(dt):
                            for r in range(dL):
                                x = post[r][i]
                                if x:
                                    rows[i][off + r] += c * x
                    image = rows
                Q, S = la.quotient(image, total)
                self.comps[y] = comps
                self.offsets[y] = offs
                if self.killed(y):
                    self.killed_dim[y] = len(Q)
                    self.dim[y] = 0
                    self.Q[y] = []
                    self.S[y] = la.zeros(total, 0)
                else:
                    self.dim[y] = len(Q)
                    self.Q[y] = Q
                    self.S[y] = S

    # -- accessors ---------------------------------------------------------

    def dimension(self, o: Occurrence) -> int:
        """dim H((s, 0), o); for a killed projective occurrence, the dimension before killing."""
        if o in self.killed_dim:
            return self.killed_dim[o]
        return self.eff_dim(o)

    def post(self, y: Occurrence, label: str) -> la.Matrix:
        """Matrix of post-composition H(L) -> H(y) with the arrow ``label`` into y."""
        L = next(o for lab, o in self.comps[y] if lab == label)
        off = self.offsets[y][label]
        return la.columns(self.Q[y], off, off + self.dim[L]) if self.Q[y] else []

    def occurrences(self) -> list[Occurrence]:
        return [(v, z) for z in range(self.depth + 1) for v in self.spec.vertices]

    def representative(self, y: Occurrence, j: int) -> list[str]:
        """A path (list of arrow labels) whose class is basis vector j of H(y)."""
        path: list[str] = []
        while y[1] > 0:
            col = [row[j] for row in self.S[y]]
            k = next(i for i, x in enumerate(col) if x)
            for lab, L in self.comps[y]:
                off = self.offsets[y][lab]
                if off <= k < off + self.dim[L]:
                    path.append(lab)
                    y, j = L, k - off
                    break
        return list(reversed(path))

    def class_of_path(self, labels: list[str], start_slice: int = 0) -> la.Vector:
        """Coordinates in H((s, z), end) of the path with the given arrow labels, started at (s, start_slice)."""
        vec = [la.ONE]
        v, z = self.source, 0
        if self.killed((v, z)):
            return []
        for lab in labels:
            a = self.spec.arrow(lab)
            if a.src != v:
                raise CompositionError(f"arrow {lab} does not start at {v}")
            v, z = a.dst, z + 1
            P = self.post((v, z), lab)
            vec = la.matvec(P, vec) if P else []
            if not vec:
                return []
        return vec


def _transport(
    A: HomTable,
    B: HomTable,
    occ_map: Callable[[Occurrence], Occurrence],
    arrow_map: Callable[[str], str],
    base: la.Matrix,
    up_to: int,
) -> dict[Occurrence, la.Matrix]:
    """Linear maps H_A(y) -> H_B(occ_map(y)) for every y up to slice ``up_to``.

    ``base`` is the image of the unit of H_A((a, 0)).  Each later map is
    assembled from the section of y, the maps on the predecessors, and
    post-composition in B by the mapped arrows.
    """
    out: dict[Occurrence, la.Matrix] = {}
    a0 = (A.source, 0)
    for v in A.spec.vertices:
        o = (v, 0)
        out[o] = base if o == a0 else la.zeros(B.eff_dim(occ_map(o)), A.dim[o])
    for z in range(1, up_to + 1):
        for v in A.spec.vertices:
            y = (v, z)
            dy = A.dim[y]
            ty = occ_map(y)
            dB = B.eff_dim(ty)
            M = la.zeros(dB, dy)
            if dy and dB:
                for lab, L in A.comps[y]:
                    dL = A.dim[L]
                    if not dL:
                        continue
                    off = A.offsets[y][lab]
                    sec = A.S[y][off : off + dL]
                    if not any(any(r) for r in sec):
                        continue
                    inner = la.matmul(out[L], sec, inner=dL)
                    if not inner:
                        continue
                    P = B.post(ty, arrow_map(lab))
                    if not P:
                        continue
                    contrib = la.matmul(P, inner, inner=len(inner))
                    for i in range(dB):
                        for j in range(dy):
                            if contrib[i][j]:
                                M[i][j] += contrib[i][j]
            out[y] = M
    return out


@dataclass(frozen=True)
class HomSpace:
    src: Occurrence
    dst: Occurrence
    stable: bool
    dim: int
    table: HomTable = field(repr=False, compare=False)

    @property
    def offset(self) -> Occurrence:
        return (self.dst[0], self.dst[1] - self.src[1])

    def basis_paths(self) -> list[list[str]]:
        return [self.table.representative(self.offset, j) for j in range(self.dim)]

    def to_json(self) -> dict[str, Any]:
        return {
            "src": [vertex_to_json(self.src[0]), self.src[1]],
            "dst": [vertex_to_json(self.dst[0]), self.dst[1]],
            "stable": self.stable,
            "dim": self.dim,
            "basis": [{"path": p, "coefficient": "1"} for p in self.basis_paths()],
        }


@dataclass(frozen=True)
class Morphism:
    hom: HomSpace
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.hom.dim:
            raise ValueError("coordinate length differs from the Hom dimension")

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "Morphism") -> "Morphism":
        if (other.hom.src, other.hom.dst, other.hom.stable) != (self.hom.src, self.hom.dst, self.hom.stable):
            raise CompositionError("cannot add morphisms between different occurrences")
        return Morphism(self.hom, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c: int | Fraction) -> "Morphism":
        return Morphism(self.hom, tuple(Fraction(c) * a for a in self.coords))


class MeshCategory:
    """Cached Hom tables for one spec, in one stability mode, up to a fixed depth."""

    def __init__(self, spec: ARQuiverSpec, depth: int | None = None, stable: bool = True):
        self.spec = spec
        self.stable = stable
        if depth is None:
            depth = default_depth(spec)
        self.depth = depth
        self._tables: dict[VertexId, HomTable] = {}

    def table(self, s: VertexId) -> HomTable:
        t = self._tables.get(s)
        if t is None:
            t = HomTable(self.spec, s, self.depth, self.stable)
            self._tables[s] = t
        return t

    def hom(self, src: Occurrence, dst: Occurrence) -> HomSpace:
        if dst[1] < src[1]:
            raise DepthError("destination slice precedes the source slice")
        if dst[1] - src[1] > self.depth:
            raise DepthError(f"slice distance {dst[1] - src[1]} exceeds depth {self.depth}")
        t = self.table(src[0])
        off = (dst[0], dst[1] - src[1])
        return HomSpace(src, dst, self.stable, t.eff_dim(off), t)

    def morphism(self, src: Occurrence, dst: Occurrence, coords) -> Morphism:
        return Morphism(self.hom(src, dst), tuple(Fraction(c) for c in coords))

    def basis_morphisms(self, src: Occurrence, dst: Occurrence) -> list[Morphism]:
        h = self.hom(src, dst)
        return [Morphism(h, tuple(la.ONE if i == j else la.ZERO for i in range(h.dim))) for j in range(h.dim)]

    def identity(self, o: Occurrence) -> Morphism:
        h = self.hom(o, o)
        return Morphism(h, tuple([la.ONE] * h.dim))

    def path(self, src: Occurrence, labels: list[str]) -> Morphism:
        """The class of a path of arrows starting at ``src``."""
        v, z = src
        for lab in labels:
            v, z = self.spec.arrow(lab).dst, z + 1
        vec = self.table(src[0]).class_of_path(labels)
        h = self.hom(src, (v, z))
        if not vec:
            vec = [la.ZERO] * h.dim
        return Morphism(h, tuple(vec))

    @lru_cache(maxsize=None)
    def push_maps(self, x: VertexId, s: VertexId, at: int, coords: tuple[Fraction, ...]) -> dict[Occurrence, la.Matrix]:
        """Maps g -> f g from H((x,0), .) into H((s,0), . + at) for f given by ``coords`` in H((s,0),(x,at))."""
        A = self.table(x)
        B = self.table(s)
        base = [[c] for c in coords]
        up_to = self.depth - at
        return _transport(A, B, lambda o: (o[0], o[1] + at), lambda lab: lab, base, up_to)

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        """``f`` followed by ``g``."""
        if f.hom.dst != g.hom.src:
            raise CompositionError(f"cannot compose: {f.hom.dst} != {g.hom.src}")
        if f.hom.stable != self.stable or g.hom.stable != self.stable:
            raise CompositionError("stability modes differ")
        target = self.hom(f.hom.src, g.hom.dst)
        if f.is_zero or g.is_zero or target.dim == 0:
            return Morphism(target, tuple([la.ZERO] * target.dim))
        x, at = f.hom.dst[0], f.hom.dst[1] - f.hom.src[1]
        maps = self.push_maps(x, f.hom.src[0], at, f.coords)
        M = maps[g.hom.offset]
        return Morphism(target, tuple(la.matvec(M, g.coords)))

    def shift(self, m: Morphism, k: int) -> Morphism:
        """Transport along tau^{-k}: (x, z) -> (tau0^{-k} x, z + 2k)."""
        if k == 0:
            return m
        spec = self.spec
        sigma = _tau_power(spec, -k)
        if self.stable and sigma[spec.projective] != spec.projective:
            raise DepthError("tau0 moves the projective vertex; the stable category is not shift-invariant")
        src = (sigma[m.hom.src[0]], m.hom.src[1] + 2 * k)
        dst = (sigma[m.hom.dst[0]], m.hom.dst[1] + 2 * k)
        if src[1] < 0 or dst[1] < 0:
            raise DepthError("shift leaves the non-negative slices")
        target = self.hom(src, dst)
        A = self.table(m.hom.src[0])
        B = self.table(src[0])
        amap = _arrow_automorphism(spec, sigma)
        off = m.hom.offset
        maps = _transport(A, B, lambda o: (sigma[o[0]], o[1]), amap.__getitem__, la.identity(1), off[1])
        return Morphism(target, tuple(la.matvec(maps[off], m.coords)))

    def relation_morphism(self, target: Occurrence) -> Morphism:
        """The mesh relation at ``target`` as a morphism from tau(target), computed term by term."""
        v, z = target
        src = (self.spec.tau0[v], z - 2)
        total = None
        for c, a, b in self.spec.relation_at(v).terms:
            p = self.path(src, [a, b]).scale(c)
            total = p if total is None else total + p
        assert total is not None
        return total


def _tau_power(spec: ARQuiverSpec, k: int) -> dict[VertexId, VertexId]:
    sigma = {v: v for v in spec.vertices}
    step = spec.tau0 if k > 0 else {w: v for v, w in spec.tau0.items()}
    for _ in range(abs(k)):
        sigma = {v: step[sigma[v]] for v in spec.vertices}
    return sigma


def _arrow_automorphism(spec: ARQuiverSpec, sigma: dict[VertexId, VertexId]) -> dict[str, str]:
    """Extend a vertex permutation to arrows, matching parallel arrows in label order."""
    groups: dict[tuple[VertexId, VertexId], list[str]] = {}
    for a in sorted(spec.arrows, key=lambda a: a.label):
        groups.setdefault((a.src, a.dst), []).append(a.label)
    out = {}
    for (s, t), labs in groups.items():
        image = groups.get((sigma[s], sigma[t]), [])
        if len(image) != len(labs):
            raise ValueError("vertex permutation is not a quiver automorphism")
        out.update(zip(labs, image))
    return out


def default_depth(spec: ARQuiverSpec) -> int:
    """Largest counting horizon over all start vertices plus a margin."""
    h = count_from_projective(spec).horizon
    for v in spec.non_projective():
        h = max(h, count_from_vertex(spec, v).horizon)
    return h + DEPTH_MARGIN


def hom_basis(uq: UnrolledQuiver, src: Occurrence, dst: Occurrence, stable: bool) -> HomSpace:
    return category(uq.spec, uq.depth, stable).hom(src, dst)


_CATEGORIES: dict[tuple[int, int, bool], MeshCategory] = {}


def category(spec: ARQuiverSpec, depth: int | None = None, stable: bool = True) -> MeshCategory:
    """Shared :class:`MeshCategory` per (spec, depth, mode)."""
    if depth is None:
        depth = default_depth(spec)
    key = (id(spec), depth, stable)
    cat = _CATEGORIES.get(key)
    if cat is None or cat.spec is not spec:
        cat = MeshCategory(spec, depth, stable)
        _CATEGORIES[key] = cat
    return cat


def dump_homspace(h: HomSpace) -> str:
    return json.dumps(h.to_json(), sort_keys=True)
