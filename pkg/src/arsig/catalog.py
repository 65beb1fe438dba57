"""Finite AR-quiver data for the supported quotient surface singularities.

Every computation in the package starts from an :class:`ARQuiverSpec`.  The
builders below produce specs for the extended Dynkin types A, D and E, for
cyclic subgroups of GL(2) and for the fifteen-vertex ``D52`` fixture (the
non-Gorenstein quotient by the group usually written D_{5,2}).

Vertex ids are plain ints, except for the fixture where they are pairs
``(i, j)``.  Vertex 0 (or ``(0, 0)``) is always the free module R.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping, Sequence, Union

VertexId = Union[int, tuple[int, int]]

SCHEMA_VERSION = 1


class ParameterError(ValueError):
    """Raised for singularity labels whose parameters are out of range."""


@dataclass(frozen=True)
class DynkinLabel:
    """Names a singularity: ``A``, ``D``, ``E6``, ``E7``, ``E8``, ``Cyclic`` or ``Fixture``."""

    kind: str
    n: int | None = None
    q: int | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        k = self.kind
        if k == "A":
            if self.n is None or self.n < 1:
                raise ParameterError(f"A(n) needs n >= 1, got {self.n}")
        elif k == "D":
            if self.n is None or self.n < 4:
                raise ParameterError(f"D(n) needs n >= 4, got {self.n}")
        elif k in ("E6", "E7", "E8"):
            pass
        elif k == "Cyclic":
            n, q = self.n, self.q
            if n is None or q is None or n < 2:
                raise ParameterError(f"Cyclic(n, q) needs n >= 2, got {n}")
            if not 1 <= q < n:
                raise ParameterError(f"Cyclic(n, q) needs 1 <= q < n, got q={q}")
            if math.gcd(n, q) != 1:
                raise ParameterError(f"Cyclic(n, q) needs gcd(n, q) = 1, got ({n}, {q})")
        elif k == "Fixture":
            if self.name not in FIXTURES:
                raise ParameterError(f"unknown fixture {self.name!r}; known: {sorted(FIXTURES)}")
        else:
            raise ParameterError(f"unknown label kind {k!r}")

    @classmethod
    def A(cls, n: int) -> "DynkinLabel":
        return cls("A", n=n)

    @classmethod
    def D(cls, n: int) -> "DynkinLabel":
        return cls("D", n=n)

    @classmethod
    def E(cls, n: int) -> "DynkinLabel":
        return cls(f"E{n}")

    @classmethod
    def cyclic(cls, n: int, q: int) -> "DynkinLabel":
        return cls("Cyclic", n=n, q=q)

    @classmethod
    def fixture(cls, name: str) -> "DynkinLabel":
        return cls("Fixture", name=name)

    @property
    def is_ade(self) -> bool:
        return self.kind in ("A", "D", "E6", "E7", "E8")

    def __str__(self) -> str:
        if self.kind in ("A", "D"):
            return f"{self.kind}({self.n})"
        if self.kind == "Cyclic":
            return f"Cyclic({self.n},{self.q})"
        if self.kind == "Fixture":
            return f"Fixture({self.name})"
        return self.kind


@dataclass(frozen=True)
class Arrow:
    src: VertexId
    dst: VertexId
    label: str


@dataclass(frozen=True)
class Relation:
    """A mesh relation ending at ``target``.

    ``terms`` holds ``(coefficient, first_arrow, second_arrow)`` triples; each
    term is the length-2 path ``first_arrow`` then ``second_arrow`` running
    from ``tau0(target)`` to ``target``.
    """

    target: VertexId
    terms: tuple[tuple[int, str, str], ...]


@dataclass(frozen=True)
class ARQuiverSpec:
    label: DynkinLabel
    vertices: tuple[VertexId, ...]
    projective: VertexId
    ranks: Mapping[VertexId, int]
    arrows: tuple[Arrow, ...]
    tau0: Mapping[VertexId, VertexId]
    middle_term: tuple[VertexId, ...]
    group_order: int
    relations: tuple[Relation, ...]
    gorenstein: bool
    _arrow_index: dict[str, Arrow] = field(default=None, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_arrow_index", {a.label: a for a in self.arrows})

    def arrow(self, label: str) -> Arrow:
        return self._arrow_index[label]

    def arrows_into(self, v: VertexId) -> list[Arrow]:
        return [a for a in self.arrows if a.dst == v]

    def arrows_out_of(self, v: VertexId) -> list[Arrow]:
        return [a for a in self.arrows if a.src == v]

    def relation_at(self, v: VertexId) -> Relation:
        for rel in self.relations:
            if rel.target == v:
                return rel
        raise KeyError(v)

    def tau0_inverse(self, v: VertexId) -> VertexId:
        for w, tw in self.tau0.items():
            if tw == v:
                return w
        raise KeyError(v)

    def non_projective(self) -> list[VertexId]:
        return [v for v in self.vertices if v != self.projective]

    def vertex_name(self, v: VertexId) -> str:
        if isinstance(v, tuple):
            return "M" + "_".join(str(x) for x in v)
        return f"M{v}"

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "label": str(self.label),
            "vertices": [vertex_to_json(v) for v in self.vertices],
            "projective": vertex_to_json(self.projective),
            "ranks": [[vertex_to_json(v), self.ranks[v]] for v in self.vertices],
            "arrows": [
                {"src": vertex_to_json(a.src), "dst": vertex_to_json(a.dst), "label": a.label}
                for a in self.arrows
            ],
            "tau0": [[vertex_to_json(v), vertex_to_json(self.tau0[v])] for v in self.vertices],
            "middle_term": [vertex_to_json(v) for v in self.middle_term],
            "group_order": self.group_order,
            "relations": [
                {"target": vertex_to_json(r.target), "terms": [list(t) for t in r.terms]}
                for r in self.relations
            ],
            "gorenstein": self.gorenstein,
        }


def vertex_to_json(v: VertexId) -> Any:
    return list(v) if isinstance(v, tuple) else v


def vertex_from_json(x: Any) -> VertexId:
    return tuple(x) if isinstance(x, list) else x  # type: ignore[return-value]


def parse_vertex(text: str) -> VertexId:
    """Parse ``"3"`` as 3 and ``"2,1"`` (or ``"(2,1)"``) as the pair (2, 1)."""
    s = text.strip().strip("()")
    if "," in s:
        i, j = (int(p) for p in s.split(","))
        return (i, j)
    return int(s)


def spec_from_json(doc: Mapping[str, Any]) -> ARQuiverSpec:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')}")
    return ARQuiverSpec(
        label=parse_label(doc["label"]),
        vertices=tuple(vertex_from_json(v) for v in doc["vertices"]),
        projective=vertex_from_json(doc["projective"]),
        ranks={vertex_from_json(v): r for v, r in doc["ranks"]},
        arrows=tuple(
            Arrow(vertex_from_json(a["src"]), vertex_from_json(a["dst"]), a["label"])
            for a in doc["arrows"]
        ),
        tau0={vertex_from_json(v): vertex_from_json(w) for v, w in doc["tau0"]},
        middle_term=tuple(vertex_from_json(v) for v in doc["middle_term"]),
        group_order=doc["group_order"],
        relations=tuple(
            Relation(vertex_from_json(r["target"]), tuple((int(c), a, b) for c, a, b in r["terms"]))
            for r in doc["relations"]
        ),
        gorenstein=doc["gorenstein"],
    )


def dumps(spec: ARQuiverSpec) -> str:
    return json.dumps(spec.to_json(), sort_keys=True, indent=2)


def parse_label(text: str) -> DynkinLabel:
    """Inverse of ``str(label)``."""
    s = text.strip()
    if s in ("E6", "E7", "E8"):
        return DynkinLabel(s)
    head, _, rest = s.partition("(")
    args = rest.rstrip(")").split(",") if rest else []
    if head in ("A", "D") and len(args) == 1:
        return DynkinLabel(head, n=int(args[0]))
    if head == "Cyclic" and len(args) == 2:
        return DynkinLabel.cyclic(int(args[0]), int(args[1]))
    if head == "Fixture" and len(args) == 1:
        return DynkinLabel.fixture(args[0].strip())
    raise ParameterError(f"cannot parse label {text!r}")


# ---------------------------------------------------------------------------
# builders


def _symmetric_spec(
    label: DynkinLabel,
    n_vertices: int,
    ranks: Sequence[int],
    pairs: Sequence[tuple[str, int, int, str]],
    group_order: int,
) -> ARQuiverSpec:
    """Spec for a symmetric (tau0 = id) quiver given as ``(label, src, dst, reverse_label)`` pairs.

    The relation at v is the sum over arrows alpha out of v of alpha followed by
    its reverse, every coefficient +1.
    """
    arrows: list[Arrow] = []
    reverse: dict[str, str] = {}
    for lab, s, t, rlab in pairs:
        arrows.append(Arrow(s, t, lab))
        arrows.append(Arrow(t, s, rlab))
        reverse[lab] = rlab
        reverse[rlab] = lab
    arrows.sort(key=lambda a: a.label)
    vertices = tuple(range(n_vertices))
    relations = []
    for v in vertices:
        out = sorted((a for a in arrows if a.src == v), key=lambda a: a.label)
        relations.append(Relation(v, tuple((1, a.label, reverse[a.label]) for a in out)))
    return ARQuiverSpec(
        label=label,
        vertices=vertices,
        projective=0,
        ranks={v: ranks[v] for v in vertices},
        arrows=tuple(arrows),
        tau0={v: v for v in vertices},
        middle_term=tuple(sorted(a.dst for a in arrows if a.src == 0)),
        group_order=group_order,
        relations=tuple(relations),
        gorenstein=True,
    )


def _build_D(label: DynkinLabel) -> ARQuiverSpec:
    n = label.n
    assert n is not None
    if n == 5:
        # the classical letter labels for D5
        pairs = [
            ("a", 0, 2, "A"),
            ("b", 1, 2, "B"),
            ("c", 3, 2, "C"),
            ("d", 3, 4, "D"),
            ("e", 3, 5, "E"),
        ]
    else:
        pairs = [("a", 0, 2, "A"), ("b", 1, 2, "B")]
        for k in range(3, n - 1):
            # middle edge between k-1 and k; lower-case letter on the arrow pointing down at odd k
            if k % 2 == 1:
                pairs.append((f"p{k}", k, k - 1, f"P{k}"))
            else:
                pairs.append((f"p{k}", k - 1, k, f"P{k}"))
        pairs.append(("c", n - 1, n - 2, "C"))
        pairs.append(("d", n, n - 2, "D"))
    ranks = [1, 1] + [2] * (n - 3) + [1, 1]
    return _symmetric_spec(label, n + 1, ranks, pairs, 4 * (n - 2))


_E_DATA: dict[str, tuple[list[int], list[tuple[str, int, int, str]], int]] = {
    "E6": (
        [1, 2, 3, 2, 2, 1, 1],
        [
            ("a", 5, 3, "A"),
            ("b", 2, 3, "B"),
            ("c", 2, 1, "C"),
            ("d", 2, 4, "D"),
            ("e", 0, 1, "E"),
            ("f", 6, 4, "F"),
        ],
        24,
    ),
    "E7": (
        [1, 2, 3, 4, 3, 2, 1, 2],
        [
            ("a", 0, 1, "A"),
            ("b", 2, 1, "B"),
            ("c", 2, 3, "C"),
            ("d", 7, 3, "D"),
            ("e", 4, 3, "E"),
            ("f", 4, 5, "F"),
            ("g", 6, 5, "G"),
        ],
        48,
    ),
    "E8": (
        [1, 2, 3, 4, 5, 6, 4, 2, 3],
        [
            ("a", 0, 1, "A"),
            ("b", 2, 1, "B"),
            ("c", 2, 3, "C"),
            ("d", 4, 3, "D"),
            ("e", 4, 5, "E"),
            ("f", 8, 5, "F"),
            ("g", 6, 5, "G"),
            ("h", 6, 7, "H"),
        ],
        120,
    ),
}


def _build_E(label: DynkinLabel) -> ARQuiverSpec:
    ranks, pairs, order = _E_DATA[label.kind]
    return _symmetric_spec(label, len(ranks), ranks, pairs, order)


def _build_cyclic(label: DynkinLabel, n: int, q: int, gorenstein_label: bool) -> ARQuiverSpec:
    vertices = tuple(range(n))
    arrows = []
    for t in vertices:
        arrows.append(Arrow(t, (t + 1) % n, f"x{t}"))
        arrows.append(Arrow(t, (t + q) % n, f"y{t}"))
    # the sequence tau(N) -> tau(N)+1, tau(N)+q -> N forces tau(N) = N - 1 - q
    tau0 = {t: (t - 1 - q) % n for t in vertices}
    relations = []
    for N in vertices:
        s = tau0[N]
        # tau0(N) -> tau0(N)+1 -> N  and  tau0(N) -> tau0(N)+q -> N
        relations.append(
            Relation(N, ((1, f"x{s}", f"y{(s + 1) % n}"), (1, f"y{s}", f"x{(s + q) % n}")))
        )
    return ARQuiverSpec(
        label=label,
        vertices=vertices,
        projective=0,
        ranks={t: 1 for t in vertices},
        arrows=tuple(arrows),
        tau0=tau0,
        middle_term=tuple(sorted(a.dst for a in arrows if a.src == 0)),
        group_order=n,
        relations=tuple(relations),
        gorenstein=gorenstein_label or (1 + q) % n == 0,
    )


def _build_d52(label: DynkinLabel) -> ARQuiverSpec:
    """Quiver of the D_{5,2} quotient: a D5-shaped layer repeated over Z/3.

    Vertex (i, j) has rank 1 for i in {0, 1, 3, 4} and rank 2 for i = 2.  The
    arrows are (i, j) -> (2, j-1) and (2, j) -> (i, j-1) for i != 2, and the
    translation lowers the second index by one.
    """
    layer_ranks = (1, 1, 2, 1, 1)
    vertices = tuple(sorted(((i, j) for i in range(5) for j in range(3)), key=lambda v: (v[1], v[0])))
    arrows = []
    for i in (0, 1, 3, 4):
        for j in range(3):
            arrows.append(Arrow((i, j), (2, (j - 1) % 3), f"u{i}{j}"))
            arrows.append(Arrow((2, j), (i, (j - 1) % 3), f"w{i}{j}"))
    arrows.sort(key=lambda a: a.label)
    tau0 = {(i, j): (i, (j - 1) % 3) for (i, j) in vertices}
    relations = []
    for N in vertices:
        i, j = N
        s = tau0[N]
        terms = []
        for a in sorted(arrows, key=lambda a: a.label):
            if a.src != s:
                continue
            for b in sorted(arrows, key=lambda a: a.label):
                if b.src == a.dst and b.dst == N:
                    terms.append((1, a.label, b.label))
        relations.append(Relation(N, tuple(terms)))
    return ARQuiverSpec(
        label=label,
        vertices=vertices,
        projective=(0, 0),
        ranks={v: layer_ranks[v[0]] for v in vertices},
        arrows=tuple(arrows),
        tau0=tau0,
        middle_term=tuple(sorted(a.dst for a in arrows if a.src == (0, 0))),
        group_order=24,
        relations=tuple(relations),
        gorenstein=False,
    )


FIXTURES = {"D52": _build_d52}


def build(label: DynkinLabel) -> ARQuiverSpec:
    """Build the AR-quiver spec for ``label``."""
    if label.kind == "A":
        assert label.n is not None
        return _build_cyclic(label, label.n + 1, label.n, True)
    if label.kind == "D":
        return _build_D(label)
    if label.kind in _E_DATA:
        return _build_E(label)
    if label.kind == "Cyclic":
        assert label.n is not None and label.q is not None
        return _build_cyclic(label, label.n, label.q, False)
    return FIXTURES[label.name](label)  # type: ignore[index]


def with_relation_coefficients(
    spec: ARQuiverSpec, target: VertexId, coefficients: Sequence[int]
) -> ARQuiverSpec:
    """Return a copy of ``spec`` whose relation at ``target`` uses new coefficients."""
    rels = []
    for rel in spec.relations:
        if rel.target == target:
            if len(coefficients) != len(rel.terms):
                raise ValueError("coefficient count does not match the relation")
            rel = Relation(target, tuple((c, a, b) for c, (_, a, b) in zip(coefficients, rel.terms)))
        rels.append(rel)
    return replace(spec, relations=tuple(rels))


# ---------------------------------------------------------------------------
# validation


def _expected_relation_paths(spec: ARQuiverSpec, N: VertexId) -> list[tuple[str, str]]:
    """The length-2 paths that the mesh relation at N has to contain."""
    if spec.label.kind in ("D", "E6", "E7", "E8"):
        # alpha then its reverse, for every arrow alpha out of N
        out = []
        for a in spec.arrows_out_of(N):
            back = [b for b in spec.arrows if b.src == a.dst and b.dst == N]
            if len(back) == 1:
                out.append((a.label, back[0].label))
        return sorted(out)
    if spec.label.kind in ("A", "Cyclic"):
        n = len(spec.vertices)
        q = spec.label.q if spec.label.kind == "Cyclic" else spec.label.n
        s = spec.tau0[N]
        return sorted([(f"x{s}", f"y{(s + 1) % n}"), (f"y{s}", f"x{(s + q) % n}")])
    # fixture: every length-2 path from tau0(N) to N
    s = spec.tau0[N]
    return sorted(
        (a.label, b.label)
        for a in spec.arrows_out_of(s)
        for b in spec.arrows_out_of(a.dst)
        if b.dst == N
    )


def validate(spec: ARQuiverSpec) -> list[str]:
    """Return one diagnostic per violated invariant (empty when the spec is sound)."""
    diags: list[str] = []
    vset = set(spec.vertices)
    if len(vset) != len(spec.vertices):
        diags.append("duplicate vertices")
    if set(spec.ranks) != vset or any(r < 1 for r in spec.ranks.values()):
        diags.append("ranks must be positive and defined on every vertex")
    elif sum(r * r for r in spec.ranks.values()) != spec.group_order:
        diags.append("rank identity violated")
    if spec.projective not in vset:
        diags.append("projective vertex missing")
    elif spec.ranks.get(spec.projective) != 1:
        diags.append("projective rank must be 1")
    labels = [a.label for a in spec.arrows]
    if len(set(labels)) != len(labels):
        diags.append("arrow labels not unique")
    if any(a.src not in vset or a.dst not in vset for a in spec.arrows):
        diags.append("arrow endpoint outside vertex set")
    if set(spec.tau0) != vset or set(spec.tau0.values()) != vset:
        diags.append("tau0 is not a bijection on vertices")
    elif spec.label.is_ade and any(spec.tau0[v] != v for v in vset):
        diags.append("tau0 must be the identity for ADE types")
    if Counter(spec.middle_term) != Counter(a.dst for a in spec.arrows if a.src == spec.projective):
        diags.append("middle term differs from arrow targets out of the projective")
    if spec.label.is_ade:
        pairs = Counter((a.src, a.dst) for a in spec.arrows)
        if any(pairs[(s, t)] != pairs[(t, s)] for (s, t) in pairs):
            diags.append("arrow set not symmetric")
    index = {a.label: a for a in spec.arrows}
    targets = [r.target for r in spec.relations]
    if sorted(map(repr, targets)) != sorted(map(repr, spec.vertices)):
        diags.append("need exactly one relation per vertex")
    for rel in spec.relations:
        N = rel.target
        ok = True
        for c, a, b in rel.terms:
            if a not in index or b not in index or c == 0:
                ok = False
                continue
            A, B = index[a], index[b]
            if A.dst != B.src or B.dst != N or A.src != spec.tau0.get(N):
                ok = False
        if not ok:
            diags.append(f"relation at {N} is not a sum of composable paths tau0(N) -> N")
        elif sorted((a, b) for _, a, b in rel.terms) != _expected_relation_paths(spec, N):
            diags.append(f"relation at {N} does not match the mesh pattern")
    return diags


def builtin_labels(
    a_range: Iterable[int] = range(1, 11), d_range: Iterable[int] = range(4, 13)
) -> list[DynkinLabel]:
    """The ADE labels covered by the golden tables, plus the two non-Gorenstein examples."""
    labels = [DynkinLabel.A(n) for n in a_range]
    labels += [DynkinLabel.D(n) for n in d_range]
    labels += [DynkinLabel.E(6), DynkinLabel.E(7), DynkinLabel.E(8)]
    labels += [DynkinLabel.cyclic(8, 5), DynkinLabel.fixture("D52")]
    return labels
