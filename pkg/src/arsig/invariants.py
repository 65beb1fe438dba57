"""F-signatures and the Hilbert-Kunz multiplicity as exact rationals.

The multiplicity of M_t in a Frobenius pushforward grows like rank(t) / |G|,
which gives the (generalized) F-signature.  The Hilbert-Kunz multiplicity is
the average of the minimal number of generators weighted by rank:

    e_HK(R) = (1 / |G|) * sum_t rank(t) * mu(t)

with mu taken from the counting algorithm, never from a stored table.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .catalog import ARQuiverSpec, VertexId, vertex_to_json
from .counting import count_from_projective, minimal_generators


def f_signature(spec: ARQuiverSpec, t: VertexId) -> Fraction:
    return Fraction(spec.ranks[t], spec.group_order)


def generalized_f_signature(spec: ARQuiverSpec, t: VertexId, s: VertexId) -> Fraction:
    """Asymptotic multiplicity of M_t in the pushforwards of M_s."""
    return Fraction(spec.ranks[t] * spec.ranks[s], spec.group_order)


def mu_vector(spec: ARQuiverSpec) -> dict[VertexId, int]:
    profile = count_from_projective(spec)
    return {t: minimal_generators(spec, t, profile)[0] for t in spec.vertices}


def hk_numerator(spec: ARQuiverSpec) -> int:
    """sum_t rank(t) * mu(t), the Hilbert-Kunz multiplicity times |G|."""
    mu = mu_vector(spec)
    return sum(spec.ranks[t] * mu[t] for t in spec.vertices)


def hk_multiplicity(spec: ARQuiverSpec) -> Fraction:
    return Fraction(hk_numerator(spec), spec.group_order)


@dataclass(frozen=True)
class VertexInvariants:
    vertex: VertexId
    name: str
    rank: int
    mu: int
    f_signature: Fraction


@dataclass(frozen=True)
class InvariantReport:
    label: str
    group_order: int
    vertices: tuple[VertexInvariants, ...]
    e_hk: Fraction

    @classmethod
    def of(cls, spec: ARQuiverSpec) -> "InvariantReport":
        mu = mu_vector(spec)
        rows = tuple(
            VertexInvariants(t, spec.vertex_name(t), spec.ranks[t], mu[t], f_signature(spec, t)) for t in spec.vertices
        )
        e = Fraction(sum(r.rank * r.mu for r in rows), spec.group_order)
        return cls(str(spec.label), spec.group_order, rows, e)

    def to_json(self, reduced: bool = False) -> dict[str, Any]:
        G = self.group_order
        return {
            "label": self.label,
            "group_order": G,
            "e_hk": _rational_json(self.e_hk, G, reduced),
            "vertices": [
                {
                    "vertex": vertex_to_json(v.vertex),
                    "name": v.name,
                    "rank": v.rank,
                    "mu": v.mu,
                    "f_signature": _rational_json(v.f_signature, G, reduced),
                }
                for v in self.vertices
            ],
        }

    def dumps(self, reduced: bool = False) -> str:
        return json.dumps(self.to_json(reduced), sort_keys=True, indent=2)

    def to_csv(self, reduced: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["vertex", "rank", "mu", "f_signature"])
        for v in self.vertices:
            w.writerow([v.name, v.rank, v.mu, render(v.f_signature, self.group_order, reduced)])
        w.writerow(["e_hk", "", "", render(self.e_hk, self.group_order, reduced)])
        return buf.getvalue()


def render(x: Fraction, group_order: int, reduced: bool = False) -> str:
    """``num/den`` over |G| unless reduced or |G| does not clear the denominator."""
    if reduced or (x * group_order).denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return f"{int(x * group_order)}/{group_order}"


def _rational_json(x: Fraction, group_order: int, reduced: bool) -> dict[str, int]:
    num, den = render(x, group_order, reduced).split("/")
    return {"num": int(num), "den": int(den)}
