"""One test per acceptance criterion.

Each test records its verdict in ``ACCEPTANCE`` before asserting, and the
terminal summary prints one PASS/FAIL line per criterion.  Criteria 1 and 7
contain claims that the computation contradicts; their tests are strict
xfails so that a change in either direction is noticed.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from arsig.catalog import DynkinLabel
from arsig.cli import main
from arsig.counting import count_from_projective, count_from_vertex, minimal_generators
from arsig.dualfsig import certify_surjection, closed_form, coverage_space, generator_basis, search_trials, upper_bound
from arsig.invariants import hk_multiplicity, mu_vector
from arsig.keylemma import GeneratorTable, greedy_chain, min_row_sum, selected_minor, verify_minor
from arsig.meshcat import category

from .conftest import ACCEPTANCE, ADE_LABELS, ALL_LABELS, results_for, spec_for
from .oracles.symbolic_det import symbolic_det


class Checks:
    """Collects problems for one criterion and records the verdict even if a check raises."""

    def __init__(self, k: int, title: str):
        self.k, self.title, self.problems = k, title, []

    def __enter__(self) -> "Checks":
        return self

    def expect(self, ok: bool, what: str) -> None:
        if not ok:
            self.problems.append(what)

    def __exit__(self, exc_type, exc, tb) -> bool:
        if exc is not None:
            self.problems.append(f"{exc_type.__name__}: {exc}")
        ACCEPTANCE[self.k] = (self.title, self.problems)
        return False


@pytest.mark.xfail(
    strict=True,
    reason="the closed form is below the certified surjections for some D_n with n/2 < m <= n-2 and for E8 M7, M8; see README",
)
def test_criterion_1_golden_tables():
    start = time.perf_counter()
    with Checks(1, "golden tables: dual_f_signature == closed_form on A1..A10, D4..D12, E6, E7, E8") as c:
        total = 0
        for lab in ADE_LABELS:
            res = results_for(lab)
            for m, r in res.items():
                total += 1
                closed = closed_form(lab, m)
                c.expect(r.status == "exact", f"{lab} M{m} gap")
                c.expect(r.value == closed, f"{lab} M{m}: {r.certified}/{r.group_order} vs closed form {closed * r.group_order}/{r.group_order}")
        c.title += f", {total} modules, {time.perf_counter() - start:.1f}s"
        c.expect(total >= 80, f"only {total} equalities")
    assert not c.problems, c.problems


def test_criterion_2_spot_values():
    with Checks(2, "spot values on D5, E7 M3 bound, E6 M2 at 18 and not 19") as c:
        d5 = results_for(DynkinLabel.D(5))
        c.expect(d5[1].value == Fraction(4, 12), f"D5 M1 = {d5[1].value}")
        c.expect(d5[3].value == Fraction(9, 12), f"D5 M3 = {d5[3].value}")
        c.expect(upper_bound(spec_for(DynkinLabel.E(7)), 3) == 38, "E7 upper_bound(3) != 38")
        e6 = spec_for(DynkinLabel.E(6))
        c.expect(certify_surjection(e6, 2, 18) is not None, "E6 M2 not certified at 18")
        c.expect(not any(search_trials(e6, 2, 19)), "E6 M2 sampler succeeded at 19")
    assert not c.problems


def test_criterion_3_mu_law():
    with Checks(3, "mu(M_t) = 2 rank(t) on every non-projective ADE vertex") as c:
        for lab in ADE_LABELS:
            s = spec_for(lab)
            for t in s.non_projective():
                mu = minimal_generators(s, t)[0]
                c.expect(mu == 2 * s.ranks[t], f"{lab} M{t}: mu {mu}")
    assert not c.problems


def test_criterion_4_hilbert_kunz():
    d52_cols = [(0, 0), (1, 0), (3, 0), (4, 0), (2, 2), (0, 1), (1, 1), (3, 1),
                (4, 1), (2, 0), (0, 2), (1, 2), (3, 2), (4, 2), (2, 1)]
    with Checks(4, "e_HK = 2 - 1/|G| on ADE, 19/8 on Cyclic(8,5), 5/2 on D52, both mu tables") as c:
        for lab in ADE_LABELS:
            s = spec_for(lab)
            c.expect(hk_multiplicity(s) == 2 - Fraction(1, s.group_order), f"{lab}: {hk_multiplicity(s)}")
        cyc = spec_for(DynkinLabel.cyclic(8, 5))
        d52 = spec_for(DynkinLabel.fixture("D52"))
        c.expect(hk_multiplicity(cyc) == Fraction(19, 8), "Cyclic(8,5)")
        c.expect(hk_multiplicity(d52) == Fraction(5, 2), "D52")
        mu = mu_vector(d52)
        c.expect(tuple(mu[v] for v in d52_cols) == (1, 3, 3, 3, 4, 3, 2, 2, 2, 5, 2, 3, 3, 3, 6), "D52 mu table")
        mu = mu_vector(cyc)
        c.expect(tuple(mu[t] for t in range(8)) == (1, 2, 2, 3, 3, 2, 3, 3), "cyclic mu table")
    assert not c.problems


def test_criterion_5_counting_mesh_oracle():
    with Checks(5, "counting profiles == stable Hom dimensions, all specs and start vertices") as c:
        checked = 0
        for lab in ALL_LABELS:
            s = spec_for(lab)
            cat = category(s)
            for src in s.vertices:
                prof = count_from_projective(s) if src == s.projective else count_from_vertex(s, src)
                table = cat.table(src)
                for v in s.vertices:
                    for z in range(prof.horizon + 1):
                        if v == s.projective and z > 0:
                            continue
                        checked += 1
                        got = table.eff_dim((v, z))
                        c.expect(got == prof.at(v, z), f"{lab} from {src} at {(v, z)}: {got} vs {prof.at(v, z)}")
        c.title += f", {checked} occurrences"
    assert not c.problems


def test_criterion_6_key_lemma():
    with Checks(6, "worked 3x4 table, 200 random tables verified and expanded symbolically") as c:
        worked = GeneratorTable.from_rows([[1, 0, 1, 1], [1, 1, 0, 0], [0, 1, 0, 1]])
        cert = greedy_chain(worked)
        c.expect(min_row_sum(worked) == 2, "worked n")
        c.expect(cert.columns == (1, 2, 6, 7, 5, 12), f"worked chain {cert.columns}")
        c.expect(verify_minor(worked, cert).verified, "worked minor")
        rnd = random.Random(6)
        done = 0
        while done < 200:
            d, r = rnd.randint(1, 6), rnd.randint(1, 6)
            t = GeneratorTable.from_rows([[int(rnd.random() < 0.6) for _ in range(r)] for _ in range(d)])
            cert = greedy_chain(t)
            if d * cert.n > 12:
                continue  # keeps the full expansion cheap
            done += 1
            c.expect(verify_minor(t, cert).verified, f"{t.a} not verified")
            if cert.n:
                c.expect(bool(symbolic_det(selected_minor(t, cert))), f"{t.a}: symbolic minor is zero")
    assert not c.problems


@pytest.mark.xfail(strict=True, reason="rho_t(g) exceeds 1 on every D and E type; see README")
def test_criterion_7_symmetry_and_consistency():
    with Checks(7, "duality swaps, s(R) = 1/|G|, rho in {0,1}, certified <= upper") as c:
        for lab in ADE_LABELS:
            s = spec_for(lab)
            res = results_for(lab)
            if lab.kind == "D":
                c.expect(res[lab.n - 1].value == res[lab.n].value, f"{lab} swap")
            c.expect(res[s.projective].value == Fraction(1, s.group_order), f"{lab} projective")
            c.expect(all(r.certified <= r.upper for r in res.values()), f"{lab} certified > upper")
        e6 = results_for(DynkinLabel.E(6))
        c.expect(e6[3].value == e6[4].value and e6[5].value == e6[6].value, "E6 swaps")
        for lab in ADE_LABELS:
            s = spec_for(lab)
            for m in s.vertices:
                for t in s.vertices:
                    caps = coverage_space(s, t, m).row_capacity
                    for g, rho in enumerate(caps):
                        c.expect(rho <= 1, f"{lab} t={t} m={m} g={g + 1}: rho={rho}")
    assert not c.problems


def test_criterion_8_determinism(tmp_path, capsys):
    def run(*argv: str) -> str:
        code = main(list(argv))
        out = capsys.readouterr().out
        assert code == 0, argv
        return out

    with Checks(8, "identical CLI invocations give byte-identical reports and certificates") as c:
        for argv in (
            ("dualfsig", "--type", "E6", "--all", "--format", "json", "--seed", "9"),
            ("dualfsig", "--cyclic", "8", "5", "--all", "--format", "csv", "--seed", "9"),
            ("dualfsig", "--type", "D", "--n", "7", "--all", "--format", "md"),
            ("quiver", "--fixture", "D52", "--emit", "dot"),
            ("hk", "--fixture", "D52", "--format", "json"),
        ):
            c.expect(run(*argv) == run(*argv), " ".join(argv))
        table = tmp_path / "t.csv"
        rnd = random.Random(8)
        table.write_text("\n".join(",".join(str(int(rnd.random() < 0.7)) for _ in range(6)) for _ in range(6)))
        outs = []
        for k in range(2):
            path = tmp_path / f"cert{k}.json"
            run("lemma", "--table", str(table), "--seed", "4", "--strategy", "modular", "--out", str(path))
            outs.append(path.read_bytes())
        c.expect(outs[0] == outs[1], "lemma certificate")
        c.expect(json.loads(outs[0])["verified"], "lemma certificate not verified")
    assert not c.problems
