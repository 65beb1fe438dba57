"""Block values of D_n from the invariant-theory oracle, next to the engine's certified values.

    python scripts/dihedral_oracle.py 4 12

The oracle works with polynomials over GF(p) and never reads the AR quiver,
so agreement is independent evidence for the engine.  D(12) takes about
25 seconds.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from arsig.catalog import DynkinLabel, build  # noqa: E402
from arsig.dualfsig import dual_f_signature  # noqa: E402
from tests.oracles.dihedral import DihedralOracle  # noqa: E402


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("lo", type=int, nargs="?", default=4)
    ap.add_argument("hi", type=int, nargs="?", default=8)
    ap.add_argument("--trials", type=int, default=2)
    args = ap.parse_args()
    for n in range(args.lo, args.hi + 1):
        t0 = time.perf_counter()
        oracle = DihedralOracle(n, 2 * n)
        spec = build(DynkinLabel.D(n))
        ours = [dual_f_signature(spec, m).certified for m in spec.vertices]
        theirs = [oracle.block_value(m, trials=args.trials) for m in spec.vertices]
        tag = "agree" if ours == theirs else "DIFFER"
        print(f"D({n}) oracle {theirs} engine {[int(x) for x in ours]} {tag} ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
