import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from arsig.catalog import DynkinLabel, build, builtin_labels

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=15, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@lru_cache(maxsize=None)
def spec_for(label: DynkinLabel):
    """One shared spec object per label, so engine and category caches are reused across tests."""
    return build(label)


ADE_LABELS = [l for l in builtin_labels() if l.is_ade]
ALL_LABELS = list(builtin_labels())


@pytest.fixture(params=ALL_LABELS, ids=str)
def any_spec(request):
    return spec_for(request.param)


@pytest.fixture(params=ADE_LABELS, ids=str)
def ade_spec(request):
    return spec_for(request.param)


@lru_cache(maxsize=None)
def results_for(label: DynkinLabel):
    """dual_f_signature for every vertex with the default seed and config, computed once per session."""
    from arsig.dualfsig import report

    return {r.module: r for r in report(spec_for(label))}


# criterion number -> (title, list of problems); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, list[str]]] = {}
ACCEPTANCE_COUNT = 8


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in range(1, ACCEPTANCE_COUNT + 1):
        if k not in ACCEPTANCE:
            terminalreporter.write_line(f"FAIL criterion {k}: not run to completion")
            continue
        title, problems = ACCEPTANCE[k]
        if problems:
            shown = "; ".join(problems[:6]) + (f"; ... {len(problems) - 6} more" if len(problems) > 6 else "")
            terminalreporter.write_line(f"FAIL criterion {k}: {title} ({len(problems)} problems: {shown})")
        else:
            terminalreporter.write_line(f"PASS criterion {k}: {title}")
