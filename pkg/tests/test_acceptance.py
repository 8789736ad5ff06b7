"""Acceptance criteria, exact arithmetic, zero tolerance.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, and ``python3 tests/test_acceptance.py`` prints them directly.
"""

import time
from fractions import Fraction

import pytest

from fockgeom import correspondence as corr
from fockgeom.geometry import GeometryContext, build_block
from fockgeom.partitions import add_border_strips, partitions_of
from oracles import power_times_schur

RESULTS: list[str] = []
RANKS = (1, 2)
_CONTEXTS: dict[tuple[int, int], GeometryContext] = {}


def context(r: int, max_energy: int = 4) -> GeometryContext:
    key = (r, max_energy)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = GeometryContext.standard(r, max_energy, -2, 2)
    return _CONTEXTS[key]


def record(number: int, title: str, reports, seconds: float, budget: float | None = None):
    cases = sum(rep.cases for rep in reports)
    failures = [f for rep in reports for f in rep.failures]
    ok = not failures and (budget is None or seconds < budget)
    limit = f" (budget {budget:.0f}s)" if budget else ""
    RESULTS.append(f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} "
                   f"cases={cases} failures={len(failures)} time={seconds:.1f}s{limit}")
    return ok, failures


def _value_report(name: str, r: int, kinds, allowed) -> corr.VerificationReport:
    """Every matrix entry of the given atoms lies in the allowed set."""
    ctx = context(r)
    report = corr.VerificationReport(name, ctx.window)
    for op, block in corr.window_atoms(ctx.window, kinds):
        m = build_block(ctx, op, block)
        bad = [v for v in m.entries.values() if not allowed(op, v)]
        report.record(f"{op} on {block}", not bad, "allowed values", [str(v) for v in bad])
    return report


def test_criterion_1_clifford_correspondence():
    start = time.perf_counter()
    reports = []
    for r in RANKS:
        reports.append(corr.check_geometric_equals_algebraic(context(r), ("Psi", "PsiStar")))
        reports.append(_value_report("clifford-values", r, ("Psi", "PsiStar"),
                                     lambda op, v: v in (1, -1)))
    ok, failures = record(1, "Clifford correspondence", reports, time.perf_counter() - start, 60)
    assert ok, failures[:5]


def test_criterion_2_heisenberg_correspondence():
    start = time.perf_counter()
    reports = []
    for r in RANKS:
        reports.append(corr.check_geometric_equals_algebraic(context(r), ("P",)))
        ctx = context(r)
        report = corr.VerificationReport("heisenberg-values", ctx.window)
        for op, block in corr.window_atoms(ctx.window, ("P",)):
            m = build_block(ctx, op, block)
            if op.n == 0:
                c = block[0][op.color - 1]
                ok = all(m[(i, i)] == c for i in range(len(m.source))) and \
                    all(i == j for i, j in m.entries)
            else:
                ok = all(abs(v) == Fraction(1, abs(op.n)) for v in m.entries.values())
            report.record(f"{op} on {block}", ok, "(-1)^w/|strip| or c*id", m.to_json())
        reports.append(report)
    ok, failures = record(2, "Heisenberg correspondence", reports, time.perf_counter() - start, 60)
    assert ok, failures[:5]


def test_criterion_3_algebra_relations():
    start = time.perf_counter()
    reports = [corr.check_relations(context(r), bound=3) for r in RANKS]
    ok, failures = record(3, "algebra relations", reports, time.perf_counter() - start)
    assert ok, failures[:5]


def test_criterion_4_adjointness():
    start = time.perf_counter()
    reports = [corr.check_adjointness(context(r)) for r in RANKS]
    ok, failures = record(4, "adjointness", reports, time.perf_counter() - start)
    assert ok, failures[:5]


def test_criterion_5_localization_vanishing():
    start = time.perf_counter()
    reports = [corr.check_localization(context(r)) for r in RANKS]
    ok, failures = record(5, "localization vanishing", reports, time.perf_counter() - start)
    assert ok, failures[:5]


# The Clifford half fails in rank one at n1 = n2 = 1: the only fixed-point pair
# ((1), (1)) has a zero weight, so the top class vanishes identically there.
RANK_ONE_COUNTEREXAMPLES = {
    f"clifford {d} l=1 c=({c},) n=(1,1)" for d in ("raise", "lower") for c in range(-2, 3)
}


def _nonvanishing_reports():
    return [corr.check_nonvanishing(context(r, 3), bound=3) for r in RANKS]


@pytest.mark.xfail(strict=True, reason="rank one, n1 = n2 = 1 has no nonzero fixed-point value")
def test_criterion_6_nonvanishing():
    start = time.perf_counter()
    reports = _nonvanishing_reports()
    ok, failures = record(6, "nonvanishing", reports, time.perf_counter() - start)
    assert ok, failures[:5]


def test_criterion_6_failures_are_exactly_the_rank_one_case():
    r1, r2 = _nonvanishing_reports()
    assert r2.passed
    assert {f["case"] for f in r1.failures} == RANK_ONE_COUNTEREXAMPLES


def test_criterion_7_boson_fermion_correspondence():
    start = time.perf_counter()
    reports = []
    for r in RANKS:
        ctx = context(r)
        reports.append(corr.check_bosonization(ctx, max_energy=3))
        reports.append(corr.check_fermionization(ctx, max_energy=3))
    ok, failures = record(7, "boson-fermion correspondence", reports,
                          time.perf_counter() - start, 300)
    assert ok, failures[:5]


def test_criterion_8_integral_form():
    start = time.perf_counter()
    reports = [corr.check_integrality(context(r)) for r in RANKS]
    ok, failures = record(8, "integral form", reports, time.perf_counter() - start)
    assert ok, failures[:5]


def test_criterion_9_murnaghan_nakayama_oracle():
    start = time.perf_counter()
    report = corr.VerificationReport("murnaghan-nakayama", context(1).window)
    for size in range(7):
        for lam in partitions_of(size):
            for n in range(1, 6):
                mn = {mu: (-1) ** w for mu, w in add_border_strips(lam, n)}
                oracle = power_times_schur(n, lam)
                report.record(f"p_{n} s_{lam}", mn == oracle, str(oracle), str(mn))
    ok, failures = record(9, "Murnaghan-Nakayama oracle", [report], time.perf_counter() - start)
    assert ok, failures[:5]


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_") and "failures_are" not in name:
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))
