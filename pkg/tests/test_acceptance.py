"""Acceptance criteria, one test and one PASS/FAIL line each.

Run with pytest (the lines are printed in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import functools
import time

import numpy as np

from octorep.octonion import Octonion, o_norm
from octorep.orep import omega
from octorep.realmat import determinant
from octorep.verify import EXPECTED_PATTERNS, format_result, run_suite

_RESULTS: dict[int, str] = {}
_TIMINGS: dict[str, float] = {}
DESK_SCALE_SECONDS = 120.0


def summary_lines() -> list[str]:
    return [_RESULTS[k] for k in sorted(_RESULTS)]


def report(n: int, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n}: {detail}"
    _RESULTS[n] = line
    print(line)
    return ok


@functools.lru_cache(maxsize=None)
def suite(name: str, trials: int, seed: int):
    start = time.perf_counter()
    result = run_suite(name, trials, seed)
    _TIMINGS[f"{name} x{trials}"] = time.perf_counter() - start
    return result


def _within(result, tol_cap: float) -> bool:
    """Every residual identity in the run is judged at a tolerance no looser than ``tol_cap``."""
    return all(s.tol <= tol_cap for s in result.identities)


def test_criterion_1_algebra_laws():
    r = suite("octonion-laws", 1000, 0)
    ok = r.passed and _within(r, 1e-10)
    assert report(1, ok, f"octonion-laws x1000: failures {r.failures}, worst {r.worst_residual:.3e}"), format_result(r)


def test_criterion_2_determinant_formula():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(1000):
        a = Octonion(rng.uniform(-1, 1, 8))
        ref = o_norm(a) ** 8
        worst = max(worst, abs(determinant(omega(a)) - ref) / ref)
    special = abs(determinant(omega(Octonion.basis(0) + Octonion.basis(1))) - 16.0)
    ok = worst <= 1e-8 and special <= 1e-10
    assert report(2, ok, f"det omega(a) = |a|^8 worst rel {worst:.3e} (tol 1e-8); "
                         f"|det omega(1+e1) - 16| = {special:.3e} (tol 1e-10)")


def test_criterion_3_delta_formulas():
    r = suite("delta-formulas", 1000, 0)
    need = {
        "det delta = first closed form": 1e-8,
        "det delta = second closed form": 1e-8,
        "first closed form = second closed form": 1e-8,
        "char poly of delta = closed form": 1e-7,
        "rank delta(e1,e2) = 6": 0.0,
        "delta(a,a)^3 = -4|Im a|^2 delta(a,a)": 1e-9,
    }
    ok = r.passed and all(r.identity(k).tol <= t and r.identity(k).failures == 0 for k, t in need.items())
    assert report(3, ok, f"delta-formulas x1000: failures {r.failures}, worst {r.worst_residual:.3e}"), format_result(r)


def test_criterion_4_representation_identities():
    r = suite("rep-identities", 1000, 0)
    listed = [s for s in r.identities
              if not s.name.startswith("det ") and "^-1" not in s.name and "E8" not in s.name and "F8" not in s.name]
    ok = r.passed and all(s.tol <= 1e-10 for s in listed)
    worst = max(s.worst for s in listed)
    assert report(4, ok, f"rep-identities x1000: failures {r.failures}, "
                         f"{len(listed)} identities at <= 1e-10, worst {worst:.3e}"), format_result(r)


def test_criterion_5_scalar_solvers():
    r = suite("scalar-solvers", 1000, 0)
    equivalence = r.identity("similarity condition <=> det delta(a,b) = 0")
    ok = r.passed and _within(r, 1e-8) and equivalence.failures == 0
    assert report(5, ok, f"scalar-solvers x1000: failures {r.failures}, worst {r.worst_residual:.3e}, "
                         f"condition/det disagreements {equivalence.failures}/{equivalence.checks}"), format_result(r)


def test_criterion_6_vec_calculus():
    r = suite("vec-calculus", 1000, 0)
    ok = r.passed and _within(r, 1e-10)
    assert report(6, ok, f"vec-calculus x1000: failures {r.failures}, worst {r.worst_residual:.3e}"), format_result(r)


def test_criterion_7_inverse_operators():
    r = suite("inverse-operators", 100, 0)
    laws = [s for s in r.identities if not s.name.startswith("1x1")]
    scalar = r.identity("1x1 left inverse = conj(a)/|a|^2")
    ok = r.passed and all(s.tol <= 1e-8 for s in laws) and scalar.tol <= 1e-12
    assert report(7, ok, f"inverse-operators x100: failures {r.failures}, worst law "
                         f"{max(s.worst for s in laws):.3e}, 1x1 worst {scalar.worst:.3e}"), format_result(r)


def test_criterion_8_cayley_hamilton():
    r = suite("cayley-hamilton", 100, 0)
    ok = r.passed and _within(r, 1e-6)
    assert report(8, ok, f"cayley-hamilton x100 (m=1,2,3): failures {r.failures}, "
                         f"worst residual/sum|r| {r.worst_residual:.3e}"), format_result(r)


def test_criterion_9_spectra():
    r = suite("eig-multiplicity", 50, 7)
    small = [s for s in r.identities if s.name.startswith(("m=2", "m=3"))]
    small_ok = all(s.failures == 0 for s in small)
    conj = {m: r.identity(f"m={m}: conjectured pattern {EXPECTED_PATTERNS[m]} dominant (>= 95%)") for m in (4, 5)}
    large_ok = all(s.failures == 0 for s in conj.values()) and all(
        s.failures == 0 for s in r.identities if s.name.startswith(("m=4", "m=5")) and "conjectured" not in s.name
    )
    tables = "; ".join(n for n in r.notes)
    detail = (f"2x2 and 3x3 {'ok' if small_ok else 'FAILED'}; "
              f"4x4/5x5 conjecture {'confirmed' if large_ok else 'contradicted'} ({tables})")
    assert report(9, small_ok and large_ok, detail), format_result(r)


def test_criterion_10_desk_scale():
    # reuses the cached runs above; any not yet run are run now
    for name, trials, seed in [("octonion-laws", 1000, 0), ("delta-formulas", 1000, 0), ("rep-identities", 1000, 0),
                               ("scalar-solvers", 1000, 0), ("vec-calculus", 1000, 0), ("inverse-operators", 100, 0),
                               ("cayley-hamilton", 100, 0), ("eig-multiplicity", 50, 7)]:
        suite(name, trials, seed)
    slowest = max(_TIMINGS, key=_TIMINGS.get)
    ok = _TIMINGS[slowest] <= DESK_SCALE_SECONDS
    assert report(10, ok, f"every suite under {DESK_SCALE_SECONDS:.0f} s; slowest {slowest} "
                          f"{_TIMINGS[slowest]:.1f} s, total {sum(_TIMINGS.values()):.1f} s")


if __name__ == "__main__":
    import sys

    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
