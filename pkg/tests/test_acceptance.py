"""The eleven acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line whether or
not it passes; under pytest the lines are also collected into a summary
section at the end of the run.  Run directly (``python3
tests/test_acceptance.py``) for just those lines.
"""

from __future__ import annotations

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))
from conftest import load_fixture  # noqa: E402

from nodal_lengths import zeros as zmod  # noqa: E402
from nodal_lengths.analysis import case1_sequence, case2_sequence, estimate_limits  # noqa: E402
from nodal_lengths.nodal_disc import dilate, extension_radius, length_of, nodal_length, portrait, ratio  # noqa: E402
from nodal_lengths.rect_torus import rect_window, simplicity_audit  # noqa: E402
from nodal_lengths.render import RenderSpec, render_svg  # noqa: E402
from nodal_lengths.zeros import (BC, ZeroCache, breen_bounds, check_interlacing,  # noqa: E402
                                 dirichlet_zero, zero_table)


RESULTS: dict[int, str] = {}


def report(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[n] = line
    print(line, flush=True)
    return ok


def _oracle():
    raw = load_fixture("oracle_zeros.json")["dirichlet"]
    return {int(k): [float(v) for v in vals] for k, vals in raw.items()}


def criterion_1() -> bool:
    ref = _oracle()
    previous = zmod.default_cache()
    zmod.set_default_cache(ZeroCache())  # time it cold
    try:
        t0 = time.perf_counter()
        first = dirichlet_zero(0, 1).value
        errs = []
        for k in (0, 1, 5, 10, 50):
            for s in (1, 2, 10):
                if (k, s) != (0, 1):
                    errs.append(abs(dirichlet_zero(k, s).value - ref[k][s - 1]))
        elapsed = time.perf_counter() - t0
    finally:
        zmod.set_default_cache(previous)
    e0 = abs(first - 2.404825557695773)
    ok = e0 < 1e-9 and len(errs) >= 10 and max(errs) < 1e-9 and elapsed < 1.0
    return report(1, ok, f"j01 err {e0:.1e}, {len(errs)} more zeros max err {max(errs):.1e}, {elapsed:.2f} s")


def criterion_2() -> bool:
    t0 = time.perf_counter()
    bad = [k for k in range(61) if not check_interlacing(k, 59)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    return report(2, ok, f"k<=60, s<=59, violations at k={bad}, {elapsed:.1f} s")


def criterion_3() -> bool:
    lower, upper = [], []
    for k in range(61):
        z = zero_table(BC.DIRICHLET, k, 60).array()
        for s in range(2, 61):
            lo, hi = breen_bounds(k, s)
            if not lo < z[s - 1]:
                lower.append((k, s))
            if not z[s - 1] < hi:
                upper.append((k, s))
    fx = load_fixture("breen_corner.json")
    corner = []
    for k in range(61):
        lo, hi = breen_bounds(k, 1)
        z = dirichlet_zero(k, 1).value
        corner.append(((k, 1), lo < z, z < hi))
    corner_ok = ([list(c) for c, lo_ok, _ in corner if not lo_ok] == [c for c in fx["lower_fails"] if c[1] == 1]
                 and [list(c) for c, _, hi_ok in corner if not hi_ok] == [c for c in fx["upper_fails"] if c[1] == 1])
    ok = not lower and not upper and corner_ok
    ks = sorted({k for k, _ in upper})
    return report(3, ok, f"lower failures {len(lower)}, upper failures {len(upper)} (orders {ks}), "
                         f"s=1 corner matches fixture: {corner_ok}")


def criterion_4() -> bool:
    r = np.array([v for _, v in case2_sequence(200)])
    inc = bool(np.all(np.diff(r) > 0))
    ok = inc and abs(r[-1] - 1) < 0.01 and r[-1] < 1
    return report(4, ok, f"ratio(0,200) = {r[-1]:.6f}, increasing: {inc}")


def criterion_5() -> bool:
    r = np.array([v for _, v in case1_sequence(500)])
    inc = bool(np.all(np.diff(r) > 0))
    ok = inc and 1.93 < r[-1] < 2.0 and bool(np.all(r < 2))
    return report(5, ok, f"ratio(500,1) = {r[-1]:.6f}, increasing: {inc}, max {r.max():.6f}")


def criterion_6() -> bool:
    eps0 = load_fixture("measured.json")["case3_box"]["eps0"]
    vals = np.array([[ratio(k, s).ratio for s in range(20, 61)] for k in range(20, 61)])
    ok = bool(np.all(vals >= 1 - eps0) and np.all(vals <= 2))
    return report(6, ok, f"eps0 = {eps0}, range [{vals.min():.6f}, {vals.max():.6f}]")


def criterion_7() -> bool:
    recs = [ratio(0, 5), ratio(4, 3), ratio(10, 1)]
    order = recs[0].ratio < recs[1].ratio < recs[2].ratio
    lam_ok = all(190 <= r.eigenvalue <= 230 for r in recs)
    desc = ", ".join(f"u({r.k},{r.s}) ratio {r.ratio:.5f} lambda {r.eigenvalue:.2f}" for r in recs)
    return report(7, order and lam_ok, desc)


def criterion_8() -> bool:
    worst = 0.0
    for k in range(1, 41):
        for s in range(2, 41):
            big_r = extension_radius(k, s)
            ln = nodal_length(k, s, BC.NEUMANN)
            ld = length_of(portrait(k, s, BC.DIRICHLET), big_r)
            worst = max(worst, abs(ln - ld + 2 * k * (big_r - 1)))
    low = np.array([v for _, v in case2_sequence(200, BC.NEUMANN)])
    high = np.array([v for _, v in case1_sequence(500, BC.NEUMANN)])
    toward = bool(np.all(np.diff(np.abs(low - 1)) < 0) and np.all(np.diff(high) > 0))
    ok = (worst < 1e-9 and abs(low[-1] - 1) < 0.01 and 1.93 < high[-1] < 2.0
          and bool(np.all(high < 2)) and toward)
    return report(8, ok, f"extension identity max err {worst:.1e}; Neumann ratio(0,200) = {low[-1]:.6f}, "
                         f"ratio(500,1) = {high[-1]:.6f}, monotone: {toward}")


def criterion_9() -> bool:
    modes = [(k, s) for k in (0, 1, 4, 10, 33) for s in (1, 2, 7, 20) if (k, s) != (0, 1)]
    base = estimate_limits(BC.DIRICHLET, [300.0, 3000.0])
    worst = 0.0
    for big_r in (0.5, 2.0, math.pi):
        for k, s in modes:
            rec = ratio(k, s)
            worst = max(worst, abs(dilate(rec, big_r).ratio / (big_r**2 * rec.ratio) - 1))
        t = estimate_limits(BC.DIRICHLET, [300.0 / big_r**2, 3000.0 / big_r**2], radius=big_r)
        area = math.pi * big_r**2
        for a, b in zip(base.rows, t.rows):
            worst = max(worst, abs(b.h1_est / (area / math.pi * a.h1_est) - 1),
                        abs(b.h2_est / (area / math.pi * a.h2_est) - 1))
    return report(9, worst < 1e-12, f"max relative deviation from R^2 scaling {worst:.1e}")


def criterion_10() -> bool:
    a, b = 1.0, 2.0 ** 0.25
    t0 = time.perf_counter()
    w = rect_window(a, b, 1e6, 4e6)
    audit = simplicity_audit(a, b, 1e4, 1e-5)
    elapsed = time.perf_counter() - t0
    e1 = abs(w.min_ratio / (a * b / math.pi) - 1)
    e2 = abs(w.max_ratio / (math.sqrt(2) * a * b / math.pi) - 1)
    ok = e1 < 0.02 and e2 < 0.02 and audit.simple and elapsed < 60
    return report(10, ok, f"min off by {e1:.2%}, max off by {e2:.2%}, collisions {len(audit.collisions)}, "
                          f"{elapsed:.1f} s")


def criterion_11() -> bool:
    ok, parts = True, []
    for k, s in ((0, 5), (4, 3), (10, 1)):
        spec = RenderSpec(portrait(k, s))
        svg = render_svg(spec)
        same = svg == render_svg(RenderSpec(portrait(k, s)))
        counts = (svg.count("<circle "), svg.count("<line "))
        ok &= same and counts == (s, k)
        parts.append(f"u({k},{s}) circles {counts[0]} lines {counts[1]} deterministic {same}")
    return report(11, ok, "; ".join(parts))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 12)])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
