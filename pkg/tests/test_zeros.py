from __future__ import annotations

import itertools
import math
import threading

import numpy as np
import pytest

import oracle
from conftest import load_fixture
from nodal_lengths import zeros as zmod
from nodal_lengths.zeros import (BC, RESIDUAL_TOL, ZeroCache, ZeroSolverError, audit_breen, breen_bounds,
                                 check_interlacing, dirichlet_zero, large_order_guess, mcmahon_guess,
                                 neumann_zero, residual, zero_table, zeros_below)


def test_against_oracle(oracle_zeros):
    for kind in ("dirichlet", "neumann"):
        for k, ref in oracle_zeros[kind].items():
            got = zero_table(kind, k, len(ref)).array()
            assert np.max(np.abs(got - np.array(ref))) < 1e-12, (kind, k)


def test_named_values():
    assert abs(dirichlet_zero(0, 2).value - 5.520078110286311) < 1e-9
    assert abs(dirichlet_zero(10, 1).value - 14.475500686554541) < 1e-9
    assert neumann_zero(0, 1).value == 0.0
    assert abs(neumann_zero(1, 1).value - 1.8411837813406593) < 1e-9
    assert abs(neumann_zero(2, 1).value - 3.0542369282271403) < 1e-9


def test_small_tables():
    np.testing.assert_allclose(zero_table(BC.DIRICHLET, 0, 3).array(), [2.4048, 5.5201, 8.6537], atol=1e-4)
    np.testing.assert_allclose(zero_table(BC.NEUMANN, 0, 2).array(), [0.0, 3.8317], atol=1e-4)
    np.testing.assert_allclose(zero_table(BC.DIRICHLET, 4, 3).array(), [7.5883, 11.0647, 14.3725], atol=1e-4)


def test_table_shape():
    t = zero_table("dirichlet", 3, 25)
    assert [z.index for z in t.values] == list(range(1, 26))
    assert all(z.order == 3 and z.kind is BC.DIRICHLET for z in t.values)
    assert np.all(np.diff(t.array()) > 0)
    assert all(z.residual <= RESIDUAL_TOL for z in t.values)
    # prefixes are stable as the table grows
    assert zero_table("dirichlet", 3, 5).values == t.values[:5]


def test_residuals_recomputed():
    for kind in BC:
        t = zero_table(kind, 7, 20)
        assert np.all(residual(kind, 7, t.array()) <= RESIDUAL_TOL)


def test_zeros_below_matches_table():
    t = zeros_below(BC.NEUMANN, 5, 40.0)
    full = zero_table(BC.NEUMANN, 5, len(t) + 1).array()
    assert full[len(t) - 1] <= 40.0 < full[len(t)]


def test_invalid_arguments():
    for bad in [lambda: dirichlet_zero(0, 0), lambda: neumann_zero(2, -1),
                lambda: zero_table("dirichlet", 1, 0), lambda: breen_bounds(-1, 1)]:
        with pytest.raises(ValueError):
            bad()
    with pytest.raises(ValueError):
        zero_table("robin", 1, 1)


def test_mcmahon_guess():
    assert mcmahon_guess(0, 1) == pytest.approx(0.75 * math.pi)
    assert mcmahon_guess(0, 5) == pytest.approx(14.9226, abs=1e-4)
    assert mcmahon_guess(2, 3) == pytest.approx(3.75 * math.pi)


def test_mcmahon_error_decays_like_one_over_s():
    for k in range(6):
        z = zero_table(BC.DIRICHLET, k, 200).array()
        s = np.arange(10, 201)
        beta = (s + 0.5 * k - 0.25) * math.pi
        scaled = np.abs(z[9:] - beta) * s
        # next McMahon term: j - beta ~ -(4k^2 - 1) / (8 beta), so s * error -> C
        c = abs(4 * k * k - 1) / (8 * math.pi)
        assert np.all(scaled <= 1.05 * c)
        assert np.all(np.diff(scaled) > 0) if k else np.all(np.diff(scaled) < 0)
        np.testing.assert_allclose(scaled[-1], c * math.pi * s[-1] / beta[-1], rtol=1e-3)


def test_large_order_guess_seeds():
    assert large_order_guess(10) == pytest.approx(13.998, abs=1e-3)
    assert large_order_guess(1) == pytest.approx(2.8558, abs=1e-4)
    j = dirichlet_zero(1000, 1).value
    assert abs(large_order_guess(1000) - j) / j < 0.01


def test_large_order_convergence():
    # (j_{k,1} - k) / k^(1/3) tends to 1.8557571...
    c500 = (dirichlet_zero(500, 1).value - 500) / 500 ** (1 / 3)
    c2000 = (dirichlet_zero(2000, 1).value - 2000) / 2000 ** (1 / 3)
    assert abs(c500 - c2000) / c2000 < 0.01
    assert c500 > c2000 > zmod.LARGE_ORDER_CONST


def test_large_order_against_series_oracle():
    ref = oracle.zeros(300, 2)
    got = zero_table(BC.DIRICHLET, 300, 2).array()
    assert np.max(np.abs(got - np.array([float(v) for v in ref]))) < 1e-11


def test_breen_examples():
    assert breen_bounds(7, 1)[0] == 7
    lo, hi = breen_bounds(5, 3)
    assert lo == pytest.approx(10.51, abs=0.01)
    assert hi == pytest.approx(16.50, abs=0.01)
    assert lo < dirichlet_zero(5, 3).value < hi
    assert breen_bounds(0, 1)[1] == pytest.approx(2.383, abs=1e-3)


def test_breen_corner_fixture():
    fx = load_fixture("breen_corner.json")
    got = audit_breen(fx["k_max"], fx["s_max"])
    corner = {(k, 1) for k in range(fx["k_max"] + 1)} | {(0, s) for s in range(1, fx["s_max"] + 1)}
    assert [c for c in got["lower"] if tuple(c) in corner] == [tuple(c) for c in fx["lower_fails"]]
    assert [c for c in got["upper"] if tuple(c) in corner] == [tuple(c) for c in fx["upper_fails"]]
    # away from k = 0 there are no failures at all
    assert all(k == 0 for k, _ in got["upper"]) and not got["lower"]


def test_interlacing():
    assert all(check_interlacing(k, 30) for k in range(26))


def test_distinct_eigenvalues():
    lam = np.sort(np.concatenate([zero_table(BC.DIRICHLET, k, 20).array() ** 2 for k in range(21)]))
    assert np.min(np.diff(lam)) > 1e-6


def test_minimum_spacing_exceeds_grid():
    for kind in BC:
        for k in (0, 1, 2, 50, 400):
            z = zero_table(kind, k, 40).array()
            z = z[z > 0]
            assert np.min(np.diff(z)) > 3.1 > zmod.GRID_STEP


def test_disk_cache_roundtrip(tmp_path):
    c = ZeroCache()
    a = c.table(BC.DIRICHLET, 2, 12)
    b = c.table(BC.NEUMANN, 0, 6)
    c.save(tmp_path)
    header = (tmp_path / "dirichlet_zeros.csv").read_text().splitlines()[0]
    assert header == "kind,k,s,value,residual"
    d = ZeroCache(tmp_path)
    for old, new in [(a, d.table(BC.DIRICHLET, 2, 12)), (b, d.table(BC.NEUMANN, 0, 6))]:
        np.testing.assert_array_equal(new.array(), old.array())
        # residuals are recomputed on load, so only their certificate must hold
        assert all(z.residual <= RESIDUAL_TOL for z in new.values)
    # a loaded table keeps growing correctly
    np.testing.assert_array_equal(d.table(BC.DIRICHLET, 2, 20).array(),
                                  zero_table(BC.DIRICHLET, 2, 20).array())


def test_disk_cache_rejects_tampered_rows(tmp_path):
    c = ZeroCache()
    c.table(BC.DIRICHLET, 1, 8)
    c.save(tmp_path)
    path = tmp_path / "dirichlet_zeros.csv"
    lines = path.read_text().splitlines()
    parts = lines[5].split(",")
    parts[3] = repr(float(parts[3]) + 1e-3)
    lines[5] = ",".join(parts)
    path.write_text("\n".join(lines) + "\n")
    d = ZeroCache()
    assert d.load(tmp_path) == 4  # rows before the bad one survive
    np.testing.assert_array_equal(d.table(BC.DIRICHLET, 1, 8).array(), c.table(BC.DIRICHLET, 1, 8).array())


def test_concurrent_growth():
    c = ZeroCache()
    out = {}

    def work(i):
        out[i] = c.table(BC.DIRICHLET, 9, 10 + 7 * i)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    full = c.table(BC.DIRICHLET, 9, 45).values
    for i, t in out.items():
        assert t.values == full[: 10 + 7 * i]


def test_solver_error_carries_bracket(monkeypatch):
    monkeypatch.setattr(zmod, "MAX_ITER", 1)
    c = ZeroCache()
    with pytest.raises(ZeroSolverError) as info:
        c.table(BC.DIRICHLET, 3, 3)
    err = info.value
    assert err.k == 3 and err.kind is BC.DIRICHLET and err.s >= 1
    lo, hi = err.bracket
    assert lo < hi


def test_kind_parsing():
    assert zmod.as_bc("Neumann") is BC.NEUMANN
    assert str(BC.DIRICHLET) == "dirichlet"
    assert list(itertools.islice(BC, 2)) == [BC.DIRICHLET, BC.NEUMANN]
