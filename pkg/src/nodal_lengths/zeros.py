"""Zeros j_{k,s} of J_k and j'_{k,s} of J_k', with residual certificates.

Zeros are located by a sign-change scan on a grid of step 2.5 that starts at
a point known to precede the first zero (``x = k`` since ``j_{k,1} > k`` and
``j'_{k,1} >= k``), so the index ``s`` of every zero is its position in the
scan.  Consecutive zeros of J_k and J_k' are never closer than
j_{0,2} - j_{0,1} = 3.115..., so a grid cell never hides a pair.  Each
bracket is then refined by Newton steps that fall back to bisection whenever
a step leaves the bracket.

Tables are cached per ``(kind, k)`` and only ever grow.
"""

from __future__ import annotations

import csv
import enum
import math
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bessel import EPS, airy_zero, bessel_triplet

RESIDUAL_TOL = 1e-10
MAX_ITER = 100
GRID_STEP = 2.5
LARGE_ORDER_CONST = 1.8557571  # |a_1| / 2**(1/3)


class BC(str, enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"

    def __str__(self) -> str:
        return self.value


class ZeroSolverError(RuntimeError):
    """Refinement failed; carries the order, index and last bracket."""

    def __init__(self, message: str, kind: BC, k: int, s: int, bracket=(math.nan, math.nan)):
        super().__init__(f"{message} [{kind} k={k} s={s} bracket={tuple(bracket)}]")
        self.kind = kind
        self.k = k
        self.s = s
        self.bracket = tuple(bracket)


@dataclass(frozen=True)
class BesselZero:
    kind: BC
    order: int
    index: int
    value: float
    residual: float


@dataclass(frozen=True)
class ZeroTable:
    kind: BC
    order: int
    values: tuple[BesselZero, ...]

    def __len__(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.array([z.value for z in self.values])


def as_bc(kind) -> BC:
    return kind if isinstance(kind, BC) else BC(str(kind).lower())


# ---------------------------------------------------------------------------
# predictors and bounds


def mcmahon_guess(k: int, s: int) -> float:
    """Leading McMahon term (s + k/2 - 1/4) * pi."""
    return (s + 0.5 * k - 0.25) * math.pi


def large_order_guess(k: int) -> float:
    """k + 1.8557571 k^(1/3), the two leading terms for j_{k,1} at large k."""
    return k + LARGE_ORDER_CONST * k ** (1.0 / 3.0)


def breen_bounds(k: int, s: int) -> tuple[float, float]:
    """Lower and upper Airy-zero bounds for j_{k,s}; |a_0| is taken as 0.

    The upper bound is known to fail at k = 0 (see :func:`audit_breen`).
    """
    if s < 1 or k < 0:
        raise ValueError("need k >= 0 and s >= 1")
    prev = 0.0 if s == 1 else abs(airy_zero(s - 1).value)
    lower = k + 2.0 / 3.0 * prev ** 1.5
    upper = 0.5 * math.pi * k + 2.0 / 3.0 * abs(airy_zero(s).value) ** 1.5
    return lower, upper


def audit_breen(k_max: int, s_max: int) -> dict[str, list[tuple[int, int]]]:
    """Every (k, s) in the box where either Airy bound fails on the computed zero."""
    out: dict[str, list[tuple[int, int]]] = {"lower": [], "upper": []}
    for k in range(k_max + 1):
        vals = zero_table(BC.DIRICHLET, k, s_max).array()
        for s in range(1, s_max + 1):
            lo, hi = breen_bounds(k, s)
            if not lo < vals[s - 1]:
                out["lower"].append((k, s))
            if not vals[s - 1] < hi:
                out["upper"].append((k, s))
    return out


# ---------------------------------------------------------------------------
# the functions whose zeros we want, with derivatives for Newton


def _target(kind: BC, k: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    jm1, jk, jp1, _ = bessel_triplet(k, x)
    d1 = 0.5 * (jm1 - jp1)
    if kind is BC.DIRICHLET:
        return jk, d1
    with np.errstate(divide="ignore", invalid="ignore"):
        d2 = -d1 / x - (1.0 - (k / x) ** 2) * jk
    return d1, d2


def residual(kind, k: int, values) -> np.ndarray:
    f, _ = _target(as_bc(kind), k, np.asarray(values, dtype=float))
    return np.abs(f)


def _scan_start(kind: BC, k: int) -> float:
    if k > 0:
        return float(k)
    # J_0 > 0 on [0, j_{0,1}); J_0' = -J_1 < 0 on (0, j_{1,1}) and its zero at
    # the origin is handled by convention
    return 0.0 if kind is BC.DIRICHLET else 1.0


def _initial_guess(kind: BC, k: int, s: np.ndarray, lo, hi, flo, fhi) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        guess = lo - flo * (hi - lo) / (fhi - flo)
    if kind is BC.DIRICHLET:
        seeds = np.where(
            s >= k, (s + 0.5 * k - 0.25) * math.pi,
            np.where(s == 1, large_order_guess(max(k, 1)), np.nan),
        )
        use = np.isfinite(seeds) & (seeds > lo) & (seeds < hi)
        guess = np.where(use, seeds, guess)
    bad = ~np.isfinite(guess) | (guess <= lo) | (guess >= hi)
    return np.where(bad, 0.5 * (lo + hi), guess)


def _refine(kind: BC, k: int, s: np.ndarray, lo: np.ndarray, hi: np.ndarray,
            flo: np.ndarray, fhi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Safeguarded Newton on every bracket simultaneously.

    Returns the roots and |f| at them, which is the residual certificate.
    """
    lo, hi = lo.copy(), hi.copy()
    neg_lo = flo < 0
    x = _initial_guess(kind, k, s, lo, hi, flo, fhi)
    res = np.full(x.shape, np.inf)
    done = np.zeros(x.shape, dtype=bool)
    for _ in range(MAX_ITER):
        act = ~done
        xa = x[act]
        f, fp = _target(kind, k, xa)
        exact = f == 0
        same = (f < 0) == neg_lo[act]
        la = np.where(same, xa, lo[act])
        ha = np.where(same, hi[act], xa)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = f / fp
        newton = xa - step
        ok = np.isfinite(newton) & (newton > la) & (newton < ha)
        tol = 4.0 * EPS * np.abs(xa)
        # a correction at rounding level means we are on the root; checking it
        # before the bracket test avoids bisecting a one-sided bracket
        conv = exact | (np.abs(step) <= tol) | (ha - la <= tol)
        nxt = np.where(conv, xa, np.where(ok, newton, 0.5 * (la + ha)))
        lo[act], hi[act], x[act] = la, ha, nxt
        res[act] = np.abs(f)
        done[act] = conv
        if done.all():
            return x, res
    i = int(np.argmax(~done))
    raise ZeroSolverError("refinement did not converge", kind, k, int(s[i]), (lo[i], hi[i]))


# ---------------------------------------------------------------------------
# incremental tables


class _State:
    __slots__ = ("zeros", "x_scan", "f_scan_neg", "lock")

    def __init__(self, kind: BC, k: int):
        self.lock = threading.Lock()
        zeros: tuple[BesselZero, ...] = ()
        if kind is BC.NEUMANN and k == 0:
            zeros = (BesselZero(kind, 0, 1, 0.0, 0.0),)
        self.zeros = zeros
        self.x_scan = _scan_start(kind, k)
        f, _ = _target(kind, k, np.array([self.x_scan]))
        self.f_scan_neg = bool(f[0] < 0)


class ZeroCache:
    """Append-only zero tables keyed by (kind, k).

    Readers get immutable snapshots without locking; growth of one table is
    serialised by that table's lock, and a snapshot only ever contains
    certified zeros.
    """

    def __init__(self, cache_dir: str | Path | None = None):
        self._states: dict[tuple[BC, int], _State] = {}
        self._guard = threading.Lock()
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        if self.cache_dir is not None:
            self.load(self.cache_dir)

    def _state(self, kind: BC, k: int) -> _State:
        key = (kind, k)
        st = self._states.get(key)
        if st is None:
            with self._guard:
                st = self._states.get(key)
                if st is None:
                    st = self._states[key] = _State(kind, k)
        return st

    def table(self, kind, k: int, s_max: int) -> ZeroTable:
        kind = as_bc(kind)
        if s_max < 1:
            raise ValueError("s_max must be >= 1")
        st = self._state(kind, k)
        zs = st.zeros
        if len(zs) < s_max:
            with st.lock:
                if len(st.zeros) < s_max:
                    self._extend(kind, k, st, count=s_max)
                zs = st.zeros
        return ZeroTable(kind, k, zs[:s_max])

    def below(self, kind, k: int, x_max: float) -> ZeroTable:
        """All zeros with value <= x_max."""
        kind = as_bc(kind)
        st = self._state(kind, k)
        if st.x_scan < x_max:
            with st.lock:
                if st.x_scan < x_max:
                    self._extend(kind, k, st, x_max=x_max)
        zs = st.zeros
        n = int(np.searchsorted([z.value for z in zs], x_max, side="right"))
        return ZeroTable(kind, k, zs[:n])

    def _extend(self, kind: BC, k: int, st: _State, count: int | None = None,
                x_max: float | None = None) -> None:
        while True:
            have = len(st.zeros)
            if count is not None and have >= count:
                return
            if x_max is not None and st.x_scan >= x_max:
                return
            if x_max is not None:
                n = int(math.ceil((x_max - st.x_scan) / GRID_STEP))
                grid = st.x_scan + GRID_STEP * np.arange(1, n + 1)
                grid[-1] = x_max
            else:
                n = max(16, int(math.ceil(1.1 * math.pi * (count - have) / GRID_STEP)))
                grid = st.x_scan + GRID_STEP * np.arange(1, n + 1)
            f, _ = _target(kind, k, grid)
            xs = np.concatenate([[st.x_scan], grid])
            neg = np.concatenate([[st.f_scan_neg], f < 0])
            fs = np.concatenate([[math.nan], f])
            idx = np.nonzero(neg[:-1] != neg[1:])[0]
            if count is not None:
                idx = idx[: count - have]
            if idx.size:
                lo, hi = xs[idx], xs[idx + 1]
                flo, fhi = fs[idx], fs[idx + 1]
                if idx[0] == 0:
                    flo = flo.copy()
                    flo[0] = _target(kind, k, lo[:1])[0][0]
                s = have + 1 + np.arange(idx.size)
                values, res = _refine(kind, k, s, lo, hi, flo, fhi)
                st.zeros = st.zeros + self._certify(kind, k, s, values, res, lo, hi)
            last = idx[-1] + 1 if (count is not None and have + idx.size >= count) else len(xs) - 1
            st.x_scan = float(xs[last])
            st.f_scan_neg = bool(neg[last])

    def _certify(self, kind: BC, k: int, s: np.ndarray, values: np.ndarray, res: np.ndarray,
                 lo: np.ndarray, hi: np.ndarray) -> tuple[BesselZero, ...]:
        prev = [z.value for z in self._states[(kind, k)].zeros[-1:]]
        out = []
        for si, v, r, a, b in zip(s, values, res, lo, hi):
            si = int(si)
            if not r <= RESIDUAL_TOL:
                raise ZeroSolverError(f"residual {r:.3g} above tolerance", kind, k, si, (a, b))
            if prev and not v > prev[-1]:
                raise ZeroSolverError("zeros not increasing", kind, k, si, (a, b))
            if kind is BC.DIRICHLET and not v > breen_bounds(k, si)[0]:
                raise ZeroSolverError("value below the Airy lower bound", kind, k, si, (a, b))
            if kind is BC.NEUMANN and not v >= k:
                raise ZeroSolverError("value below k", kind, k, si, (a, b))
            prev.append(float(v))
            out.append(BesselZero(kind, k, si, float(v), float(r)))
        return tuple(out)

    # -- on-disk CSV ---------------------------------------------------------

    @staticmethod
    def _path(directory: Path, kind: BC) -> Path:
        return directory / f"{kind.value}_zeros.csv"

    def save(self, directory: str | Path | None = None) -> None:
        directory = Path(directory) if directory is not None else self.cache_dir
        if directory is None:
            raise ValueError("no cache directory configured")
        directory.mkdir(parents=True, exist_ok=True)
        for kind in BC:
            keys = sorted(k for (kd, k) in self._states if kd is kind)
            with open(self._path(directory, kind), "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["kind", "k", "s", "value", "residual"])
                for k in keys:
                    for z in self._states[(kind, k)].zeros:
                        w.writerow([kind.value, k, z.index, f"{z.value:.17g}", f"{z.residual:.17g}"])

    def load(self, directory: str | Path) -> int:
        """Load cached tables, re-certifying every residual; returns zeros accepted."""
        directory = Path(directory)
        accepted = 0
        for kind in BC:
            path = self._path(directory, kind)
            if not path.exists():
                continue
            rows: dict[int, list[tuple[int, float]]] = {}
            with open(path, newline="", encoding="utf-8") as fh:
                for row in csv.DictReader(fh):
                    if row["kind"] != kind.value:
                        continue
                    rows.setdefault(int(row["k"]), []).append((int(row["s"]), float(row["value"])))
            for k, entries in rows.items():
                entries.sort()
                st = self._state(kind, k)
                with st.lock:
                    accepted += self._adopt(kind, k, st, entries)
        return accepted

    def _adopt(self, kind: BC, k: int, st: _State, entries: list[tuple[int, float]]) -> int:
        have = len(st.zeros)
        vals = [v for s, v in entries]
        if [s for s, _ in entries] != list(range(1, len(entries) + 1)) or len(vals) <= have:
            return 0
        vals_arr = np.array(vals)
        res = residual(kind, k, vals_arr)
        good = []
        prev = -math.inf
        for s, (v, r) in enumerate(zip(vals, res), start=1):
            if kind is BC.NEUMANN and k == 0 and s == 1:
                ok = v == 0.0
            else:
                ok = r <= RESIDUAL_TOL and v > prev and (
                    kind is BC.NEUMANN or v > breen_bounds(k, s)[0])
            if not ok:
                break
            good.append(BesselZero(kind, k, s, v, float(r)))
            prev = v
        if len(good) <= have or any(abs(g.value - z.value) > 1e-9 for g, z in zip(good, st.zeros)):
            return 0
        # resume scanning just past the last zero; zeros are more than 3 apart
        x_scan = good[-1].value + 0.5
        f, _ = _target(kind, k, np.array([x_scan]))
        st.zeros = tuple(good)
        st.x_scan = x_scan
        st.f_scan_neg = bool(f[0] < 0)
        return len(good) - have


_default_cache = ZeroCache()


def default_cache() -> ZeroCache:
    return _default_cache


def set_default_cache(cache: ZeroCache) -> None:
    global _default_cache
    _default_cache = cache


def zero_table(kind, k: int, s_max: int) -> ZeroTable:
    return _default_cache.table(kind, k, s_max)


def zeros_below(kind, k: int, x_max: float) -> ZeroTable:
    return _default_cache.below(kind, k, x_max)


def dirichlet_zero(k: int, s: int) -> BesselZero:
    """The s-th positive zero of J_k."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return zero_table(BC.DIRICHLET, k, s).values[s - 1]


def neumann_zero(k: int, s: int) -> BesselZero:
    """The s-th nonnegative zero of J_k'; for k = 0, s = 1 this is 0."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return zero_table(BC.NEUMANN, k, s).values[s - 1]


def check_interlacing(k: int, s_max: int) -> bool:
    """k <= j'_{k,s} < j_{k,s} < j'_{k,s+1} for s = 1..s_max."""
    d = zero_table(BC.DIRICHLET, k, s_max).array()
    n = zero_table(BC.NEUMANN, k, s_max + 1).array()
    return bool(np.all(k <= n[:-1]) and np.all(n[:-1] < d) and np.all(d < n[1:]))
