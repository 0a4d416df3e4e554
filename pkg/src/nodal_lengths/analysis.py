"""Eigenvalue-window scans of disc modes and the extremal sequences.

The normalised ratio nodal_length / sqrt(lambda) has liminf 1 (reached by
k = 0, s -> oo) and limsup 2 (reached by s = 1, k -> oo).  ``scan`` finds
the exact extremes inside a finite window; ``estimate_limits`` repeats it
over a ladder of windows so the convergence can be watched and tested.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .nodal_disc import ModeRecord, dilate, ratio, records_for_order
from .zeros import BC, as_bc, breen_bounds, zero_table


class EmptyWindowError(ValueError):
    """The eigenvalue window holds no modes."""


@dataclass(frozen=True)
class ScanSummary:
    bc: BC
    lam_lo: float
    lam_hi: float
    n_modes: int
    min_ratio: float
    max_ratio: float
    argmin: tuple[int, int]
    argmax: tuple[int, int]

    CSV_HEADER = "bc,lambda_lo,lambda_hi,n_modes,min_ratio,argmin_k,argmin_s,max_ratio,argmax_k,argmax_s"

    def csv_row(self) -> str:
        return ",".join([
            str(self.bc), f"{self.lam_lo:.17g}", f"{self.lam_hi:.17g}", str(self.n_modes),
            f"{self.min_ratio:.17g}", str(self.argmin[0]), str(self.argmin[1]),
            f"{self.max_ratio:.17g}", str(self.argmax[0]), str(self.argmax[1]),
        ])

    def merge(self, other: "ScanSummary") -> "ScanSummary":
        """Combine two summaries of disjoint parts of the same window.

        Ties go to the smaller k, then the smaller s, so merging is
        associative and commutative.
        """
        lo = min((self.min_ratio, self.argmin), (other.min_ratio, other.argmin))
        hi = max((self.max_ratio, _neg(self.argmax)), (other.max_ratio, _neg(other.argmax)))
        return ScanSummary(self.bc, min(self.lam_lo, other.lam_lo), max(self.lam_hi, other.lam_hi),
                           self.n_modes + other.n_modes, lo[0], hi[0], lo[1], _neg(hi[1]))


def _neg(ks: tuple[int, int]) -> tuple[int, int]:
    return (-ks[0], -ks[1])


def summarize(bc, lam_lo: float, lam_hi: float, records: list[ModeRecord]) -> ScanSummary:
    if not records:
        raise EmptyWindowError(f"no {bc} modes with eigenvalue in [{lam_lo}, {lam_hi}]")
    lo = min(records, key=lambda r: (r.ratio, r.k, r.s))
    hi = min(records, key=lambda r: (-r.ratio, r.k, r.s))
    return ScanSummary(as_bc(bc), lam_lo, lam_hi, len(records), lo.ratio, hi.ratio,
                       (lo.k, lo.s), (hi.k, hi.s))


def max_order(lam_hi: float) -> int:
    """Largest k that can have a mode with eigenvalue <= lam_hi.

    Both j_{k,1} > k and j'_{k,1} >= k, so k > sqrt(lam_hi) is excluded;
    equality only matters for the Neumann zero and is kept.
    """
    return int(math.floor(math.sqrt(lam_hi)))


def max_index(k: int, lam_hi: float) -> int:
    """Largest s not excluded by the Airy lower bound j_{k,s} > k + (2/3)|a_{s-1}|^(3/2)."""
    x = math.sqrt(lam_hi)
    s = 1
    while breen_bounds(k, s + 1)[0] < x:
        s += 1
    return s


def _order_records(args) -> list[ModeRecord]:
    bc, k, lam_lo, lam_hi = args
    # nudge the cut up by an ulp-scale margin; the eigenvalue filter is exact
    x_max = math.sqrt(lam_hi) * (1 + 4e-16)
    return [r for r in records_for_order(bc, k, x_max) if lam_lo <= r.eigenvalue <= lam_hi]


def window_records(bc, lam_lo: float, lam_hi: float, workers: int = 1) -> list[ModeRecord]:
    """Every mode with eigenvalue in [lam_lo, lam_hi], sorted by eigenvalue."""
    bc = as_bc(bc)
    if not (0 < lam_lo < lam_hi):
        raise ValueError("need 0 < lambda_lo < lambda_hi")
    jobs = [(bc, k, lam_lo, lam_hi) for k in range(max_order(lam_hi) + 1)]
    if workers > 1:
        # large k first so the pool drains evenly
        jobs.reverse()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_order_records, jobs, chunksize=8))
    else:
        parts = [_order_records(j) for j in jobs]
    out = [r for part in parts for r in part]
    out.sort(key=lambda r: (r.eigenvalue, r.k, r.s))
    return out


def scan(bc, lam_lo: float, lam_hi: float, radius: float = 1.0, workers: int = 1,
         with_records: bool = False):
    """Extremes of the ratio over modes of the disc of the given radius.

    The window is in eigenvalues of that disc.  With ``with_records`` the
    return value is ``(summary, records)``.
    """
    r2 = radius * radius
    recs = window_records(bc, lam_lo * r2, lam_hi * r2, workers=workers)
    if radius != 1.0:
        recs = [dilate(r, radius) for r in recs]
    summary = summarize(bc, lam_lo, lam_hi, recs)
    return (summary, recs) if with_records else summary


# ---------------------------------------------------------------------------
# extremal sequences


def case1_sequence(k_max: int, bc=BC.DIRICHLET) -> list[tuple[int, float]]:
    """(k, ratio of mode (k,1)) for k = 1..k_max; for Dirichlet that is 2k/j_{k,1}."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    return [(k, ratio(k, 1, bc).ratio) for k in range(1, k_max + 1)]


def case2_sequence(s_max: int, bc=BC.DIRICHLET, k: int = 0) -> list[tuple[int, float]]:
    """(s, ratio of mode (k,s)) with k held fixed (0 by default)."""
    if s_max < 2:
        raise ValueError("s_max must be >= 2")
    start = 2 if (as_bc(bc) is BC.NEUMANN and k == 0) else 1
    return [(s, ratio(k, s, bc).ratio) for s in range(start, s_max + 1)]


def case3_diagonal(t_max: int, slope=Fraction(1), bc=BC.DIRICHLET) -> list[tuple[int, int, float]]:
    """(t, k, ratio of mode (k, t)) along k = floor(slope * t), t = 1..t_max."""
    if t_max < 2:
        raise ValueError("t_max must be >= 2")
    slope = Fraction(slope)
    if slope < 0:
        raise ValueError("slope must be nonnegative")
    rows = []
    for t in range(1, t_max + 1):
        k = math.floor(slope * t)
        if as_bc(bc) is BC.NEUMANN and k == 0 and t == 1:
            continue
        rows.append((t, k, ratio(k, t, bc).ratio))
    return rows


def partial_sum(k: int, s: int) -> float:
    """sum_{l<s} j_{k,l} / j_{k,s}."""
    z = zero_table(BC.DIRICHLET, k, s).array()
    return math.fsum((z[:-1] / z[-1]).tolist())


def partial_sum_failures(k_values, s_values) -> list[tuple[int, int, float]]:
    """(k, s, sum) wherever sum_{l<s} j_{k,l}/j_{k,s} < s/2."""
    out = []
    for k in k_values:
        for s in s_values:
            p = partial_sum(k, s)
            if p < s / 2:
                out.append((k, s, p))
    return out


# ---------------------------------------------------------------------------
# limit ladder


@dataclass(frozen=True)
class LimitRow:
    lam: float
    h1_est: float
    h2_est: float
    argmin: tuple[int, int]
    argmax: tuple[int, int]


@dataclass(frozen=True)
class LimitTable:
    bc: BC
    span: float
    radius: float
    rows: list[LimitRow] = field(default_factory=list)

    CSV_HEADER = "lambda,H1_est,argmin_k,argmin_s,H2_est,argmax_k,argmax_s"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(f"{r.lam:.17g},{r.h1_est:.17g},{r.argmin[0]},{r.argmin[1]},"
                         f"{r.h2_est:.17g},{r.argmax[0]},{r.argmax[1]}")
        return "\n".join(lines) + "\n"


def estimate_limits(bc, ladder, span: float = 2.0, radius: float = 1.0,
                    workers: int = 1) -> LimitTable:
    """Per rung Lambda: min and max ratio over eigenvalues in [Lambda, span*Lambda].

    The liminf/limsup over lambda -> oo are approached by these window
    extremes as the rungs climb.
    """
    ladder = [float(x) for x in ladder]
    if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("ladder must be a non-empty ascending sequence")
    if not span > 1:
        raise ValueError("span must exceed 1")
    rows = []
    for lam in ladder:
        summ = scan(bc, lam, span * lam, radius=radius, workers=workers)
        rows.append(LimitRow(lam, summ.min_ratio, summ.max_ratio, summ.argmin, summ.argmax))
    return LimitTable(as_bc(bc), span, radius, rows)
