"""Dirichlet modes of the rectangle [0,a] x [0,b] and of the torus R^2 / (aZ x bZ).

Rectangle modes ``sin(pi k x / a) sin(pi j y / b)`` have eigenvalue
``(pi k/a)^2 + (pi j/b)^2`` and vanish on ``k-1`` segments of length ``b``
and ``j-1`` of length ``a``.  Irrationality of ``a^2/b^2`` is only ever
tested operationally, by looking for eigenvalue collisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

CSV_HEADER = "bc,k,j,lambda,length,ratio"
_CROSS_CHECK_RTOL = 1e-12


@dataclass(frozen=True)
class RectMode:
    k: int
    j: int
    a: float
    b: float
    eigenvalue: float
    nodal_length: float
    ratio: float

    def csv_row(self, tag: str = "rect") -> str:
        return (f"{tag},{self.k},{self.j},{self.eigenvalue:.17g},"
                f"{self.nodal_length:.17g},{self.ratio:.17g}")


@dataclass(frozen=True)
class TorusMode:
    k: int
    j: int
    a: float
    b: float
    eigenvalue: float
    multiplicity: int


@dataclass(frozen=True)
class SimplicityReport:
    a: float
    b: float
    lambda_max: float
    tol: float
    n_modes: int
    collisions: list[tuple[tuple[int, int], tuple[int, int], float]] = field(default_factory=list)

    @property
    def simple(self) -> bool:
        return not self.collisions


@dataclass(frozen=True)
class RectWindow:
    lam_lo: float
    lam_hi: float
    n_modes: int
    min_ratio: float
    max_ratio: float
    argmin: tuple[int, int]
    argmax: tuple[int, int]


def _check_sides(a: float, b: float) -> None:
    if not (a > 0 and b > 0):
        raise ValueError("side lengths must be positive")


def rect_mode(k: int, j: int, a: float, b: float) -> RectMode:
    _check_sides(a, b)
    if k < 1 or j < 1:
        raise ValueError("rectangle modes need k, j >= 1")
    lam = (math.pi * k / a) ** 2 + (math.pi * j / b) ** 2
    length = (k - 1) * b + (j - 1) * a
    direct = length / math.sqrt(lam)
    via_area = a * b / math.pi * length / math.hypot(k * b, j * a)
    if abs(direct - via_area) > _CROSS_CHECK_RTOL * max(abs(direct), 1e-300):
        raise ArithmeticError(f"ratio forms disagree for ({k},{j}): {direct!r} vs {via_area!r}")
    return RectMode(k, j, a, b, lam, length, direct)


def rect_ratio_bounds(mode: RectMode) -> tuple[float, float]:
    """Two-sided bound from sqrt(p^2+q^2) <= p+q <= sqrt(2) sqrt(p^2+q^2).

    With p = (k-1)b, q = (j-1)a and D = sqrt((kb)^2 + (ja)^2) the ratio is
    (ab/pi)(p+q)/D, so the bounds are (ab/pi) * [1, sqrt 2] * hypot(p,q)/D.
    Since hypot(p,q) < D the upper one stays strictly below sqrt(2) ab/pi.
    """
    a, b, k, j = mode.a, mode.b, mode.k, mode.j
    scale = a * b / math.pi * math.hypot((k - 1) * b, (j - 1) * a) / math.hypot(k * b, j * a)
    return scale, math.sqrt(2.0) * scale


def rect_spectrum(a: float, b: float, lambda_max: float):
    """Arrays (k, j, lambda, length, ratio) of every mode with lambda <= lambda_max."""
    _check_sides(a, b)
    kmax = int(math.floor(a * math.sqrt(lambda_max) / math.pi))
    jmax = int(math.floor(b * math.sqrt(lambda_max) / math.pi))
    if kmax < 1 or jmax < 1:
        empty = np.empty(0)
        return empty.astype(int), empty.astype(int), empty, empty, empty
    k, j = np.meshgrid(np.arange(1, kmax + 1), np.arange(1, jmax + 1), indexing="ij")
    k, j = k.ravel(), j.ravel()
    lam = (math.pi * k / a) ** 2 + (math.pi * j / b) ** 2
    keep = lam <= lambda_max
    k, j, lam = k[keep], j[keep], lam[keep]
    order = np.lexsort((j, k, lam))
    k, j, lam = k[order], j[order], lam[order]
    length = (k - 1) * b + (j - 1) * a
    ratio = length / np.sqrt(lam)
    return k, j, lam, length, ratio


def enumerate_rect(a: float, b: float, lambda_max: float) -> list[RectMode]:
    k, j, lam, length, ratio = rect_spectrum(a, b, lambda_max)
    return [RectMode(int(kk), int(jj), a, b, float(l), float(n), float(r))
            for kk, jj, l, n, r in zip(k, j, lam, length, ratio)]


def rect_window(a: float, b: float, lam_lo: float, lam_hi: float) -> RectWindow:
    k, j, lam, _, ratio = rect_spectrum(a, b, lam_hi)
    sel = lam >= lam_lo
    if not sel.any():
        raise ValueError(f"no rectangle modes in [{lam_lo}, {lam_hi}]")
    k, j, ratio = k[sel], j[sel], ratio[sel]
    lo, hi = int(np.argmin(ratio)), int(np.argmax(ratio))
    return RectWindow(lam_lo, lam_hi, int(sel.sum()), float(ratio[lo]), float(ratio[hi]),
                      (int(k[lo]), int(j[lo])), (int(k[hi]), int(j[hi])))


def simplicity_audit(a: float, b: float, lambda_max: float, tol: float | None = None) -> SimplicityReport:
    """Every pair of distinct modes whose eigenvalues differ by less than tol.

    The default tol is 1e-9 * lambda_max.
    """
    if tol is None:
        tol = 1e-9 * lambda_max
    if not tol > 0:
        raise ValueError("tol must be positive")
    k, j, lam, _, _ = rect_spectrum(a, b, lambda_max)
    pairs = []
    n = lam.size
    for gap in range(1, n):
        diff = lam[gap:] - lam[:-gap]
        close = np.nonzero(diff < tol)[0]
        if not close.size:
            break  # sorted, so wider gaps only grow
        for i in close:
            pairs.append(((int(k[i]), int(j[i])), (int(k[i + gap]), int(j[i + gap])), float(diff[i])))
    pairs.sort()
    return SimplicityReport(a, b, lambda_max, tol, n, pairs)


def torus_mode(k: int, j: int, a: float, b: float) -> TorusMode:
    """Eigenvalue and generic multiplicity of the torus frequency (k, j)."""
    _check_sides(a, b)
    if k < 0 or j < 0:
        raise ValueError("torus modes need k, j >= 0")
    lam = (2 * math.pi * k / a) ** 2 + (2 * math.pi * j / b) ** 2
    mult = 1 if k == j == 0 else (4 if k and j else 2)
    return TorusMode(k, j, a, b, lam, mult)


def torus_basis_length(k: int, j: int, a: float, b: float, basis: str = "product") -> float:
    """Nodal length of one real basis function of the torus eigenspace.

    ``product``: sin/cos(2 pi k x/a) * sin/cos(2 pi j y/b), whose zero set is
    2k closed loops of length b and 2j of length a.
    ``wave``: sin(2 pi k x/a + 2 pi j y/b); level sets of a linear phase with
    gradient norm sqrt(lambda), spaced pi/sqrt(lambda) apart, so the length is
    area * sqrt(lambda) / pi.
    """
    mode = torus_mode(k, j, a, b)
    if basis == "product":
        return 2.0 * k * b + 2.0 * j * a
    if basis == "wave":
        return a * b * math.sqrt(mode.eigenvalue) / math.pi
    raise ValueError(f"unknown basis {basis!r}")
