"""Nodal portraits and nodal lengths of disc eigenfunctions.

The mode ``J_k(z r) sin(k theta + theta0)``, with ``z`` the s-th zero of
``J_k`` (Dirichlet) or of ``J_k'`` (Neumann), vanishes inside the disc on
``k`` diameters and on the circles ``r = j_{k,l} / z`` for ``j_{k,l} < z``.
Only the open disc counts; the boundary circle is never part of the length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .zeros import BC, as_bc, dirichlet_zero, neumann_zero, zero_table, zeros_below

CSV_HEADER = "bc,k,s,lambda,length,ratio"


@dataclass(frozen=True)
class NodalPortrait:
    k: int
    s: int
    bc: BC
    circle_radii: tuple[float, ...]
    radius: float = 1.0
    constant_mode: bool = False

    @property
    def n_diameters(self) -> int:
        return self.k

    @property
    def geodesic(self) -> bool:
        """Interior nodal set is a union of diameters."""
        return self.k >= 1 and not self.circle_radii


@dataclass(frozen=True)
class ModeRecord:
    k: int
    s: int
    bc: BC
    eigenvalue: float
    nodal_length: float
    ratio: float
    theta0: float = 0.0
    radius: float = 1.0

    def csv_row(self) -> str:
        return ",".join([
            str(self.bc), str(self.k), str(self.s),
            f"{self.eigenvalue:.17g}", f"{self.nodal_length:.17g}", f"{self.ratio:.17g}",
        ])

    @classmethod
    def from_csv_row(cls, row: str) -> "ModeRecord":
        bc, k, s, lam, length, ratio = row.strip().split(",")
        return cls(int(k), int(s), as_bc(bc), float(lam), float(length), float(ratio))


def _scale_zero(k: int, s: int, bc: BC) -> float:
    return dirichlet_zero(k, s).value if bc is BC.DIRICHLET else neumann_zero(k, s).value


def portrait(k: int, s: int, bc=BC.DIRICHLET) -> NodalPortrait:
    bc = as_bc(bc)
    if k < 0 or s < 1:
        raise ValueError("need k >= 0 and s >= 1")
    if bc is BC.NEUMANN and k == 0 and s == 1:
        return NodalPortrait(0, 1, bc, (), constant_mode=True)
    z = _scale_zero(k, s, bc)
    if s == 1:
        return NodalPortrait(k, s, bc, ())
    # for Neumann, interlacing puts exactly j_{k,1..s-1} below j'_{k,s}
    inner = zero_table(BC.DIRICHLET, k, s - 1).array()
    radii = inner / z
    if not (np.all(radii > 0) and np.all(radii < 1) and np.all(np.diff(radii) > 0)):
        raise ArithmeticError(f"circle radii out of order for {bc} mode ({k},{s})")
    return NodalPortrait(k, s, bc, tuple(float(r) for r in radii))


def length_of(p: NodalPortrait, radius: float = 1.0) -> float:
    """R * (2k + 2 pi * sum of circle radii), summed without cancellation loss."""
    return radius * (2.0 * p.k + 2.0 * math.pi * math.fsum(p.circle_radii))


def nodal_length(k: int, s: int, bc=BC.DIRICHLET, radius: float = 1.0) -> float:
    if not radius > 0:
        raise ValueError("radius must be positive")
    return length_of(portrait(k, s, bc), radius)


def ratio(k: int, s: int, bc=BC.DIRICHLET, theta0: float = 0.0) -> ModeRecord:
    """Full record of mode (k, s) on the unit disc; theta0 is stored, never used."""
    bc = as_bc(bc)
    if bc is BC.NEUMANN and k == 0 and s == 1:
        raise ValueError("the Neumann constant mode has eigenvalue 0 and no ratio")
    z = _scale_zero(k, s, bc)
    length = nodal_length(k, s, bc)
    return ModeRecord(k, s, bc, z * z, length, length / z, theta0 % (2 * math.pi))


def records_for_order(bc, k: int, x_max: float) -> list[ModeRecord]:
    """Records for every mode of order k with sqrt(eigenvalue) <= x_max.

    Gives the same numbers as :func:`ratio`, from one table lookup.
    """
    bc = as_bc(bc)
    scale = zeros_below(bc, k, x_max).array()
    if not scale.size:
        return []
    need = len(scale) - 1
    inner = zero_table(BC.DIRICHLET, k, need).array() if need > 0 else np.empty(0)
    out = []
    for i, z in enumerate(scale.tolist()):
        s = i + 1
        if z == 0.0:
            continue  # Neumann constant mode
        radii = inner[: s - 1] / z
        length = 2.0 * k + 2.0 * math.pi * math.fsum(radii.tolist())
        out.append(ModeRecord(k, s, bc, z * z, length, length / z))
    return out


def dilate(record: ModeRecord, radius: float) -> ModeRecord:
    """The same mode on a disc scaled by ``radius``: lambda/R^2, length*R, ratio*R^2."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    return replace(
        record,
        eigenvalue=record.eigenvalue / (radius * radius),
        nodal_length=record.nodal_length * radius,
        ratio=record.ratio * (radius * radius),
        radius=record.radius * radius,
    )


def extension_radius(k: int, s: int) -> float:
    """R = j_{k,s} / j'_{k,s}: the Neumann mode is the Dirichlet mode of B_R."""
    return dirichlet_zero(k, s).value / neumann_zero(k, s).value
