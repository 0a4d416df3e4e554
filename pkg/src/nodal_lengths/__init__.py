"""Nodal lengths of Laplace eigenfunctions on the disc and on rectangles.

Bessel zeros are computed and certified in double precision; the nodal
length of each disc mode then follows exactly from its portrait of
diameters and circles.
"""

from __future__ import annotations

from .analysis import (EmptyWindowError, LimitTable, ScanSummary, case1_sequence, case2_sequence,
                       case3_diagonal, estimate_limits, scan)
from .bessel import EvaluationError, airy_zero, eval_j, eval_j_prime
from .nodal_disc import ModeRecord, NodalPortrait, dilate, nodal_length, portrait, ratio
from .rect_torus import enumerate_rect, rect_mode, rect_window, simplicity_audit, torus_mode
from .render import RenderSpec, render_svg
from .zeros import BC, BesselZero, ZeroCache, ZeroSolverError, dirichlet_zero, neumann_zero, zero_table

__all__ = [
    "BC", "BesselZero", "EmptyWindowError", "EvaluationError", "LimitTable", "ModeRecord",
    "NodalPortrait", "RenderSpec", "ScanSummary", "ZeroCache", "ZeroSolverError", "airy_zero",
    "case1_sequence", "case2_sequence", "case3_diagonal", "dilate", "dirichlet_zero",
    "enumerate_rect", "estimate_limits", "eval_j", "eval_j_prime", "neumann_zero", "nodal_length",
    "portrait", "ratio", "rect_mode", "rect_window", "render_svg", "scan", "simplicity_audit",
    "torus_mode", "zero_table",
]
__version__ = "0.1.0"
