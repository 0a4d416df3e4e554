"""Integer-order Bessel functions J_k on x >= 0 and the negative zeros of Ai.

Everything runs in binary64.  Evaluation picks one of three regimes per point:

* power series, for ``x <= max(4, k/2)``;
* Miller's backward recurrence normalised by ``J_0 + 2*sum(J_2m) = 1``;
* Hankel's expansion for ``J_0``, ``J_1`` at ``x >= 25`` followed by upward
  recurrence, used when ``x >= k`` (upward recurrence is stable there).

The vectorised entry point :func:`bessel_triplet` returns ``J_{k-1}``,
``J_k`` and ``J_{k+1}`` at once, which is what the zero solver needs for
Newton steps on both ``J_k`` and ``J_k'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

EPS = float(np.finfo(float).eps)
K_MAX = 5000

_SERIES_X = 4.0
_HANKEL_X = 25.0
_RESCALE_AT = 1e200


class EvaluationError(ArithmeticError):
    """Internal scaling overflowed; no trustworthy value can be returned."""


@dataclass(frozen=True)
class FunctionValue:
    value: float
    est_abs_error: float


@dataclass(frozen=True)
class AiryZero:
    index: int
    value: float


def _check_order(k: int, k_max: int = K_MAX) -> int:
    if int(k) != k or k < 0:
        raise ValueError(f"order must be a nonnegative integer, got {k!r}")
    if k > k_max:
        raise ValueError(f"order {k} exceeds configured maximum {k_max}")
    return int(k)


# ---------------------------------------------------------------------------
# regime kernels; each takes a 1-d float array and returns (jm1, jk, jp1, err)


def _series_one(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """J_n(x) by its Maclaurin series, n >= 0, with an absolute error bound."""
    half = 0.5 * x
    out = np.zeros_like(x)
    # x/2 underflows to 0 for the smallest subnormal; J_n is then exactly
    # 1 or 0 to double precision
    pos = half > 0
    err = np.where(pos, 0.0, half)
    if n == 0:
        out[~pos] = 1.0
    if not pos.any():
        return out, err
    h = half[pos]
    lead = np.exp(n * np.log(h) - math.lgamma(n + 1))
    q = h * h
    term = lead.copy()
    total = lead.copy()
    abs_total = np.abs(lead)
    m = 0
    while True:
        m += 1
        term = -term * q / (m * (m + n))
        total += term
        a = np.abs(term)
        abs_total += a
        # terms decrease once q < m*(m+n); stop when negligible everywhere
        if m * (m + n) > q.max() and np.all(a <= 0.25 * EPS * np.abs(total)):
            break
        if m > 500:
            raise EvaluationError("power series failed to converge")
    out[pos] = total
    # the leading factor carries the rounding of exp(n log h - lgamma(n+1))
    lead_rel = EPS * (2.0 + np.abs(n * np.log(h)) + math.lgamma(n + 1))
    err[pos] = (4.0 * EPS + lead_rel) * abs_total + a
    return out, err


def _series(k: int, x: np.ndarray):
    jk, ek = _series_one(k, x)
    jp1, ep1 = _series_one(k + 1, x)
    if k == 0:
        jm1, em1 = -jp1, ep1
    else:
        jm1, em1 = _series_one(k - 1, x)
    return jm1, jk, jp1, np.maximum(np.maximum(ek, ep1), em1)


def _miller_start(top: float) -> int:
    n = int(math.ceil(top + 15.0 * top ** (1.0 / 3.0) + 30.0))
    return n + (n % 2)


def _miller_run(k: int, x: np.ndarray, start: int):
    lo = max(k - 1, 0)
    keep = {}
    nxt = np.zeros_like(x)
    cur = np.ones_like(x)  # F_start
    norm = np.zeros_like(x)
    two_over_x = 2.0 / x
    for n in range(start, 0, -1):
        if n <= k + 1 and n >= lo:
            keep[n] = cur
        if n % 2 == 0:
            norm = norm + 2.0 * cur
        prev = (n * two_over_x) * cur - nxt
        nxt, cur = cur, prev
        if n % 16 == 0:
            big = np.abs(cur) > _RESCALE_AT
            if big.any():
                scale = np.where(big, 1.0 / _RESCALE_AT, 1.0)
                cur = cur * scale
                nxt = nxt * scale
                norm = norm * scale
                keep = {i: v * scale for i, v in keep.items()}
    keep[0] = cur
    norm = norm + cur
    if not np.all(np.isfinite(norm)) or np.any(norm == 0):
        raise EvaluationError("Miller recurrence overflowed")
    jk = keep[k] / norm
    jp1 = keep[k + 1] / norm
    jm1 = -jp1 if k == 0 else keep[k - 1] / norm
    return jm1, jk, jp1


def _miller(k: int, x: np.ndarray):
    start = _miller_start(max(float(x.max()), k + 1.0))
    a = _miller_run(k, x, start)
    b = _miller_run(k, x, start + 2 * (10 + int(2.0 * start ** (1.0 / 3.0))))
    diff = np.maximum.reduce([np.abs(u - v) for u, v in zip(a, b)])
    err = diff + 4.0 * EPS * math.sqrt(start)
    return b[0], b[1], b[2], err


def _hankel01(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """J_0 and J_1 from Hankel's asymptotic expansion, valid for x >= 25."""
    out = []
    c, s = np.cos(x), np.sin(x)
    inv8x = 1.0 / (8.0 * x)
    for nu in (0, 1):
        mu = 4.0 * nu * nu
        p = np.ones_like(x)
        q = np.zeros_like(x)
        a = np.ones_like(x)
        # |a_m| ~ m!/(2x)^m here, so the worst point decides the term count
        bound, xmin, m = 1.0, float(x.min()), 0
        while bound > 1e-18 and m < 40:
            m += 1
            a = a * (mu - (2 * m - 1) ** 2) * inv8x / m
            bound *= (2 * m - 1) ** 2 / (8.0 * xmin * m)
            if m % 2:
                q += a if (m // 2) % 2 == 0 else -a
            else:
                p += a if (m // 2) % 2 == 0 else -a
        if nu == 0:
            cw, sw = (c + s), (s - c)
        else:
            cw, sw = (s - c), -(s + c)
        amp = np.sqrt(1.0 / (np.pi * x))  # sqrt(2/(pi x)) / sqrt(2)
        out.append(amp * (p * cw - q * sw))
    return out[0], out[1]


def _upward(k: int, x: np.ndarray):
    j0, j1 = _hankel01(x)
    if k == 0:
        return -j1, j0, j1, np.full_like(x, 8.0 * EPS)
    prev, cur = j0, j1
    two_over_x = 2.0 / x
    for n in range(1, k + 1):
        prev, cur = cur, (n * two_over_x) * cur - prev
    # cur = J_{k+1}, prev = J_k; recompute J_{k-1} from the three-term relation
    jk, jp1 = prev, cur
    jm1 = (k * two_over_x) * jk - jp1
    # observed growth is ~0.7*eps*sqrt(k) up to k = 2000
    err = np.full_like(x, 4.0 * EPS * (2.0 + math.sqrt(k)))
    return jm1, jk, jp1, err


def bessel_triplet(k: int, x) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(J_{k-1}(x), J_k(x), J_{k+1}(x), est_abs_error)`` for an array ``x``.

    ``J_{-1}`` is ``-J_1``.  The error estimate covers all three values.
    """
    k = _check_order(k)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1:
        x = x.ravel()
    if np.any(~np.isfinite(x)) or np.any(x < 0):
        raise ValueError("x must be finite and nonnegative")
    outs = [np.empty_like(x) for _ in range(4)]
    series = x <= max(_SERIES_X, 0.5 * k)
    upward = ~series & (x >= max(_HANKEL_X, float(k)))
    miller = ~series & ~upward
    for mask, kernel in ((series, _series), (miller, _miller), (upward, _upward)):
        if mask.any():
            vals = kernel(k, x[mask])
            for o, v in zip(outs, vals):
                o[mask] = v
    if not all(np.all(np.isfinite(o)) for o in outs):
        raise EvaluationError(f"non-finite Bessel value at order {k}")
    return outs[0], outs[1], outs[2], outs[3]


def eval_j(k: int, x: float) -> FunctionValue:
    """J_k(x) with an absolute error estimate."""
    _, jk, _, err = bessel_triplet(k, [x])
    return FunctionValue(float(jk[0]), float(err[0]))


def eval_j_prime(k: int, x: float) -> FunctionValue:
    """J_k'(x) = (J_{k-1}(x) - J_{k+1}(x))/2, and J_0' = -J_1."""
    jm1, _, jp1, err = bessel_triplet(k, [x])
    return FunctionValue(float(0.5 * (jm1[0] - jp1[0])), float(err[0]))


# ---------------------------------------------------------------------------
# Airy function on the negative axis

_AI0 = 1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0))
_AIP0 = -1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0))
_TAYLOR_LIMIT = 10.0


def _taylor_step(x0: float, y: float, yp: float, h: float) -> tuple[float, float]:
    # Taylor coefficients of y'' = x y about x0
    c = [y, yp, 0.5 * x0 * y]
    val = c[0] + h * (c[1] + h * c[2])
    der = c[1] + 2.0 * h * c[2]
    hn = h * h
    for n in range(3, 60):
        cn = (x0 * c[n - 2] + c[n - 3]) / (n * (n - 1))
        c.append(cn)
        der += n * cn * hn
        hn *= h
        val += cn * hn
        # every third coefficient vanishes at x0 = 0, so look at a window
        if n > 8 and max(abs(c[n]), abs(c[n - 1]), abs(c[n - 2])) * abs(hn) < 1e-20 * (
            abs(val) + abs(der)
        ):
            break
    return val, der


def _airy_taylor(x: float) -> tuple[float, float]:
    y, yp, at = _AI0, _AIP0, 0.0
    h = -0.25 if x < 0 else 0.25
    while abs(x - at) > 1e-15:
        step = h if abs(x - at) > abs(h) else x - at
        y, yp = _taylor_step(at, y, yp, step)
        at += step
    return y, yp


def _airy_asymptotic(z: float) -> tuple[float, float]:
    """Ai(-z), Ai'(-z) for large z > 0 from the oscillatory expansions."""
    zeta = 2.0 / 3.0 * z ** 1.5
    u = [1.0]
    v = [1.0]
    p = q = r = t = 0.0
    last = math.inf
    for m in range(0, 80):
        if m > 0:
            um = u[-1] * (6 * m - 5) * (6 * m - 3) * (6 * m - 1) / ((2 * m - 1) * 216 * m)
            u.append(um)
            v.append(-(6 * m + 1) / (6 * m - 1) * um)
        term_u = u[m] / zeta ** m
        term_v = v[m] / zeta ** m
        if abs(term_u) > last:
            break  # past the smallest term of the divergent series
        last = abs(term_u)
        sign = -1.0 if (m // 2) % 2 else 1.0
        if m % 2 == 0:
            p += sign * term_u
            r += sign * term_v
        else:
            q += sign * term_u
            t += sign * term_v
        if m > 2 and abs(term_u) < 1e-18:
            break
    phase = zeta - math.pi / 4.0
    c, s = math.cos(phase), math.sin(phase)
    ai = (c * p + s * q) / (math.sqrt(math.pi) * z ** 0.25)
    aip = z ** 0.25 * (s * r - c * t) / math.sqrt(math.pi)
    return ai, aip


def airy_ai(x: float) -> tuple[float, float]:
    """Ai(x) and Ai'(x) for x <= 0 (Taylor stepping near 0, asymptotics far out)."""
    if x > 0:
        raise ValueError("airy_ai is only provided on the negative axis")
    if x >= -_TAYLOR_LIMIT:
        return _airy_taylor(x)
    return _airy_asymptotic(-x)


@lru_cache(maxsize=None)
def airy_zero(s: int) -> AiryZero:
    """The s-th negative zero a_s of Ai, to about 1e-13."""
    if int(s) != s or s < 1:
        raise ValueError(f"airy zero index must be a positive integer, got {s!r}")
    t = 3.0 * math.pi * (4 * s - 1) / 8.0
    a = -(t ** (2.0 / 3.0))
    for _ in range(50):
        ai, aip = airy_ai(a)
        step = ai / aip
        a -= step
        if abs(step) <= 4 * EPS * abs(a):
            break
    else:
        raise EvaluationError(f"Newton iteration for a_{s} did not converge")
    return AiryZero(int(s), a)
