"""Uniformly sampled functions on the circle.

Carries the objects that are not trigonometric polynomials: pointwise
max/min splits, absolute values, and the three-way convolution splits used
for the sharper one-sided bounds.  All identities and inequalities asserted
here hold *at the sample points*; discrete circular convolution (scaled by
1/M) coincides with convolution on the circle for band-limited inputs
sampled above Nyquist, and the whole split construction is carried out in
that discrete convolution algebra, so its bookkeeping is exact up to FFT
roundoff.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    GridMismatchError,
    GridTooSmallError,
    KTooSmallError,
    NotRealValuedError,
    ZeroShiftError,
)
from .reports import LemmaReport, SubCheck, check_le
from .sets import SymSet, derived_sets
from .trigpoly import TrigPoly, indicator, _next_pow2


class GridFn:
    """Immutable samples at x_j = j/M, with M a power of two."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[complex]):
        arr = np.asarray(values)
        if arr.dtype != np.complex128:
            arr = arr.astype(np.complex128)
        else:
            arr = arr.copy()
        m = len(arr)
        if m < 2 or m & (m - 1):
            raise GridTooSmallError(f"grid size {m} is not a power of two >= 2")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("GridFn is immutable")

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def is_real(self) -> bool:
        scale = float(np.max(np.abs(self.values))) if len(self.values) else 0.0
        if scale == 0.0:
            return True
        return bool(np.max(np.abs(self.values.imag)) < 1e-10 * scale)

    @property
    def real_values(self) -> np.ndarray:
        return self.values.real

    def mean(self) -> complex:
        return complex(self.values.mean())

    # --- pointwise algebra ---
    def __add__(self, other):
        return GridFn(self.values + _coerce(other, self.m))

    def __sub__(self, other):
        return GridFn(self.values - _coerce(other, self.m))

    def __rmul__(self, scalar):
        return GridFn(self.values * scalar)

    __mul__ = __rmul__

    def __neg__(self):
        return GridFn(-self.values)

    def abs(self) -> "GridFn":
        return GridFn(np.abs(self.values))

    def __eq__(self, other):
        return isinstance(other, GridFn) and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"GridFn(M={self.m}, real={self.is_real})"

    # --- serialization ---
    def to_bytes(self) -> bytes:
        header = struct.pack("<QB", self.m, 1 if self.is_real else 0)
        return header + self.values.astype("<c16").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "GridFn":
        m, _real = struct.unpack("<QB", data[:9])
        arr = np.frombuffer(data[9:], dtype="<c16", count=m)
        return cls(arr)

    def to_json_dict(self) -> dict:
        return {
            "M": self.m,
            "real": self.is_real,
            "samples": [[v.real, v.imag] for v in self.values],
        }


def _coerce(other, m: int) -> np.ndarray:
    if isinstance(other, GridFn):
        if other.m != m:
            raise GridMismatchError(f"grid sizes differ: {m} vs {other.m}")
        return other.values
    return np.asarray(other)


def sample(f: TrigPoly, m_grid: int) -> GridFn:
    """Sample a polynomial at j/M; requires M a power of two above Nyquist."""
    if m_grid < 2 or m_grid & (m_grid - 1):
        raise GridTooSmallError(f"grid size {m_grid} is not a power of two")
    if m_grid <= 2 * f.degree:
        raise GridTooSmallError(
            f"grid size {m_grid} <= 2*degree ({2 * f.degree}); samples would alias"
        )
    return GridFn(f.sample_values(m_grid))


def grid_coefficients(g: GridFn) -> dict[int, complex]:
    """DFT coefficients indexed by signed frequency in (-M/2, M/2]."""
    m = g.m
    spec = np.fft.fft(g.values) / m
    out = {}
    for k, c in enumerate(spec):
        freq = k if k <= m // 2 else k - m
        if abs(c) > 0:
            out[freq] = complex(c)
    return out


def pos_neg_split(g: GridFn) -> tuple[GridFn, GridFn]:
    """g = g_plus - g_minus with both parts nonnegative, pointwise."""
    if not g.is_real:
        raise NotRealValuedError("pos_neg_split requires a real grid function")
    r = g.real_values
    return GridFn(np.maximum(r, 0.0)), GridFn(np.maximum(-r, 0.0))


def circ_convolve(g: GridFn, h: GridFn) -> GridFn:
    """Discrete circular convolution scaled by 1/M.

    Approximates convolution on the circle; exact at the samples when both
    inputs are band-limited and sampled above their joint Nyquist rate.
    """
    if g.m != h.m:
        raise GridMismatchError(f"grid sizes differ: {g.m} vs {h.m}")
    vals = np.fft.ifft(np.fft.fft(g.values) * np.fft.fft(h.values)) / g.m
    return GridFn(vals)


def t1_t2_split(a: SymSet, k_bound: float, m_grid: int) -> tuple[GridFn, GridFn]:
    """Split the indicator polynomial of A into positive and negative parts.

    T1 = max(f, 0) satisfies |T1| <= f + K pointwise; T2 = min(f, 0) satisfies
    ||T2||_inf <= K.  Raises KTooSmallError when some sample falls below -K.
    """
    u = sample(indicator(a), m_grid)
    r = u.real_values
    if r.min() < -k_bound - 1e-9:
        raise KTooSmallError(
            f"observed sample {r.min():.6f} below -K = {-k_bound:.6f}"
        )
    return GridFn(np.maximum(r, 0.0)), GridFn(np.minimum(r, 0.0))


def _conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.fft.ifft(np.fft.fft(a) * np.fft.fft(b)) / len(a)


def _clip_split(w: np.ndarray, bound: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """w = U + V with |U| <= max(bound, 0) pointwise and V the overflow."""
    bound = np.maximum(bound, 0.0)
    aw = np.abs(w)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(aw > bound, np.where(aw > 0, bound / np.maximum(aw, 1e-300), 1.0), 1.0)
    u = w * scale
    return u, w - u


def default_grid_for(a: SymSet, t: int) -> int:
    """Power-of-two grid comfortably above Nyquist for A shifted by t."""
    need = 2 * (a.degree + abs(t)) + 2
    return _next_pow2(max(256, 2 * need))


def q1_q2_decompose(
    a: SymSet,
    t: int,
    k_bound: float,
    m_grid: int | None = None,
    *,
    c1: float = 4.0,
    c2: float = 64.0,
    tol: float = 1e-8,
) -> tuple[GridFn, GridFn, LemmaReport]:
    """Split the indicator polynomial of B_t into a dominated and a flat part.

    Produces Q1 + Q2 equal to the sampled indicator polynomial of B_t, with
    |Q1| <= c1 * (f_A + K) pointwise at samples and ||Q2||_inf <= c2 * K^3.
    The construction works entirely in the discrete convolution algebra:
    split f_A = T1 + T2, expand the intersection identities for B_t u -B_t
    and B_t \\ -B_t into convolutions of the pieces, keep the dominated
    main terms (clipped back to the pointwise envelope) in Q1 and sweep
    everything else into Q2.
    """
    if t == 0:
        raise ZeroShiftError("t must be nonzero")
    der = derived_sets(a, t)
    deg = a.degree
    need = 2 * (deg + abs(t)) + 2
    if m_grid is None:
        m_grid = default_grid_for(a, t)
    if m_grid <= need:
        raise GridTooSmallError(f"grid {m_grid} <= Nyquist requirement {need}")

    u_fn = sample(indicator(a), m_grid)
    u = u_fn.real_values
    if u.min() < -k_bound - 1e-9:
        raise KTooSmallError(
            f"observed sample {u.min():.6f} below -K = {-k_bound:.6f}"
        )

    target = sample(indicator(der.b_t), m_grid).values

    if len(der.b_t) == 0:
        zero = GridFn(np.zeros(m_grid))
        report = LemmaReport.build(
            lemma_id="q1_q2_decomposition",
            inputs={"set": a.to_json(), "t": t, "K": k_bound, "M": m_grid},
            checks=[
                check_le("sum_identity", float(np.max(np.abs(target))), 0.0, tol),
            ],
            constants_used={"c1": c1, "c2": c2},
            provenance={"case": "empty B_t, zero split"},
        )
        return zero, zero, report

    j = np.arange(m_grid)
    e_pos = np.exp(2j * np.pi * t * j / m_grid)
    e_neg = e_pos.conjugate()

    t1 = np.maximum(u, 0.0).astype(np.complex128)
    t2 = np.minimum(u, 0.0).astype(np.complex128)
    envelope = u + k_bound

    r1 = np.zeros(m_grid, dtype=np.complex128)
    r2 = np.zeros(m_grid, dtype=np.complex128)
    for e in (e_pos, e_neg):
        main, rem = _clip_split(_conv(t1, e * t1), envelope)
        r1 += main
        r2 += rem + _conv(t1, e * t2) + _conv(t2, e * t1) + _conv(t2, e * t2)

    # triple intersection A n (A+t) n (A-t)
    w_main = _conv(_conv(t1, e_pos * t1), e_neg * t1)
    main3, rem3 = _clip_split(w_main, envelope)
    full3 = _conv(_conv(u.astype(np.complex128), e_pos * u), e_neg * u)
    r1 -= 2.0 * main3
    r2 -= 2.0 * (rem3 + (full3 - w_main))

    s_fac = e_pos - e_neg
    main_s, rem_s = _clip_split(_conv(t1, s_fac * t1), 2.0 * envelope)
    s1 = main_s
    s2 = rem_s + _conv(t1, s_fac * t2) + _conv(t2, s_fac * t1) + _conv(t2, s_fac * t2)

    q1 = (r1 + s1) / 2.0
    q2 = (r2 + s2) / 2.0

    k_eff = max(k_bound, 1e-12)
    identity_err = float(np.max(np.abs(q1 + q2 - target)))
    envelope_pos = np.maximum(envelope, 0.0)
    q1_excess = float(np.max(np.abs(q1) - c1 * envelope_pos))
    ratios = np.abs(q1) / np.maximum(envelope_pos, 1e-9)
    observed_c1 = float(np.max(ratios))
    q2_sup = float(np.max(np.abs(q2)))
    observed_c2 = q2_sup / k_eff**3

    checks = [
        check_le("sum_identity", identity_err, 0.0, tol),
        check_le("q1_pointwise", q1_excess, 0.0, 1e-9 * (1 + abs(k_bound))),
        check_le("q2_sup", q2_sup, c2 * k_eff**3, 1e-9 * (1 + k_eff**3)),
    ]
    report = LemmaReport.build(
        lemma_id="q1_q2_decomposition",
        inputs={"set": a.to_json(), "t": t, "K": k_bound, "M": m_grid},
        checks=checks,
        constants_used={"c1": c1, "c2": c2},
        observed_min_constant=max(observed_c1 / max(c1, 1e-12), observed_c2 / max(c2, 1e-12)),
        provenance={
            "convolutions": "discrete circular, 1/M scaled",
            "observed_c1": f"{observed_c1:.6g}",
            "observed_c2": f"{observed_c2:.6g}",
        },
    )
    return GridFn(q1), GridFn(q2), report
