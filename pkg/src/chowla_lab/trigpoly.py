"""Sparse trigonometric polynomials on the circle, Fourier side.

A TrigPoly is a finite map frequency -> complex coefficient representing
f(x) = sum_m c_m e(m x) with e(x) = exp(2 pi i x).  Coefficients of
indicator-derived polynomials stay exact (integer-valued complex arithmetic
is exact in double precision at this scale); floats only matter once a
polynomial is evaluated or minimized.

Convolution multiplies coefficients, so for indicator polynomials it
implements set intersection exactly.  Global minima are certified: the
returned bracket [lower, lower+radius] is guaranteed to contain the true
minimum, with the lower bound justified by explicit Lipschitz/curvature
constants derived from the coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import NonConvergenceError, NotRealValuedError
from .sets import IntSet

TWO_PI = 2.0 * math.pi

# Relative slop folded into every certified lower bound to absorb floating
# point evaluation error; generous compared to ~1e-16 per operation.
_EVAL_SLOP = 1e-12


def _as_complex(value) -> complex:
    return complex(value)


class TrigPoly:
    """Immutable sparse trigonometric polynomial."""

    __slots__ = ("coeffs", "_is_real")

    def __init__(self, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]] = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = coeffs
        clean: dict[int, complex] = {}
        for m, c in items:
            c = _as_complex(c)
            if c != 0:
                clean[int(m)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "_is_real", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("TrigPoly is immutable")

    # --- basic queries ---
    def coeff(self, m: int) -> complex:
        return self.coeffs.get(m, 0j)

    @property
    def degree(self) -> int:
        return max((abs(m) for m in self.coeffs), default=0)

    @property
    def support(self) -> IntSet:
        return IntSet(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_real(self) -> bool:
        """True iff the coefficients are Hermitian: c(-m) == conj(c(m))."""
        cached = self._is_real
        if cached is None:
            cached = all(
                self.coeffs.get(-m) == c.conjugate() for m, c in self.coeffs.items()
            )
            object.__setattr__(self, "_is_real", cached)
        return cached

    @property
    def mean_zero(self) -> bool:
        return 0 not in self.coeffs

    @property
    def coeff_abs_sum(self) -> float:
        return float(sum(abs(c) for c in self.coeffs.values()))

    def __eq__(self, other) -> bool:
        return isinstance(other, TrigPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{m}: {c}" for m, c in list(self.coeffs.items())[:6])
        more = "..." if len(self.coeffs) > 6 else ""
        return f"TrigPoly({{{inner}{more}}})"

    # --- linear algebra ---
    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0j) + c
        return TrigPoly(out)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0j) - c
        return TrigPoly(out)

    def __rmul__(self, scalar) -> "TrigPoly":
        s = _as_complex(scalar)
        return TrigPoly({m: s * c for m, c in self.coeffs.items()})

    def __mul__(self, scalar) -> "TrigPoly":
        return self.__rmul__(scalar)

    def __neg__(self) -> "TrigPoly":
        return self.__rmul__(-1)

    def coefficient_conjugate(self) -> "TrigPoly":
        """Polynomial with coefficients conj(c(m)) at the same frequencies."""
        return TrigPoly({m: c.conjugate() for m, c in self.coeffs.items()})

    def dilate(self, c: int) -> "TrigPoly":
        """Frequency dilation m -> c*m (c a nonzero integer)."""
        if c == 0:
            raise ValueError("dilation factor must be nonzero")
        return TrigPoly({c * m: v for m, v in self.coeffs.items()})

    # --- evaluation ---
    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        freqs = np.array(list(self.coeffs.keys()), dtype=np.int64)
        vals = np.array(list(self.coeffs.values()), dtype=np.complex128)
        return freqs, vals

    def eval(self, x: float):
        """Value at x; a float when the polynomial is real-valued."""
        if not self.coeffs:
            return 0.0 if self.is_real else 0j
        freqs, vals = self._arrays()
        total = complex(np.sum(vals * np.exp(2j * np.pi * freqs * x)))
        if self.is_real:
            residue = abs(total.imag)
            assert residue < 1e-10 * max(self.coeff_abs_sum, 1.0), residue
            return total.real
        return total

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at an array of points."""
        if not self.coeffs:
            return np.zeros(len(xs), dtype=np.float64 if self.is_real else np.complex128)
        freqs, vals = self._arrays()
        out = np.exp(2j * np.pi * np.outer(np.asarray(xs, dtype=np.float64), freqs)) @ vals
        return out.real if self.is_real else out

    def sample_values(self, m_grid: int) -> np.ndarray:
        """Values at j/m_grid for j = 0..m_grid-1 via an inverse FFT.

        Frequencies are folded mod m_grid; callers wanting exact samples must
        pick m_grid > 2*degree.
        """
        spec = np.zeros(m_grid, dtype=np.complex128)
        for m, c in self.coeffs.items():
            spec[m % m_grid] += c
        return np.fft.ifft(spec) * m_grid

    # --- serialization ---
    def to_json_dict(self) -> dict:
        out = {}
        for m, c in self.coeffs.items():
            re, im = c.real, c.imag
            if re.is_integer() and im.is_integer():
                out[str(m)] = [int(re), int(im)]
            else:
                out[str(m)] = [re, im]
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping[str, list]) -> "TrigPoly":
        return cls({int(m): complex(v[0], v[1]) for m, v in data.items()})


def indicator(a: Iterable[int]) -> TrigPoly:
    """The polynomial sum_{a in A} e(a x); real-valued iff A is symmetric."""
    return TrigPoly({int(m): 1 for m in a})


def convolve(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Convolution on the circle: coefficientwise product."""
    if len(f.coeffs) > len(g.coeffs):
        f, g = g, f
    return TrigPoly({m: c * g.coeffs[m] for m, c in f.coeffs.items() if m in g.coeffs})


def conv_pow(f: TrigPoly, m: int) -> TrigPoly:
    """m-fold convolution power; conv_pow(f, 1) == f."""
    if m < 1:
        raise ValueError("convolution power must be >= 1")
    return TrigPoly({freq: c ** m for freq, c in f.coeffs.items()})


def parseval_inner(f: TrigPoly, g: TrigPoly) -> complex:
    """<f, g> = sum_m f^(m) conj(g^(m))."""
    return sum(
        (c * g.coeffs[m].conjugate() for m, c in f.coeffs.items() if m in g.coeffs),
        start=0j,
    )


@dataclass(frozen=True)
class Norms:
    """L^1/L^2/L^inf estimates; l2 is exact, l1/linf come from a dense grid."""

    l1: float
    l2: float
    linf: float
    grid_size: int
    linf_upper: float  # certified: min(sum |c|, grid max + Lipschitz slack)


def norms(f: TrigPoly, grid_factor: int = 64) -> Norms:
    """Norm estimates: l2 exact via the coefficients, l1/linf by quadrature."""
    l2 = math.sqrt(sum(abs(c) ** 2 for c in f.coeffs.values()))
    if f.is_zero:
        return Norms(0.0, 0.0, 0.0, 0, 0.0)
    n = f.degree
    m_grid = _next_pow2(max(1 << 16, grid_factor * max(n, 1)))
    vals = np.abs(f.sample_values(m_grid))
    s1 = f.coeff_abs_sum
    lip = TWO_PI * sum(abs(m) * abs(c) for m, c in f.coeffs.items())
    grid_max = float(vals.max())
    return Norms(
        l1=float(vals.mean()),
        l2=l2,
        linf=grid_max,
        grid_size=m_grid,
        linf_upper=min(s1, grid_max + lip / (2 * m_grid)),
    )


@dataclass(frozen=True)
class MinCertificate:
    """Certified bracket for the global minimum over the circle.

    The true minimum lies in [lower, lower + radius]; lower is a rigorous
    bound for f everywhere, justified by coefficient-level Lipschitz and
    curvature constants, and lower + radius is an attained value f(argmin).
    """

    lower: float
    argmin: float
    radius: float
    grid_size: int

    @property
    def upper(self) -> float:
        """Attained value at argmin; an upper bound on the true minimum."""
        return self.lower + self.radius

    @property
    def min_norm_upper(self) -> float:
        """Certified upper bound for -min f (valid K in one-sided bounds)."""
        return -self.lower

    @property
    def min_norm_lower(self) -> float:
        """Certified lower bound for -min f."""
        return -(self.lower + self.radius)

    def to_json_dict(self) -> dict:
        return {
            "lower": self.lower,
            "argmin": self.argmin,
            "radius": self.radius,
            "grid_size": self.grid_size,
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "MinCertificate":
        return cls(d["lower"], d["argmin"], d["radius"], int(d["grid_size"]))


def _next_pow2(n: int) -> int:
    return 1 << max(0, (int(n) - 1).bit_length())


_MAX_EVALS_DEFAULT = 1 << 26


def min_norm(
    f: TrigPoly,
    tol: float = 1e-9,
    *,
    grid_factor: int = 64,
    max_evals: int = _MAX_EVALS_DEFAULT,
) -> MinCertificate:
    """Certified global minimum of a real-valued polynomial over the circle.

    Dense FFT grid first (max(4096, grid_factor*degree) points), then
    branch-and-bound refinement of the cells that could still contain the
    minimum.  Each cell [c-h, c+h] carries the rigorous bound

        f(x) >= f(c) - min(L1*h, |f'(c)|*h + L2*h^2/2),

    with L1 = 2 pi sum |m c_m| and L2 = (2 pi)^2 sum m^2 |c_m|.  Refinement
    stops once every surviving cell's bound is within ``tol`` of the best
    value seen; the total evaluation budget is capped at ``max_evals`` and
    NonConvergenceError (carrying the best certificate) is raised beyond it.

    When coeff(0) != 0 this is still the plain global minimum; the one-sided
    norm reading -min f only applies to mean-zero polynomials.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not f.is_real:
        raise NotRealValuedError("min_norm requires a real-valued polynomial")
    if f.is_zero:
        return MinCertificate(0.0, 0.0, 0.0, 0)

    freqs, cvals = f._arrays()
    if len(freqs) == 1 and freqs[0] == 0:
        c0 = float(cvals[0].real)
        return MinCertificate(c0, 0.0, 0.0, 1)

    s1 = float(np.sum(np.abs(cvals)))
    lip1 = TWO_PI * float(np.sum(np.abs(freqs) * np.abs(cvals))) * (1 + 1e-12)
    lip2 = TWO_PI * TWO_PI * float(np.sum(freqs.astype(float) ** 2 * np.abs(cvals))) * (1 + 1e-12)
    slop = _EVAL_SLOP * max(s1, 1.0)

    n = f.degree
    m0 = _next_pow2(max(4096, grid_factor * n))
    vals = f.sample_values(m0)
    assert np.max(np.abs(vals.imag)) < 1e-9 * max(s1, 1.0)
    fc = vals.real.copy()

    dcoeffs = cvals * (2j * np.pi * freqs)
    dvals = np.abs((np.fft.ifft(_fold(dcoeffs, freqs, m0)) * m0))

    centers = np.arange(m0) / m0
    halves = np.full(m0, 0.5 / m0)
    dfc = dvals
    evals = m0

    best_idx = int(np.argmin(fc))
    best_upper = float(fc[best_idx])
    x_best = float(centers[best_idx])

    def cell_lowers(values, dabs, h):
        gap = np.minimum(lip1 * h, dabs * h + 0.5 * lip2 * h * h)
        return values - gap - slop

    lowers = cell_lowers(fc, dfc, halves)
    floor = math.inf  # min lower bound among retired cells

    d_freqs = freqs.astype(np.float64)

    while True:
        theta = best_upper - tol
        active = lowers < theta
        if not np.any(active):
            retired_min = float(lowers.min()) if len(lowers) else math.inf
            floor = min(floor, retired_min)
            lower_cert = floor
            break
        floor_candidates = lowers[~active]
        if len(floor_candidates):
            floor = min(floor, float(floor_candidates.min()))
        c_act = centers[active]
        h_act = halves[active]
        child_c = np.concatenate([c_act - h_act / 2, c_act + h_act / 2])
        child_h = np.concatenate([h_act / 2, h_act / 2])
        phase = np.exp(2j * np.pi * np.outer(child_c, d_freqs))
        child_f = (phase @ cvals).real
        child_d = np.abs(phase @ dcoeffs)
        evals += len(child_c)
        if evals > max_evals:
            all_lowers = np.concatenate(
                [lowers[active], cell_lowers(child_f, child_d, child_h)]
            )
            lower_cert = min(floor, float(all_lowers.min()))
            cert = MinCertificate(
                lower=lower_cert - 0.0,
                argmin=x_best % 1.0,
                radius=best_upper - lower_cert,
                grid_size=evals,
            )
            raise NonConvergenceError(
                f"evaluation budget {max_evals} exhausted at radius {cert.radius:.3e}",
                certificate=cert,
            )
        i_min = int(np.argmin(child_f))
        if child_f[i_min] < best_upper:
            best_upper = float(child_f[i_min])
            x_best = float(child_c[i_min])
        centers, halves, fc, dfc = child_c, child_h, child_f, child_d
        lowers = cell_lowers(fc, dfc, halves)

    lower_cert = min(lower_cert, best_upper)
    return MinCertificate(
        lower=lower_cert,
        argmin=x_best % 1.0,
        radius=best_upper - lower_cert,
        grid_size=evals,
    )


def _fold(coeffs: np.ndarray, freqs: np.ndarray, m_grid: int) -> np.ndarray:
    spec = np.zeros(m_grid, dtype=np.complex128)
    for m, c in zip(freqs, coeffs):
        spec[int(m) % m_grid] += c
    return spec


def certified_sup_abs_diff(
    f: TrigPoly,
    rhs: TrigPoly,
    grid_factor: int = 64,
) -> tuple[float, float]:
    """Certified bound for sup_x (|f(x)| - rhs(x)), plus the witness point.

    Grid maximum plus a Lipschitz term covering the whole circle; rhs must be
    real-valued.  Returns (certified sup bound, argmax grid point).
    """
    if not rhs.is_real:
        raise NotRealValuedError("rhs must be real-valued")
    n = max(f.degree, rhs.degree, 1)
    m_grid = _next_pow2(max(4096, grid_factor * n))
    fv = np.abs(f.sample_values(m_grid))
    rv = rhs.sample_values(m_grid).real
    diff = fv - rv
    idx = int(np.argmax(diff))
    lip = TWO_PI * (
        sum(abs(m) * abs(c) for m, c in f.coeffs.items())
        + sum(abs(m) * abs(c) for m, c in rhs.coeffs.items())
    )
    bound = float(diff[idx]) + lip / (2 * m_grid) + _EVAL_SLOP * (
        f.coeff_abs_sum + rhs.coeff_abs_sum + 1.0
    )
    return bound, idx / m_grid
