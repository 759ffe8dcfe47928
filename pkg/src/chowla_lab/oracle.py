"""Brute-force ground truth: exact small frontiers and shift searches.

The frontier K(n, M) is the minimum over all n-element subsets B of [1..M]
of -min_x sum_{b in B} cos(2 pi b x).  Values here use the cosine convention
(positive-half sets); the symmetric-exponential polynomial over B u -B is
exactly twice the cosine sum, and every serialized row names its convention
to keep the factor of two honest.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb, gcd
from functools import reduce

import numpy as np

from .errors import EmptySetError, TooLargeError
from .sets import (
    IntSet,
    SymSet,
    additive_energy,
    derived_sets,
    from_positive,
    longest_ap,
    ap_partition,
    shift_intersection_size,
    sidon_difference_construction,
    sidon_set,
)
from .trigpoly import MinCertificate, indicator, min_norm, _next_pow2

CSV_HEADER = "n,M,k_value,witness,radius,convention"

DEFAULT_CAP = 10 ** 8


@dataclass(frozen=True)
class FrontierEntry:
    """One frontier row: the minimizing witness for (n, M) and its bracket."""

    n: int
    m_bound: int
    k_value: float
    witness: IntSet
    certificate: MinCertificate
    convention: str = "cosine"

    def to_csv_row(self) -> str:
        wit = " ".join(str(x) for x in self.witness)
        return (
            f"{self.n},{self.m_bound},{self.k_value!r},\"{wit}\","
            f"{self.certificate.radius!r},{self.convention}"
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "M": self.m_bound,
            "k_value": self.k_value,
            "witness": self.witness.to_json(),
            "certificate": self.certificate.to_json_dict(),
            "convention": self.convention,
        }


def cosine_value(witness: tuple[int, ...] | IntSet, tol: float = 1e-8,
                 grid_factor: int = 64) -> tuple[float, MinCertificate]:
    """-min of the cosine sum over the positive set, via the symmetric poly.

    The symmetric polynomial is twice the cosine sum, so the returned value
    is half the certified upper bound of its one-sided norm... taken at the
    attained end of the bracket, which is within radius/2 of the truth.
    """
    sym = from_positive(witness)
    cert = min_norm(indicator(sym), tol=tol, grid_factor=grid_factor)
    return cert.min_norm_lower / 2.0, cert


def _canonical(candidate: tuple[int, ...]) -> bool:
    return reduce(gcd, candidate) == 1


def brute_k(
    n: int,
    m_bound: int,
    tol: float = 1e-7,
    *,
    cap: int = DEFAULT_CAP,
    checkpoint_dir: str | None = None,
    chunk_size: int = 2000,
    resume: bool = False,
    grid_factor: int = 64,
) -> FrontierEntry:
    """Exhaustive minimum of -min f_B over n-subsets of [1..M].

    Enumeration is lexicographic; dilated sets (gcd > 1) are skipped since
    the minimum is invariant under frequency dilation.  Ties keep the
    lexicographically first witness.  With a checkpoint directory the run is
    resumable in chunks keyed by (n, M, chunk index).
    """
    if n < 1 or m_bound < n:
        raise EmptySetError(f"need 1 <= n <= M, got n={n}, M={m_bound}")
    total = comb(m_bound, n)
    if total > cap:
        raise TooLargeError(
            f"C({m_bound},{n}) = {total} exceeds enumeration cap {cap}"
        )

    start_index = 0
    best: tuple[float, tuple[int, ...], MinCertificate] | None = None
    ck_path = None
    if checkpoint_dir:
        os.makedirs(checkpoint_dir, exist_ok=True)
        ck_path = os.path.join(checkpoint_dir, f"brute_n{n}_M{m_bound}.json")
        if resume and os.path.exists(ck_path):
            with open(ck_path) as fh:
                state = json.load(fh)
            if state.get("chunk_size") == chunk_size and not state.get("done"):
                start_index = state["next_index"]
                if state.get("best"):
                    b = state["best"]
                    best = (
                        b["k_value"],
                        tuple(b["witness"]),
                        MinCertificate.from_json_dict(b["certificate"]),
                    )

    stream = islice(combinations(range(1, m_bound + 1), n), start_index, None)
    index = start_index
    chunk_count = 0
    while True:
        chunk = list(islice(stream, chunk_size))
        if not chunk:
            break
        for cand in chunk:
            if not _canonical(cand):
                continue
            value, cert = cosine_value(cand, tol=tol, grid_factor=grid_factor)
            if best is None or value < best[0]:
                best = (value, cand, cert)
        index += len(chunk)
        chunk_count += 1
        if ck_path:
            _write_checkpoint(ck_path, n, m_bound, chunk_size, index, best, done=False)

    if best is None:
        raise EmptySetError("no canonical candidate sets (all dilates)")
    if ck_path:
        _write_checkpoint(ck_path, n, m_bound, chunk_size, index, best, done=True)
    return FrontierEntry(
        n=n,
        m_bound=m_bound,
        k_value=best[0],
        witness=IntSet(best[1]),
        certificate=best[2],
    )


def _write_checkpoint(path, n, m_bound, chunk_size, next_index, best, done):
    state = {
        "n": n,
        "M": m_bound,
        "chunk_size": chunk_size,
        "next_index": next_index,
        "done": done,
        "best": None
        if best is None
        else {
            "k_value": best[0],
            "witness": list(best[1]),
            "certificate": best[2].to_json_dict(),
        },
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(state, fh, sort_keys=True)
    os.replace(tmp, path)


def frontier(n_values, m_values, **kwargs) -> list[FrontierEntry]:
    """Frontier rows for every (n, M) pair with M >= n."""
    rows = []
    for n in n_values:
        for m_bound in m_values:
            if m_bound >= n:
                rows.append(brute_k(n, m_bound, **kwargs))
    return rows


# --------------------------------------------------------------------------
# Sidon difference-set experiments
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SidonExperiment:
    """Upper-bound experiment for one Sidon base size m."""

    m: int
    n: int
    base: IntSet
    identity_error: float
    certificate: MinCertificate
    symmetric_bound: float  # the norm is at most m, by the square identity
    ratio: float            # certified norm / sqrt(n), symmetric convention

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "base": self.base.to_json(),
            "identity_error": self.identity_error,
            "certificate": self.certificate.to_json_dict(),
            "symmetric_bound": self.symmetric_bound,
            "ratio": self.ratio,
            "convention": "symmetric",
        }

    def to_csv_row(self) -> str:
        return (
            f"{self.m},{self.n},{self.identity_error!r},"
            f"{-self.certificate.lower!r},{self.ratio!r}"
        )


SIDON_CSV_HEADER = "m,n,identity_error,min_norm_upper,ratio"


def sidon_upper_experiment(m: int, *, grid_factor: int = 64,
                           tol: float = 1e-9) -> SidonExperiment:
    """Difference set of a Sidon set: its polynomial is |f_B|^2 - m >= -m.

    Verifies the square identity on a Nyquist grid and certifies the
    one-sided norm; the ratio norm/sqrt(n) tracks the square-root upper
    bound for the cosine problem.
    """
    base = sidon_set(m)
    sym = sidon_difference_construction(m)
    n = len(sym)
    m_grid = _next_pow2(max(256, 4 * sym.degree))
    a_vals = indicator(sym).sample_values(m_grid)
    b_vals = indicator(base).sample_values(m_grid)
    identity_error = float(np.max(np.abs(a_vals - (np.abs(b_vals) ** 2 - m))))
    cert = min_norm(indicator(sym), tol=tol, grid_factor=grid_factor)
    return SidonExperiment(
        m=m,
        n=n,
        base=base,
        identity_error=identity_error,
        certificate=cert,
        symmetric_bound=float(m),
        ratio=cert.min_norm_upper / math.sqrt(n),
    )


# --------------------------------------------------------------------------
# shift searches
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BestShift:
    """argmax_t |A n (A+t)| over nonzero shifts, with the energy chain."""

    t: int
    size: int
    energy: int
    roth_rhs: float | None = None
    roth_checked: bool = False
    roth_ok: bool | None = None


def best_t_energy(a: SymSet, k: float | None = None) -> BestShift:
    """Best nonzero shift; ties prefer the smallest |t|, positive first."""
    if len(a) < 2:
        raise EmptySetError("need |A| >= 2")
    best_t, best_size = 0, -1
    for t in sorted({x - y for x in a for y in a if x != y},
                    key=lambda v: (abs(v), v < 0)):
        size = shift_intersection_size(a, t)
        if size > best_size:
            best_t, best_size = t, size
    energy = additive_energy(a, a)
    n = len(a)
    if k is not None and n >= 2 * k * k:
        rhs = n * n / (2 * k)
        return BestShift(best_t, best_size, energy, rhs, True, energy >= rhs - 1e-9)
    return BestShift(best_t, best_size, energy)


@dataclass(frozen=True)
class TraceStep:
    """One verified inequality |A n (A+jt)| >= |A n (A+t)| - M L."""

    t: int
    j: int
    lhs: int
    rhs: int
    ok: bool
    r_le_l: bool  # progression-count precondition r(t) <= L


@dataclass(frozen=True)
class OrbitSearch:
    t_best: int
    bt_size: int
    t0: int
    orbit_size: int
    trace: tuple[TraceStep, ...] = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "t_best": self.t_best,
            "bt_size": self.bt_size,
            "t0": self.t0,
            "orbit_size": self.orbit_size,
            "trace": [
                {
                    "t": s.t,
                    "j": s.j,
                    "lhs": s.lhs,
                    "rhs": s.rhs,
                    "ok": s.ok,
                    "r_le_L": s.r_le_l,
                }
                for s in self.trace
            ],
        }


def _primes_up_to(m: int) -> list[int]:
    sieve = bytearray([1]) * (m + 1) if m >= 0 else bytearray()
    out = []
    for p in range(2, m + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, m + 1, p):
                sieve[q] = 0
    return out


def prime_product_t_search(
    a: SymSet,
    m_param: int,
    cap_length: int | None = None,
    *,
    orbit_cap: int = 10_000,
    explore_depth: int | None = None,
) -> OrbitSearch:
    """Explore shifts (prod p^alpha) t0 and verify the step inequality.

    Starting from the best shift t0, multiply by primes up to m_param and at
    every visited shift t check exactly, for j in [m_param], that
    |A n (A + j t)| >= |A n (A + t)| - m_param * L, recording whether the
    progression-count precondition r(t) <= L held.  Returns the orbit member
    with the largest B_t plus the full trace (all integer arithmetic).
    """
    if len(a) < 2:
        raise EmptySetError("need |A| >= 2")
    if cap_length is None:
        cap_length = longest_ap(a)[0]
    start = best_t_energy(a)
    t0 = start.t
    k0 = start.size
    if k0 == 0:
        return OrbitSearch(t_best=t0, bt_size=0, t0=t0, orbit_size=1)

    primes = _primes_up_to(m_param)
    claim_depth = k0 // max(1, 2 * m_param * cap_length)
    depth = explore_depth if explore_depth is not None else max(claim_depth, 4)

    seen = {t0}
    queue: list[tuple[int, int]] = [(t0, 0)]
    trace: list[TraceStep] = []
    best_t, best_size = t0, len(derived_sets(a, t0).b_t)
    while queue:
        t, level = queue.pop(0)
        size_t = shift_intersection_size(a, t)
        r_t = ap_partition(a, t).r
        for j in range(1, m_param + 1):
            lhs = shift_intersection_size(a, j * t)
            rhs = size_t - m_param * cap_length
            trace.append(
                TraceStep(
                    t=t,
                    j=j,
                    lhs=lhs,
                    rhs=rhs,
                    ok=lhs >= rhs,
                    r_le_l=r_t <= cap_length,
                )
            )
        bt_size = len(derived_sets(a, t).b_t)
        if bt_size > best_size or (bt_size == best_size and abs(t) < abs(best_t)):
            best_t, best_size = t, bt_size
        if level < depth:
            for p in primes:
                nxt = t * p
                if nxt not in seen and len(seen) < orbit_cap:
                    seen.add(nxt)
                    queue.append((nxt, level + 1))
    return OrbitSearch(
        t_best=best_t,
        bt_size=best_size,
        t0=t0,
        orbit_size=len(seen),
        trace=tuple(trace),
    )
