"""Built-in instance generators and named check suites.

Everything here is deterministic given a seed; the CLI and the test suite
share these generators so reported runs are reproducible bit for bit.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable

from . import verify
from .errors import ChowlaLabError
from .reports import LemmaReport
from .sets import IntSet, SymSet, from_positive, sidon_difference_construction
from .trigpoly import TrigPoly
from .oracle import best_t_energy


def random_symset(rng: random.Random, max_half: int = 12, bound: int = 40,
                  min_half: int = 1) -> SymSet:
    """Random symmetric set: a random positive half up to the bound."""
    half = rng.randint(min_half, max_half)
    positives = rng.sample(range(1, bound + 1), min(half, bound))
    return from_positive(positives)


def random_shift(rng: random.Random, a: SymSet) -> int:
    """A shift likely to make A n (A + t) nonempty: usually a difference."""
    diffs = sorted({x - y for x in a for y in a if x != y})
    if diffs and rng.random() < 0.8:
        return rng.choice(diffs)
    t = rng.randint(1, max(2 * a.degree, 2))
    return t if rng.random() < 0.5 else -t

def random_mean_zero_poly(rng: random.Random, max_degree: int = 64,
                          max_terms: int = 10, scale: float = 2.0) -> TrigPoly:
    """Random real-valued mean-zero polynomial with Hermitian coefficients."""
    n_terms = rng.randint(1, max_terms)
    freqs = rng.sample(range(1, max_degree + 1), min(n_terms, max_degree))
    coeffs: dict[int, complex] = {}
    for m in freqs:
        c = complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
        if c == 0:
            c = complex(scale, 0.0)
        coeffs[m] = c
        coeffs[-m] = c.conjugate()
    return TrigPoly(coeffs)


def ap_rich_symset(k: int) -> SymSet:
    """The symmetric interval (an AP of full length on each side)."""
    return from_positive(range(1, k + 1))


def parse_set_token(token: str) -> SymSet:
    """Parse a CLI set token: 'sidon:M', 'ap:K', 'random:N[:BOUND[:SEED]]',
    or an inline JSON array of integers."""
    token = token.strip()
    if token.startswith("sidon:"):
        return sidon_difference_construction(int(token.split(":", 1)[1]))
    if token.startswith("ap:"):
        return ap_rich_symset(int(token.split(":", 1)[1]))
    if token.startswith("random:"):
        parts = token.split(":")[1:]
        half = int(parts[0]) if parts and parts[0] else 6
        bound = int(parts[1]) if len(parts) > 1 else 40
        seed = int(parts[2]) if len(parts) > 2 else 0
        rng = random.Random(seed)
        return random_symset(rng, max_half=half, min_half=half, bound=bound)
    import json

    data = json.loads(token)
    if not isinstance(data, list):
        raise ChowlaLabError(f"set token must be a JSON array: {token!r}")
    return SymSet(data)


# --------------------------------------------------------------------------
# named suites
# --------------------------------------------------------------------------

def _default_sets(rng: random.Random, supplied: list[SymSet],
                  count: int, **kwargs) -> list[SymSet]:
    if supplied:
        return supplied
    return [random_symset(rng, **kwargs) for _ in range(count)]


def _polys(rng, trials):
    return [random_mean_zero_poly(rng, max_degree=48, max_terms=8)
            for _ in range(trials)]


def suite_min_to_l1(rng, sets, trials, opts):
    for f in _polys(rng, trials):
        yield verify.check_min_to_l1(f, tol=opts["tol"],
                                     grid_factor=opts["grid_factor"])


def suite_conv_min(rng, sets, trials, opts):
    for _ in range(trials):
        f = random_mean_zero_poly(rng, max_degree=48, max_terms=8)
        g = random_mean_zero_poly(rng, max_degree=48, max_terms=8)
        yield verify.check_conv_min(f, g, tol=opts["tol"],
                                    grid_factor=opts["grid_factor"])


def suite_kconv(rng, sets, trials, opts):
    for _ in range(trials):
        f = random_mean_zero_poly(rng, max_degree=48, max_terms=8)
        g = random_mean_zero_poly(rng, max_degree=48, max_terms=8)
        yield verify.check_kconv(f, g, tol=opts["tol"],
                                 grid_factor=opts["grid_factor"])


def suite_roth(rng, sets, trials, opts):
    for a in _default_sets(rng, sets, trials, max_half=12, bound=40):
        yield verify.check_roth(a, a, tol=opts["tol"],
                                grid_factor=opts["grid_factor"])


def suite_ruzsa(rng, sets, trials, opts):
    produced = 0
    candidates = sets or [ap_rich_symset(rng.randint(4, 12)) for _ in range(trials)]
    for a in candidates:
        witness = verify.ap_witness(a)
        if witness is None:
            continue
        u, v, d = witness
        yield verify.check_ruzsa_witness(a, u, v, d, tol=opts["tol"],
                                         grid_factor=opts["grid_factor"])
        produced += 1
        if produced >= trials:
            break


def suite_ap_bound(rng, sets, trials, opts):
    pool = sets or (
        [sidon_difference_construction(m) for m in range(2, 7)]
        + [ap_rich_symset(rng.randint(2, 10)) for _ in range(max(0, trials - 5))]
    )
    for a in pool[:trials]:
        yield verify.check_ap_bound(
            a, cap_multiple=opts["constants"]["C_ap"],
            tol=opts["tol"], grid_factor=opts["grid_factor"])


def suite_ft_gt(rng, sets, trials, opts):
    for a in _default_sets(rng, sets, trials, max_half=8, bound=24):
        t = random_shift(rng, a)
        _f, _g, report = verify.build_ft_gt(a, t, tol=opts["tol"],
                                            grid_factor=opts["grid_factor"])
        yield report


def suite_cube(rng, sets, trials, opts):
    for a in _default_sets(rng, sets, trials, max_half=8, bound=24):
        t = random_shift(rng, a)
        yield verify.check_cube_inequality(
            a, t, c3=opts["constants"]["c3"],
            tol=opts["tol"], grid_factor=opts["grid_factor"])


def suite_bt_lower(rng, sets, trials, opts):
    from .sets import bt_lower_bound_check, longest_ap

    for a in _default_sets(rng, sets, trials, max_half=10, bound=32):
        t = random_shift(rng, a)
        cap = longest_ap(a)[0]
        yield bt_lower_bound_check(a, t, cap)


def suite_hh_trick(rng, sets, trials, opts):
    pool = sets or [sidon_difference_construction(m) for m in (3, 4, 5)]
    for a in pool[:trials]:
        t = best_t_energy(a).t
        p1, p2, b, c, l_bound = verify.hh_instance_from_cube(
            a, t, c3=opts["constants"]["c3"], grid_factor=opts["grid_factor"])
        yield verify.check_hh_trick(p1, p2, b, c, l_bound, tol=opts["tol"],
                                    grid_factor=opts["grid_factor"])


def suite_l1_bounds(rng, sets, trials, opts):
    for a in _default_sets(rng, sets, trials, max_half=8, bound=24):
        t = random_shift(rng, a)
        yield verify.check_l1_bound(
            a, t, cube_multiple=opts["constants"]["C_l1"],
            square_multiple=opts["constants"]["C_prime"],
            tol=opts["tol"], grid_factor=opts["grid_factor"])


def suite_q1q2(rng, sets, trials, opts):
    from .gridfn import q1_q2_decompose
    from .trigpoly import indicator, min_norm

    pool = sets or [sidon_difference_construction(m) for m in (3, 4, 5)]
    for a in pool[:trials]:
        t = best_t_energy(a).t
        cert = min_norm(indicator(a), grid_factor=opts["grid_factor"])
        _q1, _q2, report = q1_q2_decompose(
            a, t, cert.min_norm_upper, c2=opts["constants"]["c2"])
        yield report


def suite_x_bounds(rng, sets, trials, opts):
    pool = sets or [sidon_difference_construction(m) for m in (3, 4, 5)]
    for a in pool[:trials]:
        t = best_t_energy(a).t
        yield verify.check_x_bounds(
            a, t, opts["constants"]["c2"], c3=opts["constants"]["c3"],
            upper_const=opts["constants"]["C_a"],
            lower_const=opts["constants"]["C_b"],
            tol=opts["tol"], grid_factor=opts["grid_factor"])


def _random_general(rng: random.Random, k: int) -> verify.GeneralCosinePoly:
    starts = rng.sample(range(1, 30), k)
    supports = []
    used: set[int] = set()
    for s0 in starts:
        support = []
        while len(support) < 2:
            c = rng.randint(1, 40)
            if c not in used:
                used.add(c)
                support.append(c)
        supports.append(from_positive(support))
    values = [1.0] + [rng.uniform(1e-4, 9e-4) for _ in range(k - 1)]
    return verify.GeneralCosinePoly(tuple(zip(values, supports)))


def suite_general_ft(rng, sets, trials, opts):
    for _ in range(trials):
        fpoly = _random_general(rng, rng.randint(1, 3))
        t = rng.choice([1, 2, 3, -1, -2])
        _ft, _gt, report = verify.build_general_Ft(fpoly, t)
        yield report


def suite_general_cube(rng, sets, trials, opts):
    for _ in range(trials):
        fpoly = _random_general(rng, rng.randint(1, 2))
        t = rng.choice([1, 2, -1])
        yield verify.check_general_cube(
            fpoly, t, c3=opts["constants"]["c3"],
            tol=opts["tol"], grid_factor=opts["grid_factor"])


def suite_vandermonde(rng, sets, trials, opts):
    for _ in range(trials):
        k = rng.randint(1, 3)
        starts = rng.sample(range(1, 20), k)
        supports = []
        used: set[int] = set()
        for _s in starts:
            supp = []
            while len(supp) < 2:
                c = rng.randint(1, 30)
                if c not in used:
                    used.add(c)
                    supp.append(c)
            supports.append(from_positive(supp))
        values = [1.0]
        while len(values) < k:
            v = round(rng.uniform(0.1, 0.9), 3)
            if v not in values:
                values.append(v)
        fpoly = verify.GeneralCosinePoly(tuple(zip(values, supports)))
        yield verify.check_vandermonde_extraction(fpoly, tol=opts["tol"],
                                                  grid_factor=opts["grid_factor"])


def suite_holder(rng, sets, trials, opts):
    from .trigpoly import indicator, norms

    for a in _default_sets(rng, sets, trials, max_half=6, bound=24):
        l1 = norms(indicator(a), grid_factor=opts["grid_factor"]).l1
        yield verify.check_holder_energy(a, l1 * 1.001, tol=opts["tol"],
                                         grid_factor=opts["grid_factor"])


def suite_prime_t(rng, sets, trials, opts):
    from .oracle import prime_product_t_search
    from .reports import LemmaReport, SubCheck

    pool = sets or [from_positive(range(1, 1 + rng.randint(6, 20)))
                    for _ in range(trials)]
    for a in pool[:trials]:
        result = prime_product_t_search(a, m_param=3, orbit_cap=200,
                                        explore_depth=2)
        ok = all(step.ok or not step.r_le_l for step in result.trace)
        yield LemmaReport.build(
            lemma_id="prime_orbit_steps",
            inputs={"A": a.to_json(), "M": 3},
            checks=[SubCheck("all_steps", 0.0, 0.0, 0.0, ok, exact=True)],
            provenance={"orbit": str(result.orbit_size),
                        "best_bt": str(result.bt_size)},
        )


SUITES: dict[str, Callable] = {
    "min-to-l1": suite_min_to_l1,
    "conv-min": suite_conv_min,
    "conv-product": suite_kconv,
    "roth": suite_roth,
    "ruzsa": suite_ruzsa,
    "ap-bound": suite_ap_bound,
    "ft-gt": suite_ft_gt,
    "cube": suite_cube,
    "bt-lower": suite_bt_lower,
    "hh-trick": suite_hh_trick,
    "l1-bounds": suite_l1_bounds,
    "q1q2": suite_q1q2,
    "x-bounds": suite_x_bounds,
    "general-ft": suite_general_ft,
    "general-cube": suite_general_cube,
    "vandermonde": suite_vandermonde,
    "holder": suite_holder,
    "prime-t": suite_prime_t,
}

# aliases matching the numbering users know the checks by
SUITE_ALIASES: dict[str, tuple[str, ...]] = {
    "lemma3.2": ("min-to-l1",),
    "lemma3.3": ("conv-min",),
    "lemma3.4": ("conv-product",),
    "lemma3": ("min-to-l1", "conv-min", "conv-product"),
    "lemma4.1": ("roth",),
    "lemma4.2": ("ruzsa",),
    "cor4.3": ("ap-bound",),
    "lemma4": ("roth", "ruzsa", "ap-bound"),
    "lemma5.1": ("ft-gt",),
    "prop5.2": ("cube",),
    "lemma5.3": ("bt-lower",),
    "prop5.4": ("hh-trick",),
    "lemma5.5": ("l1-bounds",),
    "lemma5": ("ft-gt", "cube", "bt-lower", "hh-trick", "l1-bounds"),
    "claim6.4": ("general-ft",),
    "claim6.5": ("general-cube",),
    "claim6.6": ("vandermonde",),
    "lemma6.7": ("holder",),
    "lemma6": ("general-ft", "general-cube", "vandermonde", "holder"),
    "lemma7.1": ("q1q2",),
    "sec7": ("q1q2", "x-bounds", "prime-t"),
    "claim7.4": ("prime-t",),
    "lemma7": ("q1q2", "x-bounds", "prime-t"),
    "all": tuple(SUITES),
}


def resolve_suites(names: Iterable[str]) -> list[str]:
    """Expand aliases into the canonical suite list, preserving order."""
    out: list[str] = []
    for name in names:
        name = name.strip()
        if name in SUITES:
            expanded: tuple[str, ...] = (name,)
        elif name in SUITE_ALIASES:
            expanded = SUITE_ALIASES[name]
        else:
            raise ChowlaLabError(f"unknown suite {name!r}")
        for item in expanded:
            if item not in out:
                out.append(item)
    return out


def run_suites(names, rng: random.Random, sets: list[SymSet], trials: int,
               opts: dict) -> Iterable[tuple[str, LemmaReport]]:
    """Yield (suite name, report) pairs for the resolved suites."""
    for name in resolve_suites(names):
        for report in SUITES[name](rng, list(sets), trials, opts):
            yield name, report
