"""Exact arithmetic on finite integer sets and the derived sets used throughout.

All sets are immutable, stored as sorted tuples of Python ints, and every
operation here is exact integer arithmetic.  The derived-set algebra (A_t,
B_t, C_t, D_t, E_t), arithmetic-progression partitions, additive energy and
Sidon constructions all live in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    ContainsZeroError,
    EmptySetError,
    NonPositiveElementError,
    NotSymmetricError,
    PreconditionViolatedError,
    ZeroShiftError,
)


class IntSet:
    """Immutable sorted set of distinct integers."""

    __slots__ = ("elements", "_members")

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(sorted(set(int(x) for x in elements)))
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_members", frozenset(elems))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError(f"{type(self).__name__} is immutable")

    # --- container protocol ---
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._members

    def __eq__(self, other) -> bool:
        return isinstance(other, IntSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.elements))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.elements)})"

    def __bool__(self) -> bool:
        return bool(self.elements)

    # --- set algebra (exact; results are plain IntSets) ---
    def __and__(self, other: "IntSet") -> "IntSet":
        return IntSet(self._members & other._members)

    def __or__(self, other: "IntSet") -> "IntSet":
        return IntSet(self._members | other._members)

    def __sub__(self, other: "IntSet") -> "IntSet":
        return IntSet(self._members - other._members)

    def __xor__(self, other: "IntSet") -> "IntSet":
        return IntSet(self._members ^ other._members)

    def __neg__(self) -> "IntSet":
        return IntSet(-x for x in self.elements)

    def shift(self, t: int) -> "IntSet":
        """Translate the set: {x + t}."""
        return IntSet(x + t for x in self.elements)

    def isdisjoint(self, other: "IntSet") -> bool:
        return self._members.isdisjoint(other._members)

    def issubset(self, other: "IntSet") -> bool:
        return self._members <= other._members

    # --- serialization ---
    def to_json(self) -> list[int]:
        return list(self.elements)

    @classmethod
    def from_json(cls, data: Iterable[int]) -> "IntSet":
        return cls(data)


class SymSet(IntSet):
    """Symmetric set A = -A of nonzero integers (the Fourier support)."""

    __slots__ = ()

    def __init__(self, elements: Iterable[int] = ()):
        super().__init__(elements)
        if 0 in self._members:
            raise ContainsZeroError("symmetric set must not contain 0")
        missing = [a for a in self.elements if -a not in self._members]
        if missing:
            raise NotSymmetricError(
                f"elements without mirror image: {missing[:8]}"
            )

    def __neg__(self) -> "SymSet":
        return self

    @property
    def positive(self) -> tuple[int, ...]:
        """The positive half of the set."""
        return tuple(a for a in self.elements if a > 0)

    @property
    def degree(self) -> int:
        return self.elements[-1] if self.elements else 0


def make_symset(raw: Iterable[int]) -> SymSet:
    """Validate a raw integer collection as a symmetric 0-free set."""
    return SymSet(raw)


def from_positive(positive: Iterable[int]) -> SymSet:
    """Build B u -B from a set of positive integers."""
    pos = sorted(set(int(b) for b in positive))
    if any(b <= 0 for b in pos):
        raise NonPositiveElementError(f"non-positive element in {pos[:8]}")
    return SymSet(pos + [-b for b in pos])


@dataclass(frozen=True)
class DerivedSets:
    """The five derived sets for a shift t, see :func:`derived_sets`."""

    a_t: IntSet
    b_t: IntSet
    c_t: IntSet
    d_t: IntSet
    e_t: IntSet

    def __iter__(self):
        return iter((self.a_t, self.b_t, self.c_t, self.d_t, self.e_t))


def derived_sets(a: SymSet, t: int) -> DerivedSets:
    """Compute A_t, B_t, C_t, D_t, E_t for the shift t.

    A_t = A n (A+t);  B_t = A_t \\ (-A_t);  C_t = (A+t) \\ (A u (A-t));
    D_t = A \\ (A_t symdiff -A_t);  E_t is the rest of the support of
    (A u (A+t) u (A-t)) not covered by +-B_t, +-C_t, D_t.

    The five sets B_t, -B_t, D_t, C_t, -C_t are pairwise disjoint; this is
    asserted on every call.
    """
    if t == 0:
        raise ZeroShiftError("t must be nonzero")
    a_plus = a.shift(t)
    a_minus = a.shift(-t)
    a_t = a & a_plus
    neg_a_t = -a_t
    b_t = a_t - neg_a_t
    c_t = a_plus - (a | a_minus)
    d_t = a - (a_t ^ neg_a_t)
    support = a | a_plus | a_minus
    e_t = support - (b_t | (-b_t) | c_t | (-c_t) | d_t)

    pieces = [b_t, -b_t, d_t, c_t, -c_t]
    total = sum(len(p) for p in pieces)
    union = IntSet(x for p in pieces for x in p)
    if len(union) != total:
        raise AssertionError(
            f"derived sets not pairwise disjoint for t={t}: {pieces}"
        )
    return DerivedSets(a_t, b_t, c_t, d_t, e_t)


@dataclass(frozen=True)
class ApPartition:
    """Partition of a set into maximal progressions of common difference t."""

    difference: int
    progressions: tuple[IntSet, ...]
    r: int = field(default=0)

    @property
    def covered(self) -> IntSet:
        return IntSet(x for p in self.progressions for x in p)


def ap_partition(a: IntSet, t: int) -> ApPartition:
    """Split ``a`` into the minimal number of APs with common difference t.

    Each progression P is maximal: (max P) + |t| and (min P) - |t| are not in
    ``a``.  ``r`` counts the progressions of size >= 2.
    """
    if t == 0:
        raise ZeroShiftError("t must be nonzero")
    step = abs(t)
    progressions = []
    members = a._members
    for x in a.elements:
        if x - step in members:
            continue  # not the start of a maximal progression
        run = [x]
        while run[-1] + step in members:
            run.append(run[-1] + step)
        progressions.append(IntSet(run))
    r = sum(1 for p in progressions if len(p) >= 2)
    return ApPartition(difference=t, progressions=tuple(progressions), r=r)


def longest_ap(a: IntSet) -> tuple[int, IntSet]:
    """Longest arithmetic progression (any difference d >= 1) inside ``a``.

    Dynamic programming over (endpoint, difference) pairs; O(|a|^2) states.
    Returns the length and one witness progression.
    """
    if len(a) == 0:
        raise EmptySetError("longest_ap of empty set")
    elems = a.elements
    n = len(elems)
    if n == 1:
        return 1, IntSet(elems)
    # best[(j, d)] = length of the longest AP with difference d ending at elems[j]
    best: dict[tuple[int, int], int] = {}
    best_len = 1
    best_end = (0, 1)
    index = {v: i for i, v in enumerate(elems)}
    for j in range(n):
        for i in range(j):
            d = elems[j] - elems[i]
            length = best.get((i, d), 1) + 1
            best[(j, d)] = length
            if length > best_len:
                best_len = length
                best_end = (j, d)
    j, d = best_end
    last = elems[j]
    witness = [last - k * d for k in range(best_len)][::-1]
    assert all(v in index for v in witness)
    return best_len, IntSet(witness)


def additive_energy(b: IntSet, a: IntSet) -> int:
    """Exact count of pairs (b1, b2) in B^2 with b1 - b2 in A."""
    count = 0
    members = b._members
    for t in a.elements:
        count += sum(1 for x in b.elements if x - t in members)
    return count


def quadruple_energy(a: IntSet) -> int:
    """Exact count of quadruples (x1,x2,x3,x4) in A^4 with x1-x2 = x3-x4."""
    reps: dict[int, int] = {}
    for x in a.elements:
        for y in a.elements:
            d = x - y
            reps[d] = reps.get(d, 0) + 1
    return sum(v * v for v in reps.values())


def shift_intersection_size(a: IntSet, t: int) -> int:
    """|A n (A + t)| without materializing the shifted set."""
    members = a._members
    return sum(1 for x in a.elements if x - t in members)


def is_sidon(b: Iterable[int]) -> bool:
    """True iff all nonzero pairwise differences of ``b`` are distinct."""
    elems = sorted(set(b))
    seen = set()
    for i, x in enumerate(elems):
        for y in elems[:i]:
            d = x - y
            if d in seen:
                return False
            seen.add(d)
    return True


def sidon_set(m: int) -> IntSet:
    """Greedy Sidon set of size m: start at 1, append the smallest integer
    that keeps all pairwise differences distinct."""
    if m < 1:
        raise EmptySetError("m must be >= 1")
    elems = [1]
    diffs: set[int] = set()
    candidate = 1
    while len(elems) < m:
        candidate += 1
        new_diffs = {candidate - x for x in elems}
        if len(new_diffs) == len(elems) and diffs.isdisjoint(new_diffs):
            diffs |= new_diffs
            elems.append(candidate)
    return IntSet(elems)


def sidon_difference_construction(m: int) -> SymSet:
    """The difference set (B - B) \\ {0} of the greedy Sidon set of size m.

    The Sidon property makes all m^2 - m nonzero differences distinct, so the
    result has size exactly m^2 - m and is symmetric.
    """
    if m < 2:
        raise EmptySetError("m must be >= 2")
    b = sidon_set(m)
    diffs = {x - y for x in b.elements for y in b.elements if x != y}
    result = SymSet(diffs)
    assert len(result) == m * m - m, (m, len(result))
    return result


def bt_lower_bound_check(a: SymSet, t: int, cap_length: int):
    """Exact check that |B_t| >= |A_t| / L, where L bounds every AP in ``a``.

    Raises PreconditionViolatedError when ``a`` contains an AP longer than
    ``cap_length``.  Returns a LemmaReport with exact integer sides.
    """
    from .reports import LemmaReport, SubCheck  # local import to avoid a cycle

    if t == 0:
        raise ZeroShiftError("t must be nonzero")
    if cap_length < 1:
        raise PreconditionViolatedError("cap_length must be >= 1")
    if len(a) > 0:
        actual, witness = longest_ap(a)
        if actual > cap_length:
            raise PreconditionViolatedError(
                f"AP of length {actual} > L={cap_length} found: {witness}"
            )
    d = derived_sets(a, t)
    lhs = len(d.b_t)
    rhs = len(d.a_t) / cap_length
    ok = lhs * cap_length >= len(d.a_t)
    return LemmaReport.build(
        lemma_id="bt_lower_bound",
        inputs={"set": a.to_json(), "t": t, "L": cap_length},
        checks=[
            SubCheck(
                name="size_bound",
                lhs=float(lhs),
                rhs=rhs,
                tolerance=0.0,
                passed=ok,
                exact=True,
            )
        ],
        provenance={"sides": "exact integer set arithmetic"},
    )
