"""Auxiliary relations on a finite poset.

A relation ``R`` here is a strengthening of the order: it must sit
inside <=, absorb <= on both sides (u <= x R y <= z implies u R z), and
relate the bottom element to everything when a bottom exists.  The
way-below relation is the canonical example and is computed from its
raw directed-subset definition so it can serve as an oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .bitset import ElementSet, iter_bits
from .errors import (
    AxiomViolation,
    BudgetExceeded,
    IndexOutOfRange,
    PosetMismatch,
    SeedViolatesOrder,
)
from .poset import (
    MAX_DIRECTED_UNIVERSE,
    Poset,
    _down_mask,
    _is_directed_mask,
    _supremum_mask,
    bottom,
)


class AuxRelation:
    """A relation stored column-wise: sec[j] is the mask of {i : i R j}."""

    __slots__ = ("poset", "sec")

    def __init__(self, poset: Poset, sec: Iterable[int]):
        self.poset = poset
        self.sec = tuple(sec)
        if len(self.sec) != poset.n:
            raise PosetMismatch(
                f"{len(self.sec)} section rows for a poset of {poset.n}"
            )

    def pairs(self) -> list[tuple[int, int]]:
        out = [(i, j) for j in range(self.poset.n) for i in iter_bits(self.sec[j])]
        out.sort()
        return out

    def holds(self, i: int, j: int) -> bool:
        n = self.poset.n
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"pair ({i},{j}) outside universe of {n}")
        return self.sec[j] >> i & 1 == 1

    def __eq__(self, other):
        return (
            isinstance(other, AuxRelation)
            and self.poset == other.poset
            and self.sec == other.sec
        )

    def __hash__(self):
        return hash((self.poset.up, self.sec))

    def __repr__(self):
        return f"AuxRelation(pairs={self.pairs()})"


def _check_same_poset(r1: AuxRelation, r2: AuxRelation) -> None:
    if r1.poset != r2.poset:
        raise PosetMismatch("relations live on different posets")


# -- validation and builtins ----------------------------------------------


def _axiom_check_aux(p: Poset, sec: tuple[int, ...]) -> None:
    for j in range(p.n):
        outside = sec[j] & ~p.down[j]
        if outside:
            i = (outside & -outside).bit_length() - 1
            raise AxiomViolation("aux-1", (i, j))
    for z in range(p.n):
        required = 0
        for y in iter_bits(p.down[z]):
            required |= _down_mask(p, sec[y])
        missing = required & ~sec[z]
        if missing:
            u = (missing & -missing).bit_length() - 1
            raise AxiomViolation("aux-2", (u, z))
    bot = bottom(p)
    if bot is not None:
        for x in range(p.n):
            if not sec[x] >> bot & 1:
                raise AxiomViolation("aux-3", (bot, x))


def validate_aux(p: Poset, pairs: Iterable[tuple[int, int]]) -> AuxRelation:
    """Check the three axioms and return the relation, or raise."""
    sec = [0] * p.n
    for i, j in pairs:
        if not (0 <= i < p.n and 0 <= j < p.n):
            raise IndexOutOfRange(f"pair ({i},{j}) outside universe of {p.n}")
        sec[j] |= 1 << i
    sec_t = tuple(sec)
    _axiom_check_aux(p, sec_t)
    return AuxRelation(p, sec_t)


def leq_aux(p: Poset) -> AuxRelation:
    """The order itself, the top of the lattice of auxiliary relations."""
    return AuxRelation(p, p.down)


def bottom_aux(p: Poset) -> AuxRelation:
    """The least auxiliary relation: bottom-to-everything, or empty."""
    bot = bottom(p)
    if bot is None:
        return AuxRelation(p, (0,) * p.n)
    return AuxRelation(p, (1 << bot,) * p.n)


def aux_closure(p: Poset, seed_pairs: Iterable[tuple[int, int]]) -> AuxRelation:
    """Least auxiliary relation containing the seed pairs.

    Every seed pair must already lie within the order.  One saturation
    pass suffices because <= is transitive.
    """
    seed = [0] * p.n
    for i, j in seed_pairs:
        if not (0 <= i < p.n and 0 <= j < p.n):
            raise IndexOutOfRange(f"pair ({i},{j}) outside universe of {p.n}")
        if not p.up[i] >> j & 1:
            raise SeedViolatesOrder((i, j))
        seed[j] |= 1 << i
    bot = bottom(p)
    if bot is not None:
        for x in range(p.n):
            seed[x] |= 1 << bot
    down_of_seed = [_down_mask(p, seed[y]) for y in range(p.n)]
    sec = []
    for z in range(p.n):
        acc = 0
        for y in iter_bits(p.down[z]):
            acc |= down_of_seed[y]
        sec.append(acc)
    out = AuxRelation(p, sec)
    _axiom_check_aux(p, out.sec)
    return out


# -- way-below ------------------------------------------------------------


@lru_cache(maxsize=2048)
def _way_below_rows(p: Poset) -> tuple[int, ...]:
    full = (1 << p.n) - 1
    rows = [full] * p.n
    for mask in range(1, 1 << p.n):
        if not _is_directed_mask(p, mask):
            continue
        s = _supremum_mask(p, mask)
        if s is None:
            continue
        down_d = _down_mask(p, mask)
        for y in iter_bits(p.down[s]):
            rows[y] &= down_d
    return tuple(rows)


def way_below(p: Poset, budget: int | None = None) -> AuxRelation:
    """x way-below y: every directed set with a supremum >= y reaches x.

    Computed literally from the definition by enumerating directed
    subsets, so this is deliberately the slow reference path.
    """
    if p.n > MAX_DIRECTED_UNIVERSE:
        raise BudgetExceeded(f"universe of {p.n} exceeds {MAX_DIRECTED_UNIVERSE}")
    if budget is not None and (1 << p.n) > budget:
        raise BudgetExceeded(f"2^{p.n} candidate subsets exceed budget {budget}")
    return AuxRelation(p, _way_below_rows(p))


# -- sections and classification -------------------------------------------


def section_below(r: AuxRelation, x: int) -> ElementSet:
    """Everything related up into x."""
    if not 0 <= x < r.poset.n:
        raise IndexOutOfRange(f"element {x} outside universe of {r.poset.n}")
    return ElementSet(r.sec[x], r.poset.n)


def section_above(r: AuxRelation, x: int) -> ElementSet:
    """Everything x is related up into (an upper set by the axioms)."""
    p = r.poset
    if not 0 <= x < p.n:
        raise IndexOutOfRange(f"element {x} outside universe of {p.n}")
    mask = 0
    for y in range(p.n):
        if r.sec[y] >> x & 1:
            mask |= 1 << y
    return ElementSet(mask, p.n)


@dataclass(frozen=True)
class AuxClass:
    """Classification flags with witnesses for the failed ones."""

    pre_approximating: bool
    approximating: bool
    has_int: bool
    witnesses: dict = field(default_factory=dict)


def classify(r: AuxRelation) -> AuxClass:
    """Directedness of sections, join-back, and interpolation."""
    p = r.poset
    witnesses: dict = {}
    pre = True
    for x in range(p.n):
        if not _is_directed_mask(p, r.sec[x]):
            pre = False
            witnesses["pre_approximating"] = x
            break
    app = pre
    if pre:
        for x in range(p.n):
            if _supremum_mask(p, r.sec[x]) != x:
                app = False
                witnesses["approximating"] = x
                break
    above = [0] * p.n
    for y in range(p.n):
        for i in iter_bits(r.sec[y]):
            above[i] |= 1 << y
    has_int = True
    for z in range(p.n):
        for x in iter_bits(r.sec[z]):
            if not above[x] & r.sec[z]:
                has_int = False
                witnesses["has_int"] = (x, z)
                break
        if not has_int:
            break
    return AuxClass(pre, app, has_int, witnesses)


# -- lattice structure ------------------------------------------------------


def aux_union(r1: AuxRelation, r2: AuxRelation) -> AuxRelation:
    _check_same_poset(r1, r2)
    sec = tuple(a | b for a, b in zip(r1.sec, r2.sec))
    _axiom_check_aux(r1.poset, sec)
    return AuxRelation(r1.poset, sec)


def aux_intersection(r1: AuxRelation, r2: AuxRelation) -> AuxRelation:
    _check_same_poset(r1, r2)
    sec = tuple(a & b for a, b in zip(r1.sec, r2.sec))
    _axiom_check_aux(r1.poset, sec)
    return AuxRelation(r1.poset, sec)


def aux_subset(r1: AuxRelation, r2: AuxRelation) -> bool:
    _check_same_poset(r1, r2)
    return all(a & ~b == 0 for a, b in zip(r1.sec, r2.sec))


def _leq_pairs(p: Poset) -> list[tuple[int, int]]:
    return [(i, j) for i in range(p.n) for j in iter_bits(p.up[i])]


def _is_aux_sec(p: Poset, sec: list[int], bot: int | None) -> bool:
    for j in range(p.n):
        if sec[j] & ~p.down[j]:
            return False
    for z in range(p.n):
        required = 0
        for y in iter_bits(p.down[z]):
            required |= _down_mask(p, sec[y])
        if required & ~sec[z]:
            return False
    if bot is not None:
        for x in range(p.n):
            if not sec[x] >> bot & 1:
                return False
    return True


def enumerate_aux(p: Poset, budget: int | None = None) -> Iterator[AuxRelation]:
    """Every auxiliary relation, ascending by pair-subset encoding.

    Candidates are the subsets of the order pairs; a subset is kept
    exactly when it satisfies the axioms, so each relation appears once.
    """
    pairs = _leq_pairs(p)
    if len(pairs) > 16:
        raise BudgetExceeded(f"{len(pairs)} order pairs is beyond the subset sweep")
    bot = bottom(p)
    emitted = 0
    for mask in range(1 << len(pairs)):
        sec = [0] * p.n
        for b in range(len(pairs)):
            if mask >> b & 1:
                i, j = pairs[b]
                sec[j] |= 1 << i
        if not _is_aux_sec(p, sec, bot):
            continue
        emitted += 1
        if budget is not None and emitted > budget:
            raise BudgetExceeded(f"more than {budget} auxiliary relations")
        yield AuxRelation(p, tuple(sec))


def sample_aux(p: Poset, seed: int, density: float = 0.3) -> AuxRelation:
    """Closure of a pseudo-random subset of the order pairs."""
    rng = random.Random(seed)
    chosen = [pair for pair in _leq_pairs(p) if rng.random() < density]
    return aux_closure(p, chosen)
