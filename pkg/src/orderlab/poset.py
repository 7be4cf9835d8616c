"""Finite posets on elements 0..n-1 with bit-row order matrices.

``up[i]`` is the mask of everything above ``i`` (inclusive), ``down[i]``
the mask of everything below.  Validation, order primitives, generators,
exhaustive enumeration, Hasse diagrams and JSON/DOT serialization all
live here.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator

from .bitset import ElementSet, iter_bits
from .errors import (
    AxiomViolation,
    BadParameters,
    BudgetExceeded,
    IndexOutOfRange,
    PosetMismatch,
)

MAX_UNIVERSE = 24
MAX_DIRECTED_UNIVERSE = 20
MAX_LABELED_ENUM = 5
MAX_ISO_ENUM = 6


class Poset:
    """Immutable finite poset; equality and hashing use the order matrix only."""

    __slots__ = ("n", "up", "down", "labels")

    def __init__(self, up: Iterable[int], labels: Iterable[str] | None = None):
        rows = tuple(up)
        n = len(rows)
        down = [0] * n
        for i in range(n):
            for j in iter_bits(rows[i]):
                down[j] |= 1 << i
        self.n = n
        self.up = rows
        self.down = tuple(down)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise BadParameters(f"{len(self.labels)} labels for {n} elements")

    def leq(self, i: int, j: int) -> bool:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexOutOfRange(f"pair ({i},{j}) outside universe of {self.n}")
        return self.up[i] >> j & 1 == 1

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def subset(self, *indices: int) -> ElementSet:
        return ElementSet.from_indices(self.n, indices)

    def empty_set(self) -> ElementSet:
        return ElementSet.empty(self.n)

    def full_set(self) -> ElementSet:
        return ElementSet.full(self.n)

    def parse_subset(self, text: str) -> ElementSet:
        return ElementSet.parse(self.n, text)

    def __eq__(self, other):
        return isinstance(other, Poset) and self.up == other.up

    def __hash__(self):
        return hash(self.up)

    def __repr__(self):
        return f"Poset(n={self.n}, covers={hasse(self)})"


# -- validation ---------------------------------------------------------


def _axiom_check(rows: list[int] | tuple[int, ...], n: int) -> None:
    """Raise AxiomViolation unless rows form a partial order."""
    for i in range(n):
        if not rows[i] >> i & 1:
            raise AxiomViolation("reflexivity", (i, i))
    for i in range(n):
        for j in iter_bits(rows[i]):
            if j != i and rows[j] >> i & 1:
                raise AxiomViolation("antisymmetry", (min(i, j), max(i, j)))
    for i in range(n):
        reach = 0
        for j in iter_bits(rows[i]):
            reach |= rows[j]
        missing = reach & ~rows[i]
        if missing:
            k = (missing & -missing).bit_length() - 1
            raise AxiomViolation("transitivity", (i, k))


def _transitive_close(rows: list[int], n: int) -> list[int]:
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return rows


def from_rows(
    rows: Iterable[int],
    labels: Iterable[str] | None = None,
    *,
    check: bool = True,
) -> Poset:
    """Build a poset from up-rows, validating the order axioms.

    No universe-size cap is applied here; ``validate_poset`` is the
    capped public entry point for external input.
    """
    rows = tuple(rows)
    if check:
        _axiom_check(rows, len(rows))
    return Poset(rows, labels)


def validate_poset(
    n: int,
    pairs: Iterable[tuple[int, int]],
    mode: str = "full-order",
    labels: Iterable[str] | None = None,
) -> Poset:
    """Check the order axioms and return the poset, or raise.

    mode "full-order" expects the complete relation including the
    diagonal; mode "covers" expects cover pairs and closes them
    reflexively and transitively before checking antisymmetry.
    """
    if not 1 <= n <= MAX_UNIVERSE:
        raise BadParameters(f"n={n} outside 1..{MAX_UNIVERSE}")
    if mode not in ("full-order", "covers"):
        raise BadParameters(f"unknown mode {mode!r}")
    rows = [0] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"pair ({i},{j}) outside universe of {n}")
        rows[i] |= 1 << j
    if mode == "covers":
        for i in range(n):
            rows[i] |= 1 << i
        _transitive_close(rows, n)
    _axiom_check(rows, n)
    return Poset(rows, labels)


# -- order primitives ---------------------------------------------------


def _up_mask(p: Poset, bits: int) -> int:
    out = 0
    for i in iter_bits(bits):
        out |= p.up[i]
    return out


def _down_mask(p: Poset, bits: int) -> int:
    out = 0
    for i in iter_bits(bits):
        out |= p.down[i]
    return out


def _check_universe(p: Poset, s: ElementSet) -> None:
    if s.n != p.n:
        raise PosetMismatch(f"set over universe {s.n}, poset has {p.n}")


def up_closure(p: Poset, s: ElementSet) -> ElementSet:
    """Everything above some member of s."""
    _check_universe(p, s)
    return ElementSet(_up_mask(p, s.bits), p.n)


def down_closure(p: Poset, s: ElementSet) -> ElementSet:
    """Everything below some member of s."""
    _check_universe(p, s)
    return ElementSet(_down_mask(p, s.bits), p.n)


def is_upper(p: Poset, s: ElementSet) -> bool:
    _check_universe(p, s)
    return _is_upper_mask(p, s.bits)


def is_lower(p: Poset, s: ElementSet) -> bool:
    _check_universe(p, s)
    return _is_lower_mask(p, s.bits)


def _is_upper_mask(p: Poset, bits: int) -> bool:
    for i in iter_bits(bits):
        if p.up[i] & ~bits:
            return False
    return True


def _is_lower_mask(p: Poset, bits: int) -> bool:
    for i in iter_bits(bits):
        if p.down[i] & ~bits:
            return False
    return True


def _is_directed_mask(p: Poset, bits: int) -> bool:
    if not bits:
        return False
    members = list(iter_bits(bits))
    for a in range(len(members)):
        ua = p.up[members[a]]
        for b in range(a + 1, len(members)):
            if not ua & p.up[members[b]] & bits:
                return False
    return True


def _is_filtered_mask(p: Poset, bits: int) -> bool:
    if not bits:
        return False
    members = list(iter_bits(bits))
    for a in range(len(members)):
        da = p.down[members[a]]
        for b in range(a + 1, len(members)):
            if not da & p.down[members[b]] & bits:
                return False
    return True


def is_directed(p: Poset, s: ElementSet) -> bool:
    """Nonempty, and every pair has an upper bound inside the set."""
    _check_universe(p, s)
    return _is_directed_mask(p, s.bits)


def is_filtered(p: Poset, s: ElementSet) -> bool:
    """Nonempty, and every pair has a lower bound inside the set."""
    _check_universe(p, s)
    return _is_filtered_mask(p, s.bits)


def _supremum_mask(p: Poset, bits: int) -> int | None:
    if not bits:
        return None
    ub = (1 << p.n) - 1
    for i in iter_bits(bits):
        ub &= p.up[i]
    for m in iter_bits(ub):
        if ub & ~p.up[m] == 0:
            return m
    return None


def _infimum_mask(p: Poset, bits: int) -> int | None:
    if not bits:
        return None
    lb = (1 << p.n) - 1
    for i in iter_bits(bits):
        lb &= p.down[i]
    for m in iter_bits(lb):
        if lb & ~p.down[m] == 0:
            return m
    return None


def supremum(p: Poset, s: ElementSet) -> int | None:
    """Least upper bound, or None when it does not exist (including s = {})."""
    _check_universe(p, s)
    return _supremum_mask(p, s.bits)


def infimum(p: Poset, s: ElementSet) -> int | None:
    _check_universe(p, s)
    return _infimum_mask(p, s.bits)


def bottom(p: Poset) -> int | None:
    full = (1 << p.n) - 1
    for i in range(p.n):
        if p.up[i] == full:
            return i
    return None


def top(p: Poset) -> int | None:
    full = (1 << p.n) - 1
    for i in range(p.n):
        if p.down[i] == full:
            return i
    return None


# -- enumerations -------------------------------------------------------


def enumerate_upper_sets(p: Poset, budget: int | None = None) -> Iterator[ElementSet]:
    """All upper sets, ascending by bit value. Includes the empty set."""
    if p.n > MAX_UNIVERSE:
        raise BudgetExceeded(f"universe of {p.n} exceeds {MAX_UNIVERSE}")
    emitted = 0
    for mask in range(1 << p.n):
        if _is_upper_mask(p, mask):
            emitted += 1
            if budget is not None and emitted > budget:
                raise BudgetExceeded(f"more than {budget} upper sets")
            yield ElementSet(mask, p.n)


def enumerate_lower_sets(p: Poset, budget: int | None = None) -> Iterator[ElementSet]:
    """All lower sets, ascending by bit value. Includes the empty set."""
    if p.n > MAX_UNIVERSE:
        raise BudgetExceeded(f"universe of {p.n} exceeds {MAX_UNIVERSE}")
    emitted = 0
    for mask in range(1 << p.n):
        if _is_lower_mask(p, mask):
            emitted += 1
            if budget is not None and emitted > budget:
                raise BudgetExceeded(f"more than {budget} lower sets")
            yield ElementSet(mask, p.n)


def enumerate_directed_subsets(
    p: Poset, budget: int | None = None
) -> Iterator[ElementSet]:
    """All nonempty directed subsets, ascending by bit value."""
    if p.n > MAX_DIRECTED_UNIVERSE:
        raise BudgetExceeded(f"universe of {p.n} exceeds {MAX_DIRECTED_UNIVERSE}")
    emitted = 0
    for mask in range(1, 1 << p.n):
        if _is_directed_mask(p, mask):
            emitted += 1
            if budget is not None and emitted > budget:
                raise BudgetExceeded(f"more than {budget} directed subsets")
            yield ElementSet(mask, p.n)


# -- generators ---------------------------------------------------------


@dataclass(frozen=True)
class PosetKind:
    """Parameter record for ``generate``."""

    tag: str
    n: int | None = None
    k: int | None = None
    seed: int | None = None
    p: float | None = None
    pairs: tuple[tuple[int, int], ...] | None = None
    mode: str = "covers"


def chain(n: int) -> Poset:
    return generate(PosetKind("chain", n=n))


def antichain(n: int) -> Poset:
    return generate(PosetKind("antichain", n=n))


def diamond() -> Poset:
    return generate(PosetKind("diamond"))


def boolean(k: int) -> Poset:
    return generate(PosetKind("boolean", k=k))


def random_poset(n: int, p: float, seed: int) -> Poset:
    return generate(PosetKind("random", n=n, p=p, seed=seed))


def generate(kind: PosetKind) -> Poset:
    """Build one of the stock posets; raises BadParameters out of bounds."""
    tag = kind.tag
    if tag in ("chain", "antichain"):
        n = kind.n
        if n is None or not 1 <= n <= MAX_UNIVERSE:
            raise BadParameters(f"{tag} needs 1 <= n <= {MAX_UNIVERSE}, got {n}")
        if tag == "chain":
            rows = [((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)]
        else:
            rows = [1 << i for i in range(n)]
        return Poset(rows)
    if tag == "diamond":
        # 0 below 1 and 2 (incomparable), both below 3
        return Poset((0b1111, 0b1010, 0b1100, 0b1000))
    if tag == "boolean":
        k = kind.k
        if k is None or not 0 <= k <= 5:
            raise BadParameters(f"boolean needs 0 <= k <= 5, got {k}")
        n = 1 << k
        if n > MAX_UNIVERSE:
            raise BadParameters(f"boolean k={k} yields n={n} > {MAX_UNIVERSE}")
        rows = []
        for i in range(n):
            row = 0
            for j in range(n):
                if i & j == i:
                    row |= 1 << j
            rows.append(row)
        labels = ["{" + ",".join(str(b) for b in iter_bits(i)) + "}" for i in range(n)]
        return Poset(rows, labels)
    if tag == "random":
        n, p_edge, seed = kind.n, kind.p, kind.seed
        if n is None or not 1 <= n <= MAX_UNIVERSE:
            raise BadParameters(f"random needs 1 <= n <= {MAX_UNIVERSE}, got {n}")
        if p_edge is None or not 0.0 <= p_edge <= 1.0:
            raise BadParameters(f"random needs 0 <= p <= 1, got {p_edge}")
        if seed is None:
            raise BadParameters("random needs a seed")
        rng = random.Random(seed)
        rows = [1 << i for i in range(n)]
        # edges only from lower to higher index, so antisymmetry is free
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p_edge:
                    rows[i] |= 1 << j
        _transitive_close(rows, n)
        return Poset(rows)
    if tag == "explicit":
        if kind.n is None or kind.pairs is None:
            raise BadParameters("explicit needs n and pairs")
        return validate_poset(kind.n, kind.pairs, kind.mode)
    raise BadParameters(f"unknown poset kind {tag!r}")


# -- exhaustive enumeration ----------------------------------------------


def _natural_row_sets(n: int) -> list[tuple[int, ...]]:
    """All posets whose order is compatible with the index order."""
    tri = [(i, j) for i in range(n - 1) for j in range(i + 1, n)]
    out = []
    for mask in range(1 << len(tri)):
        rows = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(tri):
            if mask >> b & 1:
                rows[i] |= 1 << j
        ok = True
        for i in range(n):
            reach = 0
            for j in iter_bits(rows[i]):
                reach |= rows[j]
            if reach & ~rows[i]:
                ok = False
                break
        if ok:
            out.append(tuple(rows))
    return out


def _relabel(rows: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    n = len(rows)
    new = [0] * n
    for i in range(n):
        r = 0
        for j in iter_bits(rows[i]):
            r |= 1 << perm[j]
        new[perm[i]] = r
    return tuple(new)


def canonical_form(p: Poset) -> tuple[int, ...]:
    """Lexicographically minimal row tuple over all relabelings."""
    best = None
    for perm in permutations(range(p.n)):
        cand = _relabel(p.up, perm)
        if best is None or cand < best:
            best = cand
    return best


def enumerate_posets(
    n: int, up_to_iso: bool = False, budget: int | None = None
) -> Iterator[Poset]:
    """All posets on n elements, ascending by row tuple.

    Labeled mode emits every order matrix; iso mode emits one canonical
    representative per isomorphism class.
    """
    cap = MAX_ISO_ENUM if up_to_iso else MAX_LABELED_ENUM
    if not 1 <= n <= cap:
        raise BadParameters(f"n={n} outside 1..{cap} for this mode")
    naturals = _natural_row_sets(n)
    perms = list(permutations(range(n)))
    seen: set[tuple[int, ...]] = set()
    if up_to_iso:
        for rows in naturals:
            best = min(_relabel(rows, perm) for perm in perms)
            seen.add(best)
    else:
        for rows in naturals:
            for perm in perms:
                seen.add(_relabel(rows, perm))
    emitted = 0
    for rows in sorted(seen):
        emitted += 1
        if budget is not None and emitted > budget:
            raise BudgetExceeded(f"more than {budget} posets at n={n}")
        yield Poset(rows)


# -- Hasse diagram and serialization --------------------------------------


def hasse(p: Poset) -> list[tuple[int, int]]:
    """Cover pairs (i, j) with i strictly below j and nothing in between."""
    covers = []
    for i in range(p.n):
        strict_up = p.up[i] & ~(1 << i)
        for j in iter_bits(strict_up):
            strict_down_j = p.down[j] & ~(1 << j)
            if strict_up & strict_down_j == 0:
                covers.append((i, j))
    covers.sort()
    return covers


def export_dot(p: Poset, shade: ElementSet | None = None, name: str = "poset") -> str:
    """Render the Hasse diagram as DOT with edges pointing upward."""
    if shade is not None:
        _check_universe(p, shade)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(p.n):
        attrs = [f'label="{p.label(i)}"']
        if shade is not None and i in shade:
            attrs.append("style=filled")
            attrs.append("fillcolor=lightblue")
        lines.append(f"  {i} [{' '.join(attrs)}];")
    for i, j in hasse(p):
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_json(p: Poset) -> dict:
    """JSON-ready dict in the cover-pair file format."""
    doc: dict = {
        "n": p.n,
        "relation": {"mode": "covers", "pairs": [list(c) for c in hasse(p)]},
    }
    if p.labels is not None:
        doc["labels"] = list(p.labels)
    return doc


def poset_from_json(doc: dict) -> Poset:
    """Parse and validate the poset file format."""
    if not isinstance(doc, dict):
        raise BadParameters("poset document must be a JSON object")
    try:
        n = doc["n"]
        relation = doc["relation"]
        mode = relation["mode"]
        pairs = [tuple(pair) for pair in relation["pairs"]]
    except (KeyError, TypeError) as exc:
        raise BadParameters(f"malformed poset document: {exc}") from exc
    if not isinstance(n, int):
        raise BadParameters("n must be an integer")
    labels = doc.get("labels")
    for pair in pairs:
        if len(pair) != 2 or not all(isinstance(x, int) for x in pair):
            raise BadParameters(f"malformed pair {pair!r}")
    return validate_poset(n, pairs, mode, labels)


def load_poset(path: str) -> Poset:
    with open(path, "r", encoding="utf-8") as fh:
        return poset_from_json(json.load(fh))


def dump_poset(p: Poset, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(poset_to_json(p), fh, indent=2, sort_keys=True)
        fh.write("\n")
