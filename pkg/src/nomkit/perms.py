"""Finite permutations of atoms, the shift-extended group, and restriction.

FinPerm stores a sort-preserving bijection with finite nontrivial part as
disjoint cycles in canonical form: no length-1 cycles, each cycle rotated to
start at its least atom, cycles sorted by leading atom.  Canonical form makes
structural equality coincide with functional equality.

GenPerm pairs a FinPerm with a power of the fixed shift bijection on sort-0
atoms; (fin, k) denotes fin composed after shift^k.  The normal form is
unique because no nonzero shift power has a finite nontrivial part.

restrict(p, region) computes the least permutation (under restriction_leq)
that agrees with p and its inverse on the region.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .atoms import Atom, Zone, down, up
from .errors import SortError, UndecidableError


def _canonical_cycles(mapping: Mapping[Atom, Atom]) -> tuple[tuple[Atom, ...], ...]:
    for a, b in mapping.items():
        if a.sort != b.sort:
            raise SortError(f"permutation moves {a} across sorts to {b}")
    if set(mapping.keys()) != set(mapping.values()):
        raise ValueError("mapping is not a bijection on its domain")
    cycles = []
    seen: set[Atom] = set()
    for a in sorted(mapping):
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        b = mapping[a]
        while b != a:
            cyc.append(b)
            seen.add(b)
            b = mapping[b]
        if len(cyc) > 1:
            least = cyc.index(min(cyc))
            cycles.append(tuple(cyc[least:] + cyc[:least]))
    cycles.sort(key=lambda c: c[0])
    return tuple(cycles)


@dataclass(frozen=True)
class FinPerm:
    cycles: tuple[tuple[Atom, ...], ...] = ()

    def __post_init__(self):
        seen: set[Atom] = set()
        for cyc in self.cycles:
            if len(cyc) < 2:
                raise ValueError("length-1 cycles are not canonical")
            if min(cyc) != cyc[0]:
                raise ValueError("cycle must start at its least atom")
            if len({a.sort for a in cyc}) != 1:
                raise SortError("cycle mixes sorts")
            if seen & set(cyc):
                raise ValueError("cycles are not disjoint")
            seen |= set(cyc)
        if tuple(sorted(self.cycles, key=lambda c: c[0])) != self.cycles:
            raise ValueError("cycles must be sorted by leading atom")

    @cached_property
    def _map(self) -> dict[Atom, Atom]:
        m: dict[Atom, Atom] = {}
        for cyc in self.cycles:
            for i, a in enumerate(cyc):
                m[a] = cyc[(i + 1) % len(cyc)]
        return m

    def __call__(self, a: Atom) -> Atom:
        return self._map.get(a, a)

    def moved(self) -> frozenset[Atom]:
        return frozenset(self._map)

    def is_identity(self) -> bool:
        return not self.cycles

    def inverse(self) -> "FinPerm":
        return FinPerm(_canonical_cycles({b: a for a, b in self._map.items()}))

    def __str__(self) -> str:
        if not self.cycles:
            return "id"
        return "".join("(" + " ".join(str(a) for a in cyc) + ")" for cyc in self.cycles)

    __repr__ = __str__

    @staticmethod
    def from_mapping(mapping: Mapping[Atom, Atom]) -> "FinPerm":
        moved = {a: b for a, b in mapping.items() if a != b}
        return FinPerm(_canonical_cycles(moved))

    @staticmethod
    def from_cycles(cycles: Iterable[Iterable[Atom]]) -> "FinPerm":
        mapping: dict[Atom, Atom] = {}
        for cyc in cycles:
            cyc = list(cyc)
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated atom in cycle {cyc}")
            for i, a in enumerate(cyc):
                if a in mapping:
                    raise ValueError(f"atom {a} appears in two cycles")
                mapping[a] = cyc[(i + 1) % len(cyc)]
        return FinPerm.from_mapping(mapping)


FIN_ID = FinPerm()


def swap(a: Atom, b: Atom) -> FinPerm:
    if a.sort != b.sort:
        raise SortError("cross-sort swap")
    if a == b:
        raise ValueError("swap of an atom with itself; use the identity instead")
    return FinPerm.from_cycles([(a, b)])


def shift_apply(k: int, a: Atom) -> Atom:
    """Apply the k-th power of the fixed shift bijection.

    On sort 0: Down(n) -> Down(n+1); the chain ... Up(4) -> Up(2) -> Down(0)
    feeds the comb; Up(0) and odd Up atoms are fixed.  Other sorts are fixed.
    """
    if k == 0 or a.sort != 0:
        return a
    if a.zone == Zone.DOWN:
        n = a.index
        if k > 0:
            return down(0, n + k)
        j = -k
        return down(0, n - j) if n >= j else up(0, 2 * (j - n))
    if a.index == 0 or a.index % 2 == 1:
        return a
    m = a.index // 2
    if k > 0:
        return up(0, 2 * (m - k)) if k < m else down(0, k - m)
    return up(0, 2 * (m - k))


@dataclass(frozen=True)
class GenPerm:
    fin: FinPerm = FIN_ID
    shift: int = 0

    def __call__(self, a: Atom) -> Atom:
        return self.fin(shift_apply(self.shift, a))

    def is_identity(self) -> bool:
        return self.shift == 0 and self.fin.is_identity()

    def moved_finite(self) -> frozenset[Atom] | None:
        """The finite set of moved atoms, or None when it is infinite."""
        if self.shift != 0:
            return None
        return self.fin.moved()

    def __str__(self) -> str:
        if self.shift == 0:
            return str(self.fin)
        head = f"shift^{self.shift}"
        if self.fin.is_identity():
            return head
        return f"{head} * {self.fin}"

    __repr__ = __str__


GEN_ID = GenPerm()
SHIFT = GenPerm(FIN_ID, 1)


def as_gen(p: FinPerm | GenPerm) -> GenPerm:
    return p if isinstance(p, GenPerm) else GenPerm(p)


def _conjugate_by_shift(k: int, p: FinPerm) -> FinPerm:
    if k == 0 or p.is_identity():
        return p
    return FinPerm.from_mapping(
        {shift_apply(k, a): shift_apply(k, b) for a, b in p._map.items()}
    )


def compose(p: FinPerm | GenPerm, q: FinPerm | GenPerm) -> FinPerm | GenPerm:
    """Composition: apply(compose(p, q), a) == apply(p, apply(q, a))."""
    if isinstance(p, FinPerm) and isinstance(q, FinPerm):
        return FinPerm.from_mapping(
            {a: p(q(a)) for a in p.moved() | q.moved()}
        )
    gp, gq = as_gen(p), as_gen(q)
    fin = compose(gp.fin, _conjugate_by_shift(gp.shift, gq.fin))
    return GenPerm(fin, gp.shift + gq.shift)


def invert(p: FinPerm | GenPerm) -> FinPerm | GenPerm:
    if isinstance(p, FinPerm):
        return p.inverse()
    return GenPerm(_conjugate_by_shift(-p.shift, p.fin.inverse()), -p.shift)


def apply(p: FinPerm | GenPerm, a: Atom) -> Atom:
    return p(a)


# ---------------------------------------------------------------------------
# Atom regions: anything with decidable membership per atom.

def region_has(region, a: Atom) -> bool:
    if isinstance(region, (set, frozenset)):
        return a in region
    return region.member(a)


def region_is_finite(region) -> bool:
    if isinstance(region, (set, frozenset)):
        return True
    return region.is_finite()


# ---------------------------------------------------------------------------
# Restriction of a finite permutation to a region.

def restrict(p: FinPerm, region) -> FinPerm:
    """The least permutation agreeing with p and its inverse on the region.

    Per cycle, the forced edges are those into or out of a region atom; the
    maximal forced paths are closed into separate cycles and everything else
    is discarded.  This is the normal form of the elision/split rewrite
    system (see restrict_by_rewriting).
    """
    mapping: dict[Atom, Atom] = {}
    for cyc in p.cycles:
        n = len(cyc)
        in_s = [region_has(region, a) for a in cyc]
        if not any(in_s):
            continue
        forced: dict[Atom, Atom] = {}
        for i, a in enumerate(cyc):
            if in_s[i] or in_s[(i + 1) % n]:
                forced[a] = cyc[(i + 1) % n]
        targets = set(forced.values())
        starts = [a for a in forced if a not in targets]
        for start in starts:
            a = start
            while a in forced:
                b = forced.pop(a)
                mapping[a] = b
                a = b
            mapping[a] = start  # close the path
        # whatever remains in forced is a fully forced cycle
        mapping.update(forced)
    return FinPerm.from_mapping(mapping)


def _rewrite_moves(mapping: dict[Atom, Atom], region) -> list[tuple]:
    inv = {b: a for a, b in mapping.items()}
    outside = {a for a in mapping if not region_has(region, a)}
    moves: list[tuple] = []
    for x in mapping:
        if x in outside and mapping[x] in outside and inv[x] in outside:
            moves.append(("del", x))
    # unprotected edges x->y (both endpoints outside the region)
    free_edges = [(x, mapping[x]) for x in outside if mapping[x] in outside]
    for x, y in free_edges:
        a1, a4 = inv[x], mapping[y]
        if not (region_has(region, a1) and region_has(region, a4)):
            continue
        if len({a1, x, y, a4}) != 4:
            continue
        # second cut: any other unprotected edge in the same cycle
        w = mapping[y]
        while w != x:
            if w in outside and mapping[w] in outside and w != x:
                moves.append(("split", x, w))
            w = mapping[w]
    return moves


def restrict_by_rewriting(p: FinPerm, region, rng: random.Random) -> FinPerm:
    """Normalize p by the elision/split rewrite rules in a random order.

    Elision drops an atom whose whole neighbourhood lies outside the region;
    a split cuts the middle edge of an S..S quadruple together with one other
    unprotected edge of the same cycle.  Any schedule terminates in the same
    normal form, which equals restrict(p, region).
    """
    mapping = dict(p._map)
    while True:
        moves = _rewrite_moves(mapping, region)
        if not moves:
            break
        move = rng.choice(moves)
        if move[0] == "del":
            x = move[1]
            pred = {b: a for a, b in mapping.items()}[x]
            succ = mapping.pop(x)
            mapping[pred] = succ
            mapping = {a: b for a, b in mapping.items() if a != b}
        else:
            _, x, w = move
            mapping[x], mapping[w] = mapping[w], mapping[x]
    return FinPerm.from_mapping(mapping)


def restriction_leq(p_small: FinPerm, p_big: FinPerm, region) -> bool:
    """The ordering whose unique least element under p is restrict(p, region)."""
    probe = p_small.moved() | p_big.moved()
    for a in probe:
        if region_has(region, a) and p_small(a) != p_big(a):
            return False
    small_inv, big_inv = p_small.inverse(), p_big.inverse()
    for a in probe:
        if region_has(region, a) and small_inv(a) != big_inv(a):
            return False
    big_cycles = [set(c) for c in p_big.cycles]
    for cyc in p_small.cycles:
        atoms = set(cyc)
        if not any(atoms <= big for big in big_cycles):
            return False
    return True


def agree_on(p: FinPerm | GenPerm, q: FinPerm | GenPerm, region) -> bool:
    """Whether p and q agree pointwise on every atom of the region."""
    gp, gq = as_gen(p), as_gen(q)
    if region_is_finite(region):
        atoms = region if isinstance(region, (set, frozenset)) else region.finite_atoms()
        return all(gp(a) == gq(a) for a in atoms)
    if gp.shift != gq.shift:
        raise UndecidableError("undecidable agreement")
    k = gp.shift
    probe = gp.fin.moved() | gq.fin.moved()
    for a in probe:
        if region_has(region, shift_apply(-k, a)) and gp.fin(a) != gq.fin(a):
            return False
    return True
