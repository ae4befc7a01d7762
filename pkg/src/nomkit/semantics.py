"""Interpretations, term denotation, equation checking, support reduction.

An interpretation assigns orbit-finite carriers to base sorts, equivariant
functions (drawn from a closed combinator family) to term formers, and
elements to constants.  Name, tuple, and abstraction sorts embed through the
element constructors, so injectivity and equivariance hold by construction.

reduce_support wraps an interpretation so that every element is a list
abstraction; with the full base list and strict permission sets every
wrapped element has finite support, which is the executable content of the
finite-support transfer theorem.  Validity is only ever checked over
generated valuation families, and the verdict type says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .atoms import Atom, Zone
from .errors import FamilyCapError, SortError
from .lists import AtomList, ListMode, fresh_list
from .orbits import Carrier, Closure, find_transporter, perms_over
from .perms import FinPerm, GenPerm, as_gen
from .regions import COMB, subset_of
from .terms import (
    Signature,
    Sort,
    SortAbs,
    SortBase,
    SortName,
    SortTuple,
    Term,
    TermAbs,
    TermApp,
    TermAtm,
    TermConst,
    TermTup,
    TermUnk,
    free_unknowns,
    typecheck,
)
from .universe import (
    Abs,
    Atm,
    Element,
    Tup,
    act_elem,
    elem_eq,
    factor_common,
    listabs,
    support,
)


# ---------------------------------------------------------------------------
# Equivariant functions as a closed combinator family.

@dataclass(frozen=True)
class EqIdentity:
    pass


@dataclass(frozen=True)
class EqConst:
    value: Element

    def __post_init__(self):
        if not support(self.value).is_empty():
            raise SortError("constant combinator needs an empty-support value")


@dataclass(frozen=True)
class EqProj:
    index: int


@dataclass(frozen=True)
class EqCompose:
    outer: "EquivFn"
    inner: "EquivFn"


@dataclass(frozen=True)
class EqMkAbs:
    """Sends a pair (atom element, body) to the abstraction binding the atom."""


@dataclass(frozen=True)
class EqMkTuple:
    parts: tuple["EquivFn", ...]


@dataclass(frozen=True)
class EqTable:
    entries: tuple[tuple[Element, Element], ...]
    closure: Closure = Closure.FINITE


EquivFn = Union[EqIdentity, EqConst, EqProj, EqCompose, EqMkAbs, EqMkTuple, EqTable]


def apply_equiv(fn: EquivFn, x: Element) -> Element:
    match fn:
        case EqIdentity():
            return x
        case EqConst(v):
            return v
        case EqProj(i):
            if not isinstance(x, Tup) or i >= len(x.items):
                raise SortError(f"projection {i} of a non-tuple argument")
            return x.items[i]
        case EqCompose(outer, inner):
            return apply_equiv(outer, apply_equiv(inner, x))
        case EqMkAbs():
            if (
                not isinstance(x, Tup)
                or len(x.items) != 2
                or not isinstance(x.items[0], Atm)
            ):
                raise SortError("abstraction former expects an (atom, body) pair")
            return Abs(x.items[0].atom, x.items[1])
        case EqMkTuple(parts):
            return Tup(tuple(apply_equiv(f, x) for f in parts))
        case EqTable(entries, closure):
            for key, out in entries:
                p = find_transporter(key, x, closure)
                if p is not None:
                    return act_elem(p, out)
            raise SortError("element outside orbit-table domain")
    raise TypeError(f"not an equivariant combinator: {fn!r}")


def validate_table(fn: EqTable, pool: frozenset[Atom]) -> None:
    """Probe that the table respects the symmetries of its keys."""
    atoms = set(pool)
    for key, out in fn.entries:
        atoms |= support(key).perturbation_atoms() | support(out).perturbation_atoms()
    for p in perms_over(frozenset(atoms)):
        for key, out in fn.entries:
            moved = act_elem(p, key)
            for key2, out2 in fn.entries:
                if elem_eq(moved, key2) and not elem_eq(act_elem(p, out), out2):
                    raise SortError(
                        f"orbit table is not well-defined on probe {p}"
                    )


# ---------------------------------------------------------------------------
# Interpretations.

@dataclass(frozen=True)
class Interpretation:
    signature: Signature
    carriers: Mapping[str, Carrier] = field(default_factory=dict)
    formers: Mapping[str, EquivFn] = field(default_factory=dict)
    consts: Mapping[str, Element] = field(default_factory=dict)

    def __post_init__(self):
        for name, value in self.consts.items():
            pmss = self.signature.const_pmss(name)
            if not subset_of(support(value), pmss):
                raise SortError(
                    f"constant {name} has support {support(value)} outside its pmss {pmss}"
                )

    @property
    def mode(self) -> ListMode:
        return ListMode.FULL

    def embed_atom(self, a: Atom) -> Element:
        return Atm(a)

    def make_tuple(self, items: Sequence[Element]) -> Element:
        return Tup(tuple(items))

    def make_abs(self, a: Atom, body: Element) -> Element:
        return Abs(a, body)

    def apply_former(self, name: str, x: Element) -> Element:
        if name not in self.formers:
            raise SortError(f"former {name} has no interpretation")
        return apply_equiv(self.formers[name], x)

    def const_elem(self, name: str) -> Element:
        if name not in self.consts:
            raise SortError(f"constant {name} has no interpretation")
        return self.consts[name]

    def carrier(self, sort_name: str) -> Carrier:
        if sort_name not in self.carriers:
            raise SortError(f"base sort {sort_name} has no carrier")
        return self.carriers[sort_name]

    def default_elem(self, sort: Sort) -> Element:
        """The designated empty-support element unassigned unknowns take."""
        match sort:
            case SortBase(name):
                for g in self.carrier(name).generators:
                    if support(g).is_empty():
                        return g
                raise SortError(f"carrier of {name} has no empty-support element")
            case SortTuple(items):
                return Tup(tuple(self.default_elem(s) for s in items))
            case SortAbs(nu, body):
                return Abs(Atom(nu, Zone.DOWN, 0), self.default_elem(body))
            case _:
                raise SortError(f"no default element for sort {sort}")

    def relevant_atoms(self) -> frozenset[Atom]:
        atoms: set[Atom] = set()
        for value in self.consts.values():
            atoms |= support(value).perturbation_atoms()
        for car in self.carriers.values():
            for g in car.generators:
                atoms |= support(g).perturbation_atoms()
        for fn in self.formers.values():
            atoms |= _fn_atoms(fn)
        return frozenset(atoms)


def _fn_atoms(fn: EquivFn) -> set[Atom]:
    match fn:
        case EqConst(v):
            return set(support(v).perturbation_atoms())
        case EqCompose(outer, inner):
            return _fn_atoms(outer) | _fn_atoms(inner)
        case EqMkTuple(parts):
            out: set[Atom] = set()
            for f in parts:
                out |= _fn_atoms(f)
            return out
        case EqTable(entries, _):
            out = set()
            for key, value in entries:
                out |= set(support(key).perturbation_atoms())
                out |= set(support(value).perturbation_atoms())
            return out
        case _:
            return set()


@dataclass(frozen=True)
class ReducedInterpretation:
    """The wrapped interpretation whose elements are list abstractions."""

    inner: "AnyInterpretation"
    index: AtomList

    @property
    def signature(self) -> Signature:
        return self.inner.signature

    @property
    def mode(self) -> ListMode:
        return self.index.mode

    def _avoid(self, extra: Sequence[Element]) -> set[Atom]:
        atoms: set[Atom] = set()
        for y in extra:
            atoms |= set(support(y).finite_atoms())
        return atoms

    def embed_atom(self, a: Atom) -> Element:
        lst = fresh_list(self.mode, {a})
        return listabs(lst, self.inner.embed_atom(a))

    def make_tuple(self, items: Sequence[Element]) -> Element:
        lst, bodies = factor_common(list(items), mode=self.mode)
        return listabs(lst, self.inner.make_tuple(bodies))

    def make_abs(self, a: Atom, body: Element) -> Element:
        lst, (inner_body,) = factor_common([body], avoid={a}, mode=self.mode)
        return listabs(lst, self.inner.make_abs(a, inner_body))

    def apply_former(self, name: str, x: Element) -> Element:
        lst, (body,) = factor_common([x], mode=self.mode)
        return listabs(lst, self.inner.apply_former(name, body))

    def const_elem(self, name: str) -> Element:
        return listabs(self.index, self.inner.const_elem(name))

    def carrier(self, sort_name: str) -> Carrier:
        inner_car = self.inner.carrier(sort_name)
        wrapped = tuple(listabs(self.index, g) for g in inner_car.generators)
        return Carrier(wrapped, inner_car.closure)

    def default_elem(self, sort: Sort) -> Element:
        return listabs(self.index, self.inner.default_elem(sort))

    def relevant_atoms(self) -> frozenset[Atom]:
        return self.inner.relevant_atoms() | self.index.support().perturbation_atoms()


AnyInterpretation = Union[Interpretation, ReducedInterpretation]


def reduce_support(interp: AnyInterpretation, index: AtomList) -> ReducedInterpretation:
    return ReducedInterpretation(interp, index)


# ---------------------------------------------------------------------------
# Valuations.

@dataclass(frozen=True)
class Valuation:
    assignments: tuple[tuple[str, Element], ...] = ()

    @staticmethod
    def of(mapping: Mapping[str, Element]) -> "Valuation":
        return Valuation(tuple(sorted(mapping.items())))

    def get(self, name: str) -> Element | None:
        for key, value in self.assignments:
            if key == name:
                return value
        return None

    def set(self, name: str, value: Element) -> "Valuation":
        items = {k: v for k, v in self.assignments}
        items[name] = value
        return Valuation.of(items)

    def names(self) -> list[str]:
        return [k for k, _ in self.assignments]

    def values(self) -> list[Element]:
        return [v for _, v in self.assignments]

    def __str__(self) -> str:
        return ", ".join(f"{k}:={_show_elem_short(v)}" for k, v in self.assignments) or "(empty)"


def _show_elem_short(v: Element) -> str:
    from .syntax import show_element

    return show_element(v)


def valuation_supports_ok(val: Valuation, mode: str) -> bool:
    """Strict mode: supports inside the comb.  Extended mode: any support."""
    if mode == "extended":
        return True
    return all(subset_of(support(v), COMB) for v in val.values())


def lift_valuation(val: Valuation, lst: AtomList) -> Valuation:
    return Valuation.of({k: listabs(lst, v) for k, v in val.assignments})


def permute_valuation(p: FinPerm | GenPerm, val: Valuation) -> Valuation:
    g = as_gen(p)
    moved = g.moved_finite()
    if moved is None or any(a.zone != Zone.DOWN for a in moved):
        raise SortError("valuation permutation requires moved atoms inside the comb")
    return Valuation.of({k: act_elem(g, v) for k, v in val.assignments})


# ---------------------------------------------------------------------------
# Denotation.

def denote(interp: AnyInterpretation, val: Valuation, r: Term) -> Element:
    match r:
        case TermAtm(a):
            return interp.embed_atom(a)
        case TermUnk(p, name):
            value = val.get(name)
            if value is None:
                sort = interp.signature.unknowns.get(name)
                if sort is None:
                    raise SortError(f"undeclared unknown {name}")
                value = interp.default_elem(sort)
            return act_elem(p, value)
        case TermConst(p, name):
            return act_elem(p, interp.const_elem(name))
        case TermApp(f, arg):
            return interp.apply_former(f, denote(interp, val, arg))
        case TermTup(items):
            return interp.make_tuple([denote(interp, val, t) for t in items])
        case TermAbs(a, body):
            return interp.make_abs(a, denote(interp, val, body))
    raise TypeError(f"not a term: {r!r}")


# ---------------------------------------------------------------------------
# Equation checking over generated valuation families.

@dataclass(frozen=True)
class Verdict:
    """Valid over the searched family, or refuted by a concrete witness."""

    valid: bool
    witness: Valuation | None = None
    checked: int = 0

    def __str__(self) -> str:
        if self.valid:
            return f"valid-over-family (checked {self.checked} valuations)"
        return f"counterwitness {self.witness}"


def check_equation(
    interp: AnyInterpretation, r: Term, s: Term, family: Sequence[Valuation]
) -> Verdict:
    sig = interp.signature
    if typecheck(sig, r) != typecheck(sig, s):
        raise SortError("equation sides have different sorts")
    for val in family:
        if not elem_eq(denote(interp, val, r), denote(interp, val, s)):
            return Verdict(False, val, len(family))
    return Verdict(True, None, len(family))


def sort_values(
    interp: AnyInterpretation, sort: Sort, pool: frozenset[Atom], cap: int = 2000
) -> list[Element]:
    """Sample elements of a sort's carrier: orbit samples of its generators."""
    match sort:
        case SortName(nu):
            return [
                interp.embed_atom(a)
                for a in sorted(pool | {Atom(nu, Zone.DOWN, 0)})
                if a.sort == nu and a.zone == Zone.DOWN
            ]
        case SortBase(name):
            return interp.carrier(name).sample_values(pool, cap)
        case SortTuple(items):
            if not items:
                return [interp.make_tuple([])]
            out = [[]]
            for item in items:
                vals = sort_values(interp, item, pool, cap)
                out = [prefix + [v] for prefix in out for v in vals]
                if len(out) > cap:
                    raise FamilyCapError(f"tuple value family exceeds cap {cap}")
            return [interp.make_tuple(vs) for vs in out]
        case SortAbs(nu, body):
            binder = Atom(nu, Zone.DOWN, 0)
            return [
                interp.make_abs(binder, v)
                for v in sort_values(interp, body, pool, cap)
            ]
    raise TypeError(f"not a sort: {sort!r}")


def valuation_family(
    interp: AnyInterpretation,
    unknowns: Sequence[str],
    pool: frozenset[Atom],
    cap: int = 2000,
    mode: str | None = None,
) -> list[Valuation]:
    """Every assignment of orbit samples to the unknowns, support-filtered.

    Values are generator orbits under pool permutations; strict mode keeps
    only values supported inside the comb.
    """
    mode = mode if mode is not None else interp.signature.mode
    sig = interp.signature
    per_unknown: list[list[Element]] = []
    for name in unknowns:
        sort = sig.unknowns[name]
        values = sort_values(interp, sort, pool, cap)
        kept = []
        for v in values:
            ok = subset_of(support(v), COMB) if mode == "strict" else True
            if ok and not any(elem_eq(v, w) for w in kept):
                kept.append(v)
        per_unknown.append(kept)
    family = [Valuation.of({})]
    for name, values in zip(unknowns, per_unknown):
        family = [val.set(name, v) for val in family for v in values]
        if len(family) > cap:
            raise FamilyCapError(f"valuation family exceeds cap {cap}")
    return family


@dataclass(frozen=True)
class Theory:
    signature: Signature
    axioms: tuple[tuple[Term, Term], ...]

    def __post_init__(self):
        for r, s in self.axioms:
            if typecheck(self.signature, r) != typecheck(self.signature, s):
                raise SortError("axiom sides have different sorts")


def check_theory(
    interp: AnyInterpretation, theory: Theory, pool: frozenset[Atom], cap: int = 2000
) -> list[tuple[tuple[Term, Term], Verdict]]:
    out = []
    for r, s in theory.axioms:
        names = sorted(free_unknowns(r) | free_unknowns(s))
        family = valuation_family(interp, names, pool, cap)
        out.append(((r, s), check_equation(interp, r, s, family)))
    return out
