"""First-order propositions over nominal terms and their evaluation.

The universal quantifier ranges over the values of a sort whose support lies
inside the comb.  For name sorts the infinitely many candidate atoms collapse
into finitely many regions: the atoms named explicitly by the formula, the
model, or the valuation, plus one fresh representative per residual region
(even and odd Down indexes are kept apart so half-comb supports are
distinguished).  Evaluation over representatives agrees with brute force
over enlarged pools because every predicate denotation is equivariant.

Three support regimes grade validity: full (any representable support),
medium (inside some permuted half-comb), and finite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence, Union

from .atoms import Atom, Zone
from .errors import QuantBasisError, RegimeError, SortError
from .lists import extend_to_finperm, fresh_list
from .orbits import Closure, find_transporter, perms_over
from .regions import COMB, medium_supportable, subset_of
from .semantics import (
    AnyInterpretation,
    ReducedInterpretation,
    Valuation,
    denote,
    reduce_support,
)
from .terms import (
    Signature,
    Sort,
    SortName,
    SortTuple,
    Term,
    explicit_atoms,
    typecheck,
)
from .universe import Atm, Element, ListAbs, Tup, act_elem, elem_eq, listabs_at, support


@dataclass(frozen=True)
class PBot:
    pass


@dataclass(frozen=True)
class PImp:
    premise: "Proposition"
    conclusion: "Proposition"


@dataclass(frozen=True)
class PAll:
    unknown: str
    body: "Proposition"


@dataclass(frozen=True)
class PPred:
    name: str
    arg: Term


Proposition = Union[PBot, PImp, PAll, PPred]

BOT = PBot()


def p_not(phi: Proposition) -> Proposition:
    return PImp(phi, BOT)


def p_exists(unknown: str, phi: Proposition) -> Proposition:
    return p_not(PAll(unknown, p_not(phi)))


FRESH_PRED = "fresh"
EQUAL_PRED = "eq"


def typecheck_prop(sig: Signature, phi: Proposition) -> None:
    match phi:
        case PBot():
            return
        case PImp(a, b):
            typecheck_prop(sig, a)
            typecheck_prop(sig, b)
            return
        case PAll(name, body):
            if name not in sig.unknowns:
                raise SortError(f"quantified unknown {name} is not declared")
            typecheck_prop(sig, body)
            return
        case PPred(name, arg):
            got = typecheck(sig, arg)
            if name == FRESH_PRED:
                if not (
                    isinstance(got, SortTuple)
                    and len(got.items) == 2
                    and isinstance(got.items[0], SortName)
                ):
                    raise SortError("freshness expects an (atom, value) pair")
                return
            if name == EQUAL_PRED:
                if not (isinstance(got, SortTuple) and len(got.items) == 2):
                    raise SortError("equality expects a pair")
                return
            if name not in sig.predicates:
                raise SortError(f"undeclared predicate {name}")
            if got != sig.predicates[name]:
                raise SortError(
                    f"argument of {name} has sort {got}, expected {sig.predicates[name]}"
                )
            return
    raise TypeError(f"not a proposition: {phi!r}")


def prop_explicit_atoms(sig: Signature | None, phi: Proposition) -> frozenset[Atom]:
    match phi:
        case PBot():
            return frozenset()
        case PImp(a, b):
            return prop_explicit_atoms(sig, a) | prop_explicit_atoms(sig, b)
        case PAll(_, body):
            return prop_explicit_atoms(sig, body)
        case PPred(_, arg):
            return explicit_atoms(sig, arg)
    raise TypeError(f"not a proposition: {phi!r}")


def prop_free_atoms(sig: Signature | None, phi: Proposition):
    """The atoms a proposition can depend on; quantifiers bind no atoms."""
    from .regions import EMPTY_SET, union
    from .terms import free_atoms

    match phi:
        case PBot():
            return EMPTY_SET
        case PImp(a, b):
            return union(prop_free_atoms(sig, a), prop_free_atoms(sig, b))
        case PAll(_, body):
            return prop_free_atoms(sig, body)
        case PPred(_, arg):
            return free_atoms(sig, arg)
    raise TypeError(f"not a proposition: {phi!r}")


# ---------------------------------------------------------------------------
# Predicate denotations.

@dataclass(frozen=True)
class PredFresh:
    """Holds of (y, x) when the atom y is outside the support of x."""


@dataclass(frozen=True)
class PredEqual:
    pass


@dataclass(frozen=True)
class PredTable:
    generators: tuple[Element, ...]
    closure: Closure = Closure.FINITE


PredDef = Union[PredFresh, PredEqual, PredTable]


class SupportRegime(str, Enum):
    FULL = "full"
    MEDIUM = "medium"
    FINITE = "finite"


_REGIME_RANK = {SupportRegime.FINITE: 0, SupportRegime.MEDIUM: 1, SupportRegime.FULL: 2}


@dataclass(frozen=True)
class PNLInterpretation:
    base: AnyInterpretation
    preds: Mapping[str, PredDef] = field(default_factory=dict)
    quant_basis: Mapping[Sort, tuple[Element, ...]] = field(default_factory=dict)

    @property
    def signature(self) -> Signature:
        return self.base.signature

    def pred_holds(self, name: str, value: Element) -> bool:
        cache = self.__dict__.setdefault("_pred_cache", {})
        key = (name, value)
        if key not in cache:
            cache[key] = self._pred_holds(name, value)
        return cache[key]

    def _pred_holds(self, name: str, value: Element) -> bool:
        if isinstance(self.base, ReducedInterpretation):
            lst = fresh_list(
                self.base.mode, support(value).finite_atoms()
            )
            inner_value = listabs_at(value, lst)
            inner = PNLInterpretation(self.base.inner, self.preds, self.quant_basis)
            return inner._pred_holds(name, inner_value)
        return _pred_holds_flat(self._pred_def(name), value)

    def _pred_def(self, name: str) -> PredDef:
        if name in self.preds:
            return self.preds[name]
        if name == FRESH_PRED:
            return PredFresh()
        if name == EQUAL_PRED:
            return PredEqual()
        raise SortError(f"predicate {name} has no denotation")

    def sample_elements(self) -> list[Element]:
        out: list[Element] = []
        for name in self.signature.base_sorts:
            try:
                out.extend(self.base.carrier(name).generators)
            except SortError:
                pass
        for values in self.quant_basis.values():
            out.extend(values)
        for d in self.preds.values():
            if isinstance(d, PredTable):
                out.extend(d.generators)
        for name in self.signature.constants:
            try:
                out.append(self.base.const_elem(name))
            except SortError:
                pass
        return out


def _pred_holds_flat(pred: PredDef, value: Element) -> bool:
    match pred:
        case PredFresh():
            if not isinstance(value, Tup) or len(value.items) != 2:
                raise SortError("freshness expects a pair")
            y, x = value.items
            if not isinstance(y, Atm):
                raise SortError("freshness expects an atom on the left")
            return not support(x).member(y.atom)
        case PredEqual():
            if not isinstance(value, Tup) or len(value.items) != 2:
                raise SortError("equality expects a pair")
            return elem_eq(value.items[0], value.items[1])
        case PredTable(generators, closure):
            return any(
                find_transporter(g, value, closure) is not None for g in generators
            )
    raise TypeError(f"not a predicate denotation: {pred!r}")


def reduce_support_pnl(interp: PNLInterpretation, index) -> PNLInterpretation:
    from .universe import listabs

    wrapped_base = reduce_support(interp.base, index)
    wrapped_basis = {
        sort: tuple(listabs(index, g) for g in values)
        for sort, values in interp.quant_basis.items()
    }
    return PNLInterpretation(wrapped_base, interp.preds, wrapped_basis)


# ---------------------------------------------------------------------------
# Evaluation.

@dataclass(frozen=True)
class EvalConfig:
    pool: frozenset[Atom] = frozenset()
    cap: int = 4000
    reps_per_region: int = 1


def eval_prop(
    interp: PNLInterpretation,
    val: Valuation,
    phi: Proposition,
    config: EvalConfig = EvalConfig(),
) -> bool:
    match phi:
        case PBot():
            return False
        case PImp(a, b):
            return (not eval_prop(interp, val, a, config)) or eval_prop(
                interp, val, b, config
            )
        case PPred(name, arg):
            return interp.pred_holds(name, denote(interp.base, val, arg))
        case PAll(name, body):
            for value in quantifier_values(interp, val, name, body, config):
                if not eval_prop(interp, val.set(name, value), body, config):
                    return False
            return True
    raise TypeError(f"not a proposition: {phi!r}")


def quantifier_values(
    interp: PNLInterpretation,
    val: Valuation,
    unknown: str,
    body: Proposition,
    config: EvalConfig,
) -> list[Element]:
    """The finite family standing in for all comb-supported values of a sort.

    In a wrapped interpretation every element is a list abstraction, so the
    relationships that predicates can observe run through the bodies factored
    over one common list.  Name sorts then split into the free names (the
    abstraction's own residual atoms plus fresh ones) and the captured names
    (atoms of the common list, the de Bruijn-style indexes), classified by
    region against the factored supports.
    """
    sig = interp.signature
    sort = sig.unknowns[unknown]
    scope = set(config.pool) | _scope_atoms(interp, val, body)
    cache = interp.__dict__.setdefault("_family_cache", {})
    key = (sort, frozenset(scope), val.assignments, config.reps_per_region)
    if key in cache:
        return cache[key]
    values = _quantifier_values_uncached(interp, val, sort, scope, config)
    cache[key] = values
    return values


def _quantifier_values_uncached(interp, val, sort, scope, config) -> list[Element]:
    if isinstance(interp.base, ReducedInterpretation):
        return _wrapped_values(interp, val, sort, scope, config)
    if isinstance(sort, SortName):
        free = _free_name_atoms(sort.sort, scope, config)
        return [interp.base.embed_atom(a) for a in free]
    basis = interp.quant_basis.get(sort)
    if basis is None:
        raise QuantBasisError(f"no quantification basis for sort {sort}")
    out: list[Element] = []
    seen: set = set()
    for g in basis:
        for v in _orbit_images(g, scope, config.cap):
            if v in seen:
                continue
            seen.add(v)
            if not subset_of(support(v), COMB):
                continue
            if not any(elem_eq(v, w) for w in out):
                out.append(v)
            if len(out) > config.cap:
                raise QuantBasisError(f"quantifier family exceeds cap {config.cap}")
    return out


def _orbit_images(g: Element, pool: set[Atom], cap: int):
    """Orbit samples of a generator: every sort-preserving relocation of the
    finitely many atoms its support names, into the pool.

    Moving atoms outside that core cannot change the element (they are not in
    its support), so injections of the core cover the whole orbit restricted
    to the pool.
    """
    core = sorted(support(g).perturbation_atoms())
    targets = sorted(set(pool) | set(core))
    by_sort: dict[int, list[Atom]] = {}
    for a in core:
        by_sort.setdefault(a.sort, []).append(a)
    target_by_sort = {
        s: [a for a in targets if a.sort == s] for s in by_sort
    }
    choices_per_sort = [
        [dict(zip(atoms, image))
         for image in itertools.permutations(target_by_sort[s], len(atoms))]
        for s, atoms in by_sort.items()
    ]
    count = 0
    for combo in itertools.product(*choices_per_sort) if choices_per_sort else [()]:
        mapping: dict[Atom, Atom] = {}
        for part in combo:
            mapping.update(part)
        try:
            p = extend_to_finperm(mapping)
        except ValueError:
            continue
        yield act_elem(p, g)
        count += 1
        if count > 50 * max(cap, 1):
            raise QuantBasisError("quantifier orbit enumeration exceeds budget")


def _scope_atoms(interp: PNLInterpretation, val: Valuation, body) -> set[Atom]:
    atoms = set(interp.base.relevant_atoms())
    for v in val.values():
        atoms |= set(support(v).perturbation_atoms())
    for values in interp.quant_basis.values():
        for v in values:
            atoms |= set(support(v).perturbation_atoms())
    atoms |= prop_explicit_atoms(interp.signature, body)
    return atoms


def _free_name_atoms(nu: int, scope: set[Atom], config: EvalConfig) -> list[Atom]:
    explicit = sorted(a for a in scope if a.sort == nu and a.zone == Zone.DOWN)
    taken = {a.index for a in explicit}
    reps: list[Atom] = []
    for parity in (0, 1):
        found, idx = 0, parity
        while found < config.reps_per_region:
            if idx not in taken:
                reps.append(Atom(nu, Zone.DOWN, idx))
                found += 1
            idx += 2
    return explicit + reps


def _wrapped_values(
    interp: PNLInterpretation,
    val: Valuation,
    sort: Sort,
    scope: set[Atom],
    config: EvalConfig,
) -> list[Element]:
    from .universe import listabs
    from . import regions as _regions

    base: ReducedInterpretation = interp.base
    # the reduction's own index list is the common list: everything built by
    # lift_valuation or the constant clause factors over it without movement
    lq = base.index
    lq_supp = lq.support()

    in_scope = list(val.values())
    for name in interp.signature.constants:
        try:
            in_scope.append(base.const_elem(name))
        except SortError:
            pass
    bodies = []
    for v in in_scope:
        if not isinstance(v, ListAbs):
            continue
        if not _regions.intersect(support(v), lq_supp).is_empty():
            continue
        bodies.append(listabs_at(v, lq))
    pert: set[Atom] = set()
    for b in bodies:
        pert |= set(support(b).perturbation_atoms())

    if isinstance(sort, SortName):
        nu = sort.sort
        values = [base.embed_atom(a) for a in _free_name_atoms(nu, scope, config)]
        captured = [a for a in sorted(pert) if a.sort == nu and lq_supp.member(a)]
        taken = {a.index for a in pert if a.sort == nu} | {
            a.index for a in scope if a.sort == nu and a.zone == Zone.DOWN
        }
        bound = max(taken, default=0) + 2 * config.reps_per_region + 4
        for parity in (0, 1):
            found, idx = 0, parity
            while found < config.reps_per_region and idx <= bound:
                a = Atom(nu, Zone.DOWN, idx)
                if idx not in taken and lq_supp.member(a):
                    captured.append(a)
                    found += 1
                idx += 2
        values += [listabs(lq, Atm(w)) for w in captured]
        return _dedup(values, config.cap)

    basis = interp.quant_basis.get(sort)
    if basis is None:
        raise QuantBasisError(f"no quantification basis for sort {sort}")
    free_atoms = {
        a
        for nu in range(len(interp.signature.name_sorts))
        for a in _free_name_atoms(nu, scope, config)
    }
    captured_generics = _captured_generics(lq_supp, scope | pert, config)
    pool = set(scope) | pert | free_atoms | captured_generics
    out: list[Element] = []
    seen: set = set()
    for g in basis:
        if not isinstance(g, ListAbs):
            continue
        if not _regions.intersect(support(g), lq_supp).is_empty():
            continue
        gb = listabs_at(g, lq)
        for moved in _orbit_images(gb, pool, config.cap):
            if moved in seen:
                continue
            seen.add(moved)
            v = listabs(lq, moved)
            if not subset_of(support(v), COMB):
                continue
            if not any(elem_eq(v, w) for w in out):
                out.append(v)
            if len(out) > config.cap:
                raise QuantBasisError(f"quantifier family exceeds cap {config.cap}")
    return out


def _captured_generics(lq_supp, taken_atoms: set[Atom], config: EvalConfig) -> set[Atom]:
    taken = {(a.sort, a.index) for a in taken_atoms}
    sorts = {a.sort for a in taken_atoms} | {0}
    out: set[Atom] = set()
    for s in sorted(sorts):
        bound = max((i for t, i in taken if t == s), default=0) + 2 * config.reps_per_region + 4
        for parity in (0, 1):
            found, idx = 0, parity
            while found < config.reps_per_region and idx <= bound:
                a = Atom(s, Zone.DOWN, idx)
                if (s, idx) not in taken and lq_supp.member(a):
                    out.add(a)
                    found += 1
                idx += 2
    return out


def _dedup(values: list[Element], cap: int) -> list[Element]:
    out: list[Element] = []
    for v in values:
        if not any(elem_eq(v, w) for w in out):
            out.append(v)
        if len(out) > cap:
            raise QuantBasisError(f"quantifier family exceeds cap {cap}")
    return out


# ---------------------------------------------------------------------------
# Regime conformance and graded validity.

def element_regime(x: Element) -> SupportRegime:
    d = support(x)
    if d.is_finite():
        return SupportRegime.FINITE
    if medium_supportable(d):
        return SupportRegime.MEDIUM
    return SupportRegime.FULL


def check_conformance(interp: PNLInterpretation, regime: SupportRegime) -> None:
    for x in interp.sample_elements():
        if _REGIME_RANK[element_regime(x)] > _REGIME_RANK[regime]:
            raise RegimeError(
                f"element {x} has {element_regime(x).value} support, "
                f"outside the {regime.value} regime"
            )


@dataclass(frozen=True)
class ValidityVerdict:
    valid: bool
    witness_model: int | None = None
    witness_valuation: Valuation | None = None
    checked: int = 0

    def __str__(self) -> str:
        if self.valid:
            return f"valid-over-family (checked {self.checked} cases)"
        return (
            f"counterwitness in model {self.witness_model} "
            f"at valuation {self.witness_valuation}"
        )


def check_validity(
    models: Sequence[tuple[PNLInterpretation, SupportRegime]],
    phi: Proposition,
    regime: SupportRegime,
    families: Sequence[Sequence[Valuation]] | None = None,
    config: EvalConfig = EvalConfig(),
) -> ValidityVerdict:
    """Evaluate the proposition over every model within the regime."""
    for interp, tag in models:
        check_conformance(interp, tag)
    checked = 0
    for i, (interp, tag) in enumerate(models):
        if _REGIME_RANK[tag] > _REGIME_RANK[regime]:
            continue
        family = families[i] if families is not None else [Valuation.of({})]
        for val in family:
            checked += 1
            if not eval_prop(interp, val, phi, config):
                return ValidityVerdict(False, i, val, checked)
    return ValidityVerdict(True, None, None, checked)
