"""Random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random

from nomkit.atoms import Atom, Zone, down, up
from nomkit.lists import ListMode, fresh_list
from nomkit.orbits import Carrier, Closure
from nomkit.perms import FIN_ID, FinPerm, GenPerm
from nomkit.regions import (
    COMB,
    COMB_SET,
    EMPTY_SET,
    HALFCOMB,
    PermissionSet,
    act_pointwise,
    subset_of,
)
from nomkit.semantics import (
    EqCompose,
    EqConst,
    EqIdentity,
    EqMkAbs,
    EqMkTuple,
    EqProj,
    EqTable,
    Interpretation,
    Valuation,
)
from nomkit.pnl import PAll, PNLInterpretation, PPred, PredTable, p_exists, p_not
from nomkit.terms import (
    Signature,
    SortBase,
    SortName,
    SortTuple,
    TermAbs,
    TermApp,
    TermAtm,
    TermTup,
    TermUnk,
    const,
    unk,
)
from nomkit.universe import (
    Abs,
    Atm,
    Element,
    Fuzzy,
    PSetElem,
    Tup,
    Unit,
    listabs,
    support,
)

# 12-atom pool: eight sort-0 Down, two sort-0 Up, two sort-1 Down.
POOL = tuple(
    [down(0, i) for i in range(8)] + [up(0, 1), up(0, 3)] + [down(1, 0), down(1, 1)]
)
DOWN_POOL = tuple(a for a in POOL if a.zone == Zone.DOWN and a.sort == 0)


def rand_atom(rng: random.Random, pool=POOL) -> Atom:
    return rng.choice(pool)


def rand_finperm(rng: random.Random, pool=POOL, max_moved: int = 6) -> FinPerm:
    by_sort: dict[int, list[Atom]] = {}
    count = rng.randrange(0, max_moved + 1)
    for a in rng.sample(list(pool), min(count, len(pool))):
        by_sort.setdefault(a.sort, []).append(a)
    mapping: dict[Atom, Atom] = {}
    for atoms in by_sort.values():
        images = atoms[:]
        rng.shuffle(images)
        mapping.update(dict(zip(atoms, images)))
    return FinPerm.from_mapping(mapping)


def rand_genperm(rng: random.Random, pool=POOL, shifty: bool = True) -> GenPerm:
    k = rng.choice([-2, -1, 0, 0, 0, 1, 2]) if shifty else 0
    return GenPerm(rand_finperm(rng, pool), k)


def rand_permission_set(rng: random.Random, strict: bool = True) -> PermissionSet:
    s = COMB_SET
    for _ in range(rng.randrange(0, 3)):
        s = act_pointwise(rand_finperm(rng), s)
    if not strict and rng.random() < 0.5:
        extra = up(0, rng.choice([5, 7, 9]))
        if not s.member(extra):
            s = PermissionSet(s.removed, s.added | {extra})
    return s


def rand_element(rng: random.Random, depth: int = 4, allow_fuzzy: bool = False) -> Element:
    leaves = ["atom", "pset", "unit", "unit_supp"]
    if allow_fuzzy:
        leaves.append("fuzzy")
    if depth <= 0:
        kind = rng.choice(leaves)
    else:
        kind = rng.choice(leaves + ["tup", "abs", "listabs", "tup"])
    if kind == "atom":
        return Atm(rand_atom(rng))
    if kind == "pset":
        return PSetElem(rand_permission_set(rng, strict=rng.random() < 0.8))
    if kind == "unit":
        return Unit(rng.choice(["k0", "k1", "k2"]))
    if kind == "unit_supp":
        d = rng.choice([EMPTY_SET, COMB, HALFCOMB])
        return Unit("u", d)
    if kind == "fuzzy":
        return Fuzzy(rng.randrange(-2, 3))
    if kind == "tup":
        n = rng.randrange(0, 3)
        return Tup(tuple(rand_element(rng, depth - 1, allow_fuzzy) for _ in range(n)))
    if kind == "abs":
        return Abs(rand_atom(rng), rand_element(rng, depth - 1, allow_fuzzy))
    body = rand_element(rng, depth - 1, allow_fuzzy)
    avoid = rng.sample(list(DOWN_POOL), rng.randrange(0, 3))
    lst = fresh_list(ListMode.FULL, avoid)
    try:
        return listabs(lst, body)
    except Exception:
        return body


# ---------------------------------------------------------------------------
# Random strict-mode models, terms, and valuations for the commutation suites.

MODEL_SIG = Signature(
    name_sorts=("nu",),
    base_sorts=("tau", "rho"),
    constants={"O": ("tau", EMPTY_SET), "K": ("rho", COMB)},
    unknowns={
        "X": SortBase("tau"),
        "Y": SortBase("rho"),
        "W": SortName(0),
        "V": SortTuple((SortName(0), SortBase("tau"))),
    },
    formers={
        "f": (SortBase("tau"), "rho"),
        "g": (SortTuple((SortName(0), SortBase("tau"))), "rho"),
        "h": (SortName(0), "tau"),
    },
)

_ABS_PAIR = EqCompose(EqMkAbs(), EqMkTuple((EqIdentity(), EqIdentity())))


def rand_model(rng: random.Random) -> Interpretation:
    tau_gens = [Unit("t0")]
    if rng.random() < 0.7:
        tau_gens.append(PSetElem(rand_permission_set(rng)))
    if rng.random() < 0.4:
        tau_gens.append(Atm(rng.choice(DOWN_POOL)))
    rho_gens = [Unit("r0")]
    f_fn = rng.choice([EqIdentity(), EqConst(Unit("r0")), EqMkTuple((EqIdentity(), EqIdentity()))])
    g_fn = rng.choice([EqMkAbs(), EqConst(Unit("r0")), EqProj(1)])
    h_fn = rng.choice([_ABS_PAIR, EqConst(Unit("t0")), EqTable(((Atm(down(0, 0)), Unit("t0")),))])
    k_elem = rng.choice([PSetElem(COMB_SET), Unit("k"), Atm(rng.choice(DOWN_POOL))])
    return Interpretation(
        MODEL_SIG,
        carriers={
            "tau": Carrier(tuple(tau_gens), Closure.FINITE),
            "rho": Carrier(tuple(rho_gens), Closure.FINITE),
        },
        formers={"f": f_fn, "g": g_fn, "h": h_fn},
        consts={"O": Unit("t0"), "K": k_elem},
    )


def rand_term(rng: random.Random, sort, depth: int = 3):
    sig = MODEL_SIG
    if isinstance(sort, SortName):
        if rng.random() < 0.6:
            return TermAtm(rng.choice([a for a in DOWN_POOL if a.sort == sort.sort]))
        return TermUnk(GenPerm(rand_finperm(rng, max_moved=4)), "W")
    if isinstance(sort, SortTuple):
        return TermTup(tuple(rand_term(rng, s, depth - 1) for s in sort.items))
    if isinstance(sort, SortBase):
        options = ["unk"]
        if depth > 0:
            options += ["former", "former"]
        if sort.name == "tau":
            options.append("const")
        kind = rng.choice(options)
        if kind == "unk":
            name = "X" if sort.name == "tau" else "Y"
            p = rand_finperm(rng, max_moved=4) if rng.random() < 0.5 else FIN_ID
            return TermUnk(GenPerm(p), name)
        if kind == "const":
            p = rand_finperm(rng, max_moved=2) if rng.random() < 0.3 else FIN_ID
            return const("O", p)
        formers = [f for f, (_, res) in sig.formers.items() if res == sort.name]
        f = rng.choice(formers)
        arg_sort, _ = sig.formers[f]
        return TermApp(f, rand_term(rng, arg_sort, depth - 1))
    raise AssertionError(sort)


def rand_term_any(rng: random.Random, depth: int = 3):
    sort = rng.choice(
        [
            SortBase("tau"),
            SortBase("rho"),
            SortName(0),
            SortTuple((SortName(0), SortBase("tau"))),
        ]
    )
    r = rand_term(rng, sort, depth)
    if rng.random() < 0.5:
        binder = rng.choice(DOWN_POOL)
        r = TermAbs(binder, r)
    return r


def rand_valuation(rng: random.Random, interp: Interpretation) -> Valuation:
    tau_vals = _strict_values(rng, interp, "tau")
    rho_vals = _strict_values(rng, interp, "rho")
    w = Atm(rng.choice(DOWN_POOL))
    return Valuation.of(
        {
            "X": rng.choice(tau_vals),
            "Y": rng.choice(rho_vals),
            "W": w,
            "V": Tup((Atm(rng.choice(DOWN_POOL)), rng.choice(tau_vals))),
        }
    )


def _strict_values(rng, interp, sort_name):
    from nomkit.universe import act_elem

    out = []
    for g in interp.carrier(sort_name).generators:
        for _ in range(2):
            value = act_elem(rand_finperm(rng, max_moved=4), g)
            if subset_of(support(value), COMB):
                out.append(value)
    return out or [Unit("t0" if sort_name == "tau" else "r0")]


# ---------------------------------------------------------------------------
# Random medium-support PNL models and formulas.

PNL_SIG = Signature(
    name_sorts=("nu",),
    base_sorts=("tau",),
    constants={"O": ("tau", EMPTY_SET)},
    unknowns={"X": SortBase("tau"), "Y": SortName(0), "Z": SortBase("tau")},
    predicates={"P": SortBase("tau"), "Q": SortName(0)},
)


def rand_pnl_model(rng: random.Random) -> PNLInterpretation:
    gens = [Unit("m0")]
    if rng.random() < 0.8:
        gens.append(Unit("H", HALFCOMB))
    base = Interpretation(
        PNL_SIG,
        carriers={"tau": Carrier(tuple(gens), Closure.FINITE)},
        consts={"O": Unit("m0")},
    )
    p_def = rng.choice(
        [PredTable((Unit("m0"),)), PredTable(tuple(gens)), PredTable(())]
    )
    q_def = rng.choice([PredTable((Atm(down(0, 0)),)), PredTable(())])
    return PNLInterpretation(
        base,
        {"P": p_def, "Q": q_def},
        {SortBase("tau"): tuple(gens)},
    )


def rand_formula(rng: random.Random, depth: int = 2, scope=("X",)):
    if depth <= 0 or rng.random() < 0.35:
        kind = rng.choice(["P", "Q", "fresh", "eq", "bot"])
        if kind == "bot":
            from nomkit.pnl import BOT

            return BOT
        if kind == "P":
            return PPred("P", unk(rng.choice([s for s in scope if s in ("X", "Z")] or ["X"])))
        if kind == "Q":
            return PPred("Q", _name_arg(rng, scope))
        if kind == "fresh":
            return PPred("fresh", TermTup((_name_arg(rng, scope), unk("X"))))
        return PPred("eq", TermTup((unk("X"), unk("X"))))
    kind = rng.choice(["imp", "forall", "exists", "not"])
    if kind == "imp":
        from nomkit.pnl import PImp

        return PImp(
            rand_formula(rng, depth - 1, scope), rand_formula(rng, depth - 1, scope)
        )
    binder = rng.choice(["Y", "Z"])
    body = rand_formula(rng, depth - 1, tuple(set(scope) | {binder}))
    if kind == "forall":
        return PAll(binder, body)
    if kind == "exists":
        return p_exists(binder, body)
    return p_not(rand_formula(rng, depth - 1, scope))


def _name_arg(rng, scope):
    if "Y" in scope and rng.random() < 0.6:
        return unk("Y")
    return TermAtm(rng.choice([a for a in DOWN_POOL if a.sort == 0]))
