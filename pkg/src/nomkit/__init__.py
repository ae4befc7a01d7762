"""Permissive-nominal sets, terms, and models.

Atoms live in two zones per sort; finite permutations and a shift-extended
group act on everything; supports are computed as finitely represented
descriptors.  On top of that sit term syntax with alpha-equivalence, model
interpretations with a support-reducing transform, equational validity over
valuation families, and a first-order evaluator graded by support regime.
"""

from .atoms import Atom, Zone, down, up
from .errors import (
    FamilyCapError,
    NomkitError,
    NotFreshError,
    ParseError,
    QuantBasisError,
    RegimeError,
    SortError,
    UndecidableError,
    UnrepresentableError,
)
from .perms import (
    FIN_ID,
    GEN_ID,
    SHIFT,
    FinPerm,
    GenPerm,
    agree_on,
    apply,
    compose,
    invert,
    restrict,
    restrict_by_rewriting,
    restriction_leq,
    swap,
)
from .regions import (
    COMB,
    COMB_SET,
    EMPTY_SET,
    HALFCOMB,
    ODDCOMB,
    Family,
    PermissionSet,
    SupportDescriptor,
    act_descriptor,
    act_pointwise,
    fresh_atom,
    medium_supportable,
    strictly_supportable,
)
from .lists import AtomList, FULL_BASE, HALF_BASE, ListMode, base_list, fresh_list
from .universe import (
    Abs,
    Atm,
    Element,
    Fuzzy,
    ListAbs,
    PSetElem,
    Tup,
    Unit,
    act_elem,
    elem_eq,
    factor_common,
    listabs,
    listabs_at,
    support,
)
from .orbits import Carrier, Closure, find_transporter
from .terms import (
    Signature,
    SortAbs,
    SortBase,
    SortName,
    SortTuple,
    TermAbs,
    TermApp,
    TermAtm,
    TermConst,
    TermTup,
    TermUnk,
    alpha_eq,
    act_term,
    const,
    explicit_atoms,
    free_atoms,
    free_unknowns,
    typecheck,
    unk,
)
from .semantics import (
    Interpretation,
    ReducedInterpretation,
    Theory,
    Valuation,
    Verdict,
    check_equation,
    check_theory,
    denote,
    lift_valuation,
    permute_valuation,
    reduce_support,
    valuation_family,
)
from .pnl import (
    BOT,
    EvalConfig,
    PAll,
    PImp,
    PNLInterpretation,
    PPred,
    Proposition,
    SupportRegime,
    check_validity,
    eval_prop,
    p_exists,
    p_not,
    reduce_support_pnl,
)

__version__ = "0.1.0"
