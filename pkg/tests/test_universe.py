"""Element action, support laws, and abstraction equalities."""

import random

import pytest
from hypothesis import given, strategies as st

from nomkit.atoms import down, up
from nomkit.errors import NotFreshError, UnrepresentableError
from nomkit.lists import AtomList, FULL_BASE, HALF_BASE, ListMode, base_atom, base_position, fresh_list
from nomkit.perms import FIN_ID, GenPerm, compose, invert, swap
from nomkit.regions import (
    COMB,
    COMB_SET,
    EMPTY_SET,
    HALFCOMB,
    PermissionSet,
    act_descriptor,
    finite_set,
)
from nomkit.universe import (
    Abs,
    Atm,
    Fuzzy,
    PSetElem,
    Tup,
    Unit,
    act_elem,
    elem_eq,
    factor_common,
    listabs,
    listabs_at,
    shift_sensitive,
    support,
)

from helpers import rand_element, rand_finperm

a, b, c = down(0, 0), down(0, 1), down(0, 2)
bu = up(0, 1)

elements = st.builds(
    lambda seed: rand_element(random.Random(seed)), st.integers(0, 10**6)
)
finperms = st.builds(lambda seed: rand_finperm(random.Random(seed)), st.integers(0, 10**6))


class TestLists:
    def test_base_round_trip(self):
        for pos in range(40):
            for mode in ListMode:
                assert base_position(mode, base_atom(mode, pos)) == pos

    def test_half_base_hits_even_indexes_only(self):
        for pos in range(20):
            assert base_atom(ListMode.HALF, pos).index % 2 == 0

    def test_base_supports(self):
        assert FULL_BASE.support() == COMB
        assert HALF_BASE.support() == HALFCOMB

    def test_fresh_list_avoids(self):
        lst = fresh_list(ListMode.FULL, {a, b, bu, down(1, 0)})
        d = lst.support()
        for atom in (a, b, bu, down(1, 0)):
            assert not d.member(atom)

    def test_act_tracks_entries(self):
        lst = FULL_BASE.act(swap(a, bu))
        assert lst.entry(base_position(ListMode.FULL, a)) == bu

    def test_shift_action_unrepresentable(self):
        with pytest.raises(UnrepresentableError):
            FULL_BASE.act(GenPerm(FIN_ID, 1))

    def test_entries_stay_distinct(self):
        with pytest.raises(ValueError):
            AtomList(ListMode.FULL, ((0, bu), (1, bu)))


class TestSupport:
    def test_atom(self):
        assert support(Atm(a)) == finite_set([a])

    def test_abs_removes_bound_atom(self):
        assert support(Abs(a, Atm(a))) == EMPTY_SET
        assert support(Abs(a, Atm(b))) == finite_set([b])

    def test_tuple_unions(self):
        assert support(Tup((Atm(a), Atm(b)))) == finite_set([a, b])

    def test_pset_supports_itself(self):
        s = PermissionSet(frozenset(), frozenset({bu}))
        assert support(PSetElem(s)) == s.descriptor()

    def test_listabs_residual(self):
        x = listabs(FULL_BASE, PSetElem(PermissionSet(frozenset(), frozenset({bu}))))
        assert support(x) == finite_set([bu])
        assert support(listabs(FULL_BASE, PSetElem(COMB_SET))) == EMPTY_SET

    def test_fuzzy_flagged(self):
        assert support(Fuzzy(0)) == EMPTY_SET
        assert shift_sensitive(Fuzzy(0))
        assert shift_sensitive(Tup((Atm(a), Fuzzy(1))))
        assert not shift_sensitive(Atm(a))

    @given(elements, finperms)
    def test_support_equivariant(self, x, p):
        assert support(act_elem(p, x)) == act_descriptor(p, support(x))

    @given(elements, finperms)
    def test_agreeing_perms_act_equally(self, x, p):
        d = support(x)
        q = compose(p, swap(up(0, 11), up(0, 13)))
        if not d.member(up(0, 11)) and not d.member(up(0, 13)):
            assert elem_eq(act_elem(p, x), act_elem(q, x))

    @given(elements)
    def test_swap_test_characterizes_support(self, x):
        d = support(x)
        fresh = up(0, 15)
        assert not d.member(fresh)
        for atom in [a, b, bu, down(1, 0)]:
            if atom.sort != fresh.sort:
                continue
            same = elem_eq(act_elem(swap(fresh, atom), x), x)
            assert same == (not d.member(atom))


class TestAction:
    def test_atom_moves(self):
        assert act_elem(swap(a, b), Atm(a)) == Atm(b)

    def test_abs_structural(self):
        assert elem_eq(act_elem(swap(a, b), Abs(a, Atm(a))), Abs(b, Atm(b)))

    def test_fuzzy(self):
        assert act_elem(GenPerm(FIN_ID, 1), Fuzzy(0)) == Fuzzy(1)
        assert act_elem(swap(a, b), Fuzzy(7)) == Fuzzy(7)

    @given(elements, finperms, finperms)
    def test_group_action(self, x, p, q):
        assert elem_eq(act_elem(p, act_elem(q, x)), act_elem(compose(p, q), x))

    @given(elements, finperms)
    def test_action_invertible(self, x, p):
        assert elem_eq(act_elem(invert(p), act_elem(p, x)), x)


class TestAbsEquality:
    def test_rename(self):
        assert elem_eq(Abs(a, Atm(a)), Abs(b, Atm(b)))

    def test_capture_rejected(self):
        assert not elem_eq(Abs(a, Atm(b)), Abs(b, Atm(a)))

    def test_same_binder(self):
        assert elem_eq(Abs(a, Atm(b)), Abs(a, Atm(b)))
        assert not elem_eq(Abs(a, Atm(b)), Abs(a, Atm(c)))

    @given(elements)
    def test_injective_on_bodies(self, x):
        assert elem_eq(Abs(a, x), Abs(a, x))

    @given(elements, elements)
    def test_abs_injectivity(self, x, y):
        assert elem_eq(Abs(a, x), Abs(a, y)) == elem_eq(x, y)

    @given(elements)
    def test_rename_roundtrip(self, x):
        fresh = up(0, 17)
        assert not support(x).member(fresh)
        renamed = Abs(fresh, act_elem(swap(fresh, a), x))
        assert elem_eq(Abs(a, x), renamed)


class TestListAbs:
    def test_unrepresentable_residual(self):
        with pytest.raises(UnrepresentableError, match="unrepresentable abstraction"):
            listabs(HALF_BASE, PSetElem(COMB_SET))

    def test_extraction_round_trip(self):
        x = Tup((Atm(bu), PSetElem(COMB_SET)))
        hat = listabs(FULL_BASE, x)
        lst = fresh_list(ListMode.FULL, {bu})
        body = listabs_at(hat, lst)
        assert elem_eq(listabs(lst, body), hat)
        assert elem_eq(listabs_at(listabs(lst, body), lst), body)

    def test_extraction_needs_freshness(self):
        hat = listabs(fresh_list(ListMode.FULL, {a}), Atm(a))
        assert support(hat) == finite_set([a])
        with pytest.raises(NotFreshError):
            listabs_at(hat, FULL_BASE)

    def test_equivariant_body_ignores_list(self):
        hat = listabs(FULL_BASE, Atm(bu))
        other = fresh_list(ListMode.FULL, {bu, a, b})
        assert elem_eq(listabs_at(hat, other), Atm(bu))

    @given(elements)
    def test_injectivity(self, x):
        try:
            hat1 = listabs(FULL_BASE, x)
        except UnrepresentableError:
            return
        assert elem_eq(hat1, listabs(FULL_BASE, x))

    @given(elements, elements)
    def test_injectivity_pairs(self, x, y):
        try:
            hx, hy = listabs(FULL_BASE, x), listabs(FULL_BASE, y)
        except UnrepresentableError:
            return
        assert elem_eq(hx, hy) == elem_eq(x, y)

    @given(elements, finperms)
    def test_alpha_across_lists(self, x, p):
        try:
            hat = listabs(FULL_BASE, x)
        except UnrepresentableError:
            return
        moved = act_elem(p, hat)
        assert elem_eq(hat, moved) == elem_eq(hat, moved)  # total, no crash
        assert support(moved) == act_descriptor(p, support(hat))

    def test_mode_mismatch_unequal(self):
        hx = listabs(FULL_BASE, Unit("k"))
        hy = listabs(HALF_BASE, Unit("k"))
        assert not elem_eq(hx, hy)

    def test_factor_common(self):
        x = Tup((Atm(bu), PSetElem(COMB_SET)))
        y = PSetElem(COMB_SET)
        hats = [listabs(FULL_BASE, x), listabs(fresh_list(ListMode.FULL, {a}), y)]
        lst, bodies = factor_common(hats, avoid={c})
        for hat, body in zip(hats, bodies):
            assert elem_eq(listabs(lst, body), hat)
        assert not lst.support().member(bu)
        assert not lst.support().member(c)

    def test_factor_common_empty(self):
        lst, bodies = factor_common([], avoid=set())
        assert bodies == []

    def test_equality_transitive_across_lists(self):
        x = Tup((Atm(bu), PSetElem(COMB_SET)))
        h1 = listabs(FULL_BASE, x)
        l2 = fresh_list(ListMode.FULL, {bu, a})
        h2 = listabs(l2, listabs_at(h1, l2))
        l3 = fresh_list(ListMode.FULL, {bu, b, c})
        h3 = listabs(l3, listabs_at(h2, l3))
        assert elem_eq(h1, h2) and elem_eq(h2, h3) and elem_eq(h1, h3)

    def test_same_body_different_lists_equal(self):
        l2 = fresh_list(ListMode.FULL, {bu, a, b})
        assert elem_eq(listabs(FULL_BASE, Atm(bu)), listabs(l2, Atm(bu)))

    def test_different_residuals_unequal(self):
        cu = up(0, 3)
        assert not elem_eq(listabs(FULL_BASE, Atm(bu)), listabs(FULL_BASE, Atm(cu)))

    def test_list_capturing_the_residual_changes_support(self):
        capturing = FULL_BASE.act(swap(a, bu))  # bu occurs in this list
        hat = listabs(capturing, Atm(bu))
        assert support(hat) == EMPTY_SET
        assert not elem_eq(hat, listabs(FULL_BASE, Atm(bu)))
