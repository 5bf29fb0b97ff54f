import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from gamma2cat.monoidal import fixture
from gamma2cat.twocat import (
    FiniteTwoCategory,
    Transformation2,
    identity_functor,
    internal_equivalence_classes,
    is_isomorphism_of_two_categories,
    path_object,
    pi0,
    product_two_category,
    terminal_two_category,
    constant_functor_to_terminal,
    transformation_to_path_functor,
    two_equivalence_check,
    validate_two_category,
    validate_two_functor,
    validate_transformation,
    vseq,
)


def disc_z2():
    return fixture("F2").base


def test_terminal_valid():
    assert validate_two_category(terminal_two_category()).ok


def test_f3_valid_by_exhaustive_scan():
    rep = validate_two_category(fixture("F3").base)
    assert rep.ok
    assert rep.checked > 0


def test_f3_mutated_vcomp_reported():
    C = fixture("F3").base
    broken = FiniteTwoCategory(
        "F3x", C.objects,
        {f: (C.one_src[f], C.one_tgt[f], C.one_identity[f]) for f in C.one_src},
        {a: (C.two_src[a], C.two_tgt[a], C.two_identity[a]) for a in C.two_src},
        dict(C.vcomp_table), dict(C.hcomp1_table), dict(C.hcomp2_table),
    )
    broken.vcomp_table[("s1", "s1")] = "s1"  # the involution now fails a unit/assoc law
    rep = validate_two_category(broken)
    assert not rep.ok
    assert any(i.kind in ("unit", "assoc", "interchange") for i in rep.issues)


def test_structural_error_precedes_axiom_scan():
    C = fixture("F3").base
    broken = FiniteTwoCategory(
        "F3y", C.objects,
        {f: (C.one_src[f], C.one_tgt[f], C.one_identity[f]) for f in C.one_src},
        {a: (C.two_src[a], C.two_tgt[a], C.two_identity[a]) for a in C.two_src},
        dict(C.vcomp_table), dict(C.hcomp1_table), dict(C.hcomp2_table),
    )
    broken.vcomp_table[("s1", "s1")] = "not-a-cell"
    rep = validate_two_category(broken)
    assert not rep.ok
    assert rep.issues[0].kind == "structure"


def test_pi0():
    assert len(pi0(terminal_two_category())) == 1
    assert len(pi0(disc_z2())) == 2
    assert len(pi0(fixture("F3").base)) == 1


def test_internal_equivalence_classes():
    assert len(internal_equivalence_classes(terminal_two_category())) == 1
    assert len(internal_equivalence_classes(disc_z2())) == 2


def test_identity_functor_is_equivalence():
    C = fixture("F3").base
    rep = two_equivalence_check(identity_functor(C))
    assert rep.ok and rep.bijective_on_cells


def test_collapse_to_terminal_not_equivalence():
    C = disc_z2()
    T = terminal_two_category()
    F = constant_functor_to_terminal(C, T)
    assert validate_two_functor(F).ok
    rep = two_equivalence_check(F)
    assert not rep.ok
    assert rep.witness


def test_equivalence_induces_pi0_bijection():
    for name in ("F2", "F3", "F4"):
        C = fixture(name)
        base = C.base if hasattr(C, "base") else C
        F = identity_functor(base)
        if two_equivalence_check(F).ok:
            image_classes = {
                frozenset(F.omap[x] for x in cls) for cls in pi0(base)
            }
            assert len(image_classes) == len(pi0(base))


def test_path_object_terminal():
    po = path_object(terminal_two_category())
    assert po.total.counts() == (1, 1, 1)


def test_path_object_disc_z2_discrete():
    po = path_object(disc_z2())
    assert len(po.total.objects) == 2
    assert all(po.total.one_identity[f] for f in po.total.one_src)


def test_path_object_f4_squares():
    C = fixture("F4").base
    po = path_object(C)
    assert len(po.total.objects) == 2
    # (r, s) is a cell exactly when g.r = s.f in the group
    grp = {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x", ("x", "x"): "e"}
    expected = sum(
        1
        for f in ("e", "x") for g in ("e", "x")
        for r in ("e", "x") for s in ("e", "x")
        if grp[(g, r)] == grp[(s, f)]
    )
    assert len(po.total.one_src) == expected == 8
    assert validate_two_category(po.total).ok


@pytest.mark.parametrize("name", ["F2", "F3", "F4"])
def test_path_object_round_trip(name):
    C = fixture(name)
    base = C.base if hasattr(C, "base") else C
    po = path_object(base)
    ident = identity_functor(base)
    assert po.i.then(po.e0) == ident
    assert po.i.then(po.e1) == ident
    # the section followed by both evaluations is the diagonal
    prod = product_two_category([base, base])
    from gamma2cat.twocat import tuple_functor
    diag = tuple_functor([ident, ident], prod)
    both = tuple_functor([po.i.then(po.e0), po.i.then(po.e1)], prod)
    assert both == diag
    assert validate_two_functor(po.e0).ok
    assert validate_two_functor(po.e1).ok
    assert validate_two_functor(po.i).ok


def test_transformation_to_path_functor_bijection():
    C = fixture("F3").base
    po = path_object(C)
    ident = identity_functor(C)
    # a 2-natural transformation id => id with component the identity 1-cell
    t = Transformation2(ident, ident, {x: C.id1(x) for x in C.objects})
    assert validate_transformation(t).ok
    tilde = transformation_to_path_functor(t, po)
    assert validate_two_functor(tilde).ok
    assert tilde.then(po.e0) == ident
    assert tilde.then(po.e1) == ident


def _composable_two_cell_chains(C, length):
    out = []
    for cells in itertools.product(list(C.two_src), repeat=length):
        ok = all(
            C.two_src[cells[i + 1]] == C.two_tgt[cells[i]]
            for i in range(length - 1)
        )
        if ok:
            out.append(cells)
    return out


def test_pasting_fold_order_immaterial():
    # vertical folds taken in two different orders agree on every chain
    C = fixture("F5").base
    for chain in _composable_two_cell_chains(C, 3):
        a, b, c = chain
        assert C.vcomp(c, C.vcomp(b, a)) == C.vcomp(C.vcomp(c, b), a)
        assert vseq(C, a, b, c) == C.vcomp(C.vcomp(c, b), a)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1), st.integers(0, 1))
def test_interchange_on_f3(p, q, r, s):
    C = fixture("F3").base
    name = {0: "s0", 1: "s1"}
    lhs = C.vcomp(C.hcomp2(name[p], name[q]), C.hcomp2(name[r], name[s]))
    rhs = C.hcomp2(C.vcomp(name[p], name[r]), C.vcomp(name[q], name[s]))
    assert lhs == rhs


def test_single_entry_mutations_are_caught_or_harmless():
    C = fixture("F5").base
    rng = random.Random(7)
    tables = ["vcomp_table", "hcomp1_table", "hcomp2_table"]
    pools = {
        "vcomp_table": list(C.two_src),
        "hcomp1_table": list(C.one_src),
        "hcomp2_table": list(C.two_src),
    }
    for _ in range(30):
        tname = rng.choice(tables)
        table = dict(getattr(C, tname))
        key = rng.choice(list(table))
        new = rng.choice([v for v in pools[tname] if v != table[key]])
        table[key] = new
        mutated = FiniteTwoCategory(
            "F5mut", C.objects,
            {f: (C.one_src[f], C.one_tgt[f], C.one_identity[f]) for f in C.one_src},
            {a: (C.two_src[a], C.two_tgt[a], C.two_identity[a]) for a in C.two_src},
            table if tname == "vcomp_table" else dict(C.vcomp_table),
            table if tname == "hcomp1_table" else dict(C.hcomp1_table),
            table if tname == "hcomp2_table" else dict(C.hcomp2_table),
        )
        rep = validate_two_category(mutated)
        if not rep.ok:
            assert rep.first() is not None
