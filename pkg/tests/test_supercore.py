"""Sign kernel and free-envelope validator."""

import itertools

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isopairs import supercore as sc

bits = st.integers(0, 1)


def test_sign_a_values():
    assert sc.sign_a(0, 0, 0) == 1
    assert sc.sign_a(1, 1, 1) == -1
    assert sc.sign_a(1, 0, 1) == -1


def test_sign_b_values():
    assert sc.sign_b(0, 0, 0, 0) == 1
    assert sc.sign_b(1, 1, 1, 1) == 1
    assert sc.sign_b(1, 1, 0, 0) == -1


@given(bits, bits, bits)
def test_sign_a_symmetric(p, q, r):
    base = sc.sign_a(p, q, r)
    for perm in itertools.permutations((p, q, r)):
        assert sc.sign_a(*perm) == base


@given(bits, bits, bits, bits)
def test_sign_b_cyclic_and_reversal(p, q, r, s):
    base = sc.sign_b(p, q, r, s)
    assert sc.sign_b(q, r, s, p) == base
    assert sc.sign_b(s, r, q, p) == base


def test_superspace_invariants():
    space = sc.SuperSpace.make(["a", "b", "c"], [0, 1, 0])
    assert space.dim == 3
    assert space.even_dim == 2 and space.odd_dim == 1
    assert space.flipped().parities == (1, 0, 1)
    with pytest.raises(ValueError):
        sc.SuperSpace.make(["a", "a"], [0, 0])


def test_expand_commutator_all_even():
    t = sc.template(sc.term(1, sc.NO_SIGN, sc.Bracket(sc.X, sc.Y, sc.U, "comm")))
    words = sc.expand_template(t, {"X": 0, "Y": 0, "U": 0})
    assert words == {("X", "U", "Y"): 1, ("Y", "U", "X"): -1}


def test_expand_commutator_odd_pair():
    t = sc.template(sc.term(1, sc.NO_SIGN, sc.Bracket(sc.X, sc.Y, sc.U, "comm")))
    words = sc.expand_template(t, {"X": 1, "Y": 1, "U": 0})
    assert words == {("X", "U", "Y"): 1, ("Y", "U", "X"): 1}


def test_expand_circle_all_even():
    t = sc.template(sc.term(1, sc.NO_SIGN, sc.Bracket(sc.X, sc.Y, sc.U, "circ")))
    words = sc.expand_template(t, {"X": 0, "Y": 0, "U": 0})
    assert words == {("X", "U", "Y"): 1, ("Y", "U", "X"): 1}


def test_expansion_linear_in_terms():
    t1 = sc.template(sc.term(1, sc.NO_SIGN, sc.Bracket(sc.X, sc.Y, sc.U, "comm")))
    t2 = sc.template(
        sc.term(Fraction(1, 2), sc.apairs("X", "U", "Y"), sc.WordExpr(("X", "U", "Y")))
    )
    both = sc.IdentityTemplate(t1.terms + t2.terms)
    for bitsv in itertools.product((0, 1), repeat=3):
        parities = dict(zip(("X", "Y", "U"), bitsv))
        a = sc.expand_template(t1, parities)
        b = sc.expand_template(t2, parities)
        merged = sc._word_add(a, b)
        assert merged == sc.expand_template(both, parities)


def test_validate_antisymmetry_adopted_and_printed():
    rep = sc.ANTISYM_ISOTOPIC.validate()
    assert rep.equal and len(rep.verdicts) == 8
    printed = sc.ANTISYM_ISOTOPIC.validate_printed()
    assert not printed.equal
    # already fails on the all-even assignment
    assert not printed.verdicts[0].equal


def test_validate_jordan_symmetry():
    assert sc.SYMMETRY_JORDAN.validate().equal


def test_naive_swap_fails():
    lhs = sc.template(sc.term(1, sc.NO_SIGN, sc.Bracket(sc.X, sc.Y, sc.U, "comm")))
    rhs = sc.template(sc.term(1, sc.NO_SIGN, sc.Bracket(sc.Y, sc.X, sc.U, "comm")))
    rep = sc.validate_identity(lhs, rhs)
    assert not rep.verdicts[0].equal  # all-even already mismatches


def test_catalog_all_adopted_forms_validate():
    report = sc.validate_catalog()
    for name, entry in report.items():
        assert entry["adopted_equal"], name
        if "printed_equal" in entry:
            assert entry["printed_equal"] is False, name


def test_even_assignment_reduces_to_plain_check():
    # with all letters even every A and B factor is +1
    for ident in sc.CATALOG.values():
        letters = tuple(
            sorted(
                set(ident.lhs.letters()) | set(ident.rhs.letters()),
                key=sc.LETTERS.index,
            )
        )
        parities = {l: 0 for l in letters}
        for t in ident.lhs.terms + ident.rhs.terms:
            assert sc.eval_sign_pairs(t.sign_pairs, parities) == 1


def test_find_correction_rediscovers_adopted_forms():
    for ident in (sc.ANTISYM_ISOTOPIC, sc.SUPER_JORDAN, sc.REP_IDENTITY_2):
        found = sc.find_correction(ident.lhs, ident.printed_rhs)
        assert found is not None
        cand, _ = found
        assert sc.validate_identity(ident.lhs, cand).equal
        assert cand == ident.rhs


def test_validation_report_json():
    rep = sc.SUPER_JORDAN.validate_printed()
    data = rep.to_json()
    assert data["equal"] is False
    bad = [a for a in data["assignments"] if not a["equal"]]
    assert bad and "diff_word" in bad[0]
