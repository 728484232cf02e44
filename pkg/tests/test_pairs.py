"""Pair structures and exhaustive checkers."""

import itertools
import json
from fractions import Fraction

import pytest

from isopairs import pairs as P
from isopairs.constructions import (
    random_even_perturbation,
    series_gl,
    series_q,
)
from isopairs.rng import Lcg64
from isopairs.supercore import CATALOG, SuperSpace

F = Fraction


def unit(k, d):
    return tuple(F(int(i == k)) for i in range(d))


def zero_pair(kind="isotopic"):
    v = SuperSpace.make(["a", "b"], [0, 1])
    return P.PairStructure(v, v, kind, {}, {})


def test_bracket_zero_inputs():
    p = series_gl(1, 1).pair
    z = (F(0),) * 4
    assert p.bracket(1, z, z, z) == z


def test_bracket_gl10_commutative():
    p = series_gl(1, 0).pair
    one = (F(1),)
    assert p.bracket(1, one, one, one) == (F(0),)


def test_bracket_gl20_example():
    ep = series_gl(2, 0)
    lab = list(ep.pair.v1.labels)
    e12, e11, e21 = lab.index("E0,1"), lab.index("E0,0"), lab.index("E1,0")
    out = ep.pair.bracket(1, unit(e21, 4), unit(e12, 4), unit(e11, 4))
    assert out == unit(e11, 4)


def test_bracket_space_mismatch():
    p = series_gl(1, 1).pair
    with pytest.raises(P.SpaceMismatch):
        p.bracket(1, (F(1),), (F(0),) * 4, (F(0),) * 4)
    with pytest.raises(P.SpaceMismatch):
        p.bracket(3, (F(0),) * 4, (F(0),) * 4, (F(0),) * 4)


def test_check_symmetry_envelope_and_zero():
    assert all(r.passed for r in P.check_symmetry(series_gl(1, 1).pair))
    assert all(r.passed for r in P.check_symmetry(zero_pair()))


def test_check_symmetry_constructed_violation():
    v = SuperSpace.make(["a", "b"], [0, 0])
    m1 = {(0, 0, 1): {0: F(1)}}  # m1(u, a, b) = a but m1(u, b, a) = 0
    p = P.PairStructure(v, v, "isotopic", m1, {})
    reports = P.check_symmetry(p)
    bad = [r for r in reports if not r.passed]
    assert bad and bad[0].failure_count == 2
    assert bad[0].failures[0].residual  # residual vector present


def test_jacobi_envelope_pass_and_zero():
    rs = P.check_jacobi_analog(series_gl(1, 1).pair)
    assert all(r.passed for r in rs)
    assert rs[0].total == 4**5
    assert all(r.passed for r in P.check_jacobi_analog(zero_pair()))


def test_jacobi_random_tensor_fails():
    rng = Lcg64(7)
    pert = random_even_perturbation(series_gl(1, 1).pair, rng)
    assert not P.verify(pert).passed


def test_compatibility_envelope_pass():
    assert all(r.passed for r in P.check_compatibility(series_q(1).pair))


def test_super_jordan_plus_envelope():
    from isopairs.constructions import SuperMatrixSpace, envelope_pair, unit as u_

    space = SuperMatrixSpace(1, 1)
    units = [u_(i, j) for i in range(2) for j in range(2)]
    ep = envelope_pair(space, units, units, "superJordan")
    assert all(r.passed for r in P.check_super_jordan(ep.pair))
    # the same plus-model tensors fail the checks for the wrong kind
    wrong = P.PairStructure(ep.pair.v1, ep.pair.v2, "isotopic", ep.pair.m1, ep.pair.m2)
    assert not all(r.passed for r in P.check_symmetry(wrong))


def test_parity_flip_involution_and_kinds():
    p = series_gl(1, 1).pair
    f = p.parity_flip()
    assert f.kind == "superJordan"
    assert f.v1.parities == tuple(1 - b for b in p.v1.parities)
    ff = f.parity_flip()
    assert ff.kind == p.kind
    assert ff.v1 == p.v1 and ff.m1 == p.m1 and ff.m2 == p.m2


def test_parity_flip_satisfies_super_jordan():
    f = series_gl(2, 1).pair.parity_flip()
    assert all(r.passed for r in P.check_super_jordan(f))


def test_parity_flip_full_verify():
    assert P.verify(series_gl(1, 1).pair.parity_flip()).passed


def test_verify_aggregate_and_named_failure():
    rep = P.verify(series_gl(1, 1).pair)
    assert rep.passed
    names = {r.identity for r in rep.reports}
    assert "jacobi_analog" in names and "compatibility" in names
    rng = Lcg64(11)
    bad = P.verify(random_even_perturbation(series_gl(1, 1).pair, rng))
    assert not bad.passed
    assert bad.failing()[0].identity in names


def test_verify_empty_spaces_vacuous():
    v0 = SuperSpace.make([], [])
    p = P.PairStructure(v0, v0, "isotopic", {}, {})
    rep = P.verify(p)
    assert rep.passed and all(r.total == 0 for r in rep.reports)


def test_fast_and_exact_paths_agree():
    for pair in (series_gl(1, 1).pair, series_q(1).pair):
        for name in ("jacobi_analog", "compatibility"):
            for orientation in (1, 2):
                fast = P._eval_identity(pair, CATALOG[name], orientation)
                exact = P._eval_identity(pair, CATALOG[name], orientation, exact=True)
                assert fast.to_json() == exact.to_json()
    rng = Lcg64(23)
    pert = random_even_perturbation(series_gl(1, 1).pair, rng)
    fast = P._eval_identity(pert, CATALOG["jacobi_analog"], 1)
    exact = P._eval_identity(pert, CATALOG["jacobi_analog"], 1, exact=True)
    assert fast.to_json() == exact.to_json()


def test_jobs_parallel_matches_sequential():
    pair = series_gl(1, 1).pair
    seq = P._eval_identity(pair, CATALOG["jacobi_analog"], 1)
    par = P._eval_identity(pair, CATALOG["jacobi_analog"], 1, jobs=2)
    assert seq.to_json() == par.to_json()


def test_fractional_constants_scale_exactly():
    # scaling a valid pair by 1/3 keeps every identity (they are
    # homogeneous in m) and exercises the integer-scaling fast path
    base = series_gl(1, 1).pair
    scale = F(1, 3)
    m1 = {k: {o: c * scale for o, c in v.items()} for k, v in base.m1.items()}
    m2 = {k: {o: c * scale for o, c in v.items()} for k, v in base.m2.items()}
    scaled = P.PairStructure(base.v1, base.v2, base.kind, m1, m2)
    assert P.verify(scaled).passed
    for name in ("jacobi_analog", "compatibility"):
        fast = P._eval_identity(scaled, CATALOG[name], 1)
        exact = P._eval_identity(scaled, CATALOG[name], 1, exact=True)
        assert fast.to_json() == exact.to_json()
    rng = Lcg64(61)
    pert = random_even_perturbation(scaled, rng)
    fast = P._eval_identity(pert, CATALOG["jacobi_analog"], 1)
    exact = P._eval_identity(pert, CATALOG["jacobi_analog"], 1, exact=True)
    assert fast.to_json() == exact.to_json()
    assert not fast.passed


def test_basis_checking_matches_element_checking():
    # multilinearity: the residual on random homogeneous elements equals
    # the multilinear combination of basis-tuple residuals (zero for a
    # verified pair, matching prediction for a corrupted one)
    rng = Lcg64(31)
    pair = series_gl(1, 1).pair
    ident = CATALOG["jacobi_analog"]
    sides = ident.sides
    for _ in range(10):
        vectors, parities = {}, {}
        for letter, side in sides.items():
            space = pair.space(side)
            par = rng.below(2)
            idxs = [i for i, p in enumerate(space.parities) if p == par]
            v = [F(0)] * space.dim
            for i in idxs:
                v[i] = rng.coefficient()
            vectors[letter] = tuple(v)
            parities[letter] = par
        assert P.residual_on_vectors(pair, ident, 1, vectors, parities) == {}

    pert = random_even_perturbation(pair, rng)
    letters = sorted(sides, key="XYZUV".index)
    vectors = {}
    parities = {}
    for letter in letters:
        space = pert.space(sides[letter])
        idxs = [i for i, p in enumerate(space.parities) if p == 0]
        v = [F(0)] * space.dim
        for i in idxs:
            v[i] = rng.coefficient()
        vectors[letter] = tuple(v)
        parities[letter] = 0
    got = P.residual_on_vectors(pert, ident, 1, vectors, parities)
    # basis-derived prediction
    dims = [pert.space(sides[l]).dim for l in letters]
    predicted = {}
    for combo in itertools.product(*(range(d) for d in dims)):
        coeff = F(1)
        for l, i in zip(letters, combo):
            coeff *= vectors[l][i]
        if not coeff:
            continue
        basis_vecs = {
            l: unit(i, pert.space(sides[l]).dim) for l, i in zip(letters, combo)
        }
        basis_par = {l: pert.space(sides[l]).parities[i] for l, i in zip(letters, combo)}
        res = P.residual_on_vectors(pert, ident, 1, basis_vecs, basis_par)
        for o, c in res.items():
            v = predicted.get(o, 0) + coeff * c
            if v:
                predicted[o] = v
            else:
                predicted.pop(o, None)
    assert got == predicted


def test_failure_residual_parity_is_even():
    # residuals of an even tensor's failures live in the parity component
    # fixed by the tuple (evenness of the identity)
    rng = Lcg64(47)
    pert = random_even_perturbation(series_gl(1, 1).pair, rng)
    for rep in P.verify(pert).failing():
        if rep.identity.startswith("evenness"):
            continue
        sides = P._orient(CATALOG[rep.identity].sides, rep.orientation)
        out_space = pert.space(P._value_side(
            CATALOG[rep.identity].residual_terms()[0].expr, sides))
        for f in rep.failures:
            tuple_parity = sum(
                pert.space(sides[l]).parities[i] for l, i in f.where.items()
            ) % 2
            for o in f.residual:
                assert out_space.parities[o] == tuple_parity


def test_pair_json_round_trip_byte_identical():
    p = series_gl(1, 1).pair
    s1 = json.dumps(p.to_json(), sort_keys=True, separators=(",", ":"))
    p2 = P.PairStructure.from_json(json.loads(s1))
    s2 = json.dumps(p2.to_json(), sort_keys=True, separators=(",", ":"))
    assert s1 == s2
    assert p2.m1 == p.m1 and p2.v1 == p.v1


def test_report_json_round_trip():
    rep = P.verify(series_gl(1, 1).pair)
    s1 = json.dumps(rep.to_json(), sort_keys=True, separators=(",", ":"))
    rt = P.VerifyReport.from_json(json.loads(s1))
    s2 = json.dumps(rt.to_json(), sort_keys=True, separators=(",", ":"))
    assert s1 == s2


def test_adopted_form_recorded():
    rep = P.verify(series_gl(1, 1).pair)
    sym = next(r for r in rep.reports if r.identity == "antisymmetry.isotopic")
    assert sym.adopted_form.startswith("corrected")
    jac = next(r for r in rep.reports if r.identity == "jacobi_analog")
    assert jac.adopted_form == "printed"
