"""The acceptance gate: one test (and one printed line) per criterion.

All checks are exact rational equalities; the only numeric limits are
the runtime budgets stated inside the criteria themselves.  Run with
``pytest -s tests/test_acceptance.py`` to see the per-criterion table.
"""

import pytest

from isopairs.acceptance import DEFAULT_SEED, run_all

RESULTS = None


@pytest.fixture(scope="module")
def results():
    global RESULTS
    if RESULTS is None:
        RESULTS = {r.number: r for r in run_all(seed=DEFAULT_SEED)}
    return RESULTS


def _check(results, number):
    r = results[number]
    print(r.line())
    assert r.passed, r.line()


def test_criterion_01_identity_validation(results):
    _check(results, 1)


def test_criterion_02_series_build_and_verify(results):
    _check(results, 2)
    assert results[2].seconds < 60.0


def test_criterion_03_envelope_oracle(results):
    _check(results, 3)


def test_criterion_04_parity_flip_duality(results):
    _check(results, 4)


def test_criterion_05_magnetic_pairs(results):
    _check(results, 5)


def test_criterion_06_sym2_verdict(results):
    _check(results, 6)


def test_criterion_07_superalgebras(results):
    _check(results, 7)
    assert results[7].seconds < 30.0


def test_criterion_08_triple_system(results):
    _check(results, 8)


def test_criterion_09_fundamental_module(results):
    _check(results, 9)


def test_criterion_10_gk_round_trip(results):
    _check(results, 10)


def test_criterion_11_graph_representations(results):
    _check(results, 11)


def test_criterion_12_wo_pair_sampling(results):
    _check(results, 12)


def test_criterion_13_serialization_round_trips(results):
    _check(results, 13)
