"""Shared hypothesis strategies and property checks.

Every check is a hypothesis test with a fixed seed (``BOCSKIT_SEED``), so
the acceptance run and the property module draw the same examples.
"""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import HealthCheck, given, seed, settings
from hypothesis import strategies as st

from bocskit import Bocs, check_N_object, check_R_object, koszul_dual, phi, psi, regularize, validate, verify_complex, xi_expand
from bocskit.algebra import word_source, word_target
from bocskit.koszul import is_regular
from bocskit.rep import LModule
from bocskit.sampling import random_biquiver, seed_from_env

SEED = seed_from_env()


def suite(n: int):
    def wrap(fn):
        fn = settings(max_examples=n, deadline=None, suppress_health_check=list(HealthCheck))(fn)
        return seed(SEED)(fn)

    return wrap


suite_a = suite(200)
suite_b = suite(50)

_seeds = st.integers(min_value=0, max_value=2**32 - 1)


def valid_biquivers(regular: bool = False, n: int | None = None):
    return _seeds.map(lambda s: random_biquiver(random.Random(s), n=n, regular=regular))


def random_object(rng: random.Random, b: Bocs, density: float = 0.3):
    """Small Y and a sparse c: Y -> V̄⊗Y with entries in {0, ±1}."""
    Y = LModule.from_dims(rng.choice((0, 1, 1, 2)) for _ in range(b.n))
    c = {}
    for x in b.vbar_basis:
        for k in range(Y.dim_at(word_source(x))):
            for j in range(Y.dim_at(word_target(x))):
                if rng.random() < density:
                    c[(x, k, j)] = Fraction(rng.choice((1, -1)))
    return Y, c


def objects(regular: bool = False):
    def build(pair):
        s, t = pair
        dbq = random_biquiver(random.Random(s), regular=regular)
        b = Bocs(dbq)
        Y, c = random_object(random.Random(t), b)
        return b, Y, c

    return st.tuples(_seeds, _seeds).map(build)


# -- checks --------------------------------------------------------------------


def dual_is_complex(dbq):
    pres = koszul_dual(dbq)
    report = validate(pres.biquiver)
    assert report.ok, report.summary()


def psi_phi_round_trip(b, Y, c):
    s = psi(b, c, Y)
    assert phi(s) == c
    again = psi(b, phi(s), Y)
    assert set(again) == set(s)
    assert all(again[u] == s[u] for u in s)


def object_condition_matches_complex(b, Y, c):
    dagger = check_N_object(b, Y, c).ok
    assert verify_complex(b, xi_expand(b, Y, c)).ok == dagger
    assert check_R_object(b, Y, psi(b, c, Y)).ok == dagger


def double_dual_counts(dbq):
    assert is_regular(dbq)
    once = regularize(koszul_dual(dbq))
    twice = regularize(koszul_dual(once))
    assert twice.biquiver.count_matrices() == dbq.count_matrices()


def regularize_order_free(dbq):
    pres = koszul_dual(dbq)
    low = regularize(pres, order="min").biquiver
    high = regularize(pres, order="max").biquiver
    assert low.count_matrices() == high.count_matrices()
    assert len(low.relations) == len(high.relations)


# -- seeded hypothesis runs (criterion 8) ----------------------------------------


@suite_a
@given(valid_biquivers())
def run_dual_is_complex(dbq):
    dual_is_complex(dbq)


@suite_a
@given(objects())
def run_psi_phi_round_trip(obj):
    psi_phi_round_trip(*obj)


@suite_b
@given(objects())
def run_object_condition(obj):
    object_condition_matches_complex(*obj)


@suite_b
@given(valid_biquivers(regular=True))
def run_double_dual(dbq):
    double_dual_counts(dbq)


@suite_a
@given(valid_biquivers())
def run_regularize_order(dbq):
    regularize_order_free(dbq)


ALL_RUNS = (run_dual_is_complex, run_psi_phi_round_trip, run_object_condition, run_double_dual, run_regularize_order)
