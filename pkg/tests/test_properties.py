"""Invariants beyond the acceptance suite, on the same seeded samples."""

import random
from fractions import Fraction

from hypothesis import given, strategies as st

import properties
from bocskit import (
    Bocs,
    check_N_morphism,
    check_N_object,
    hom_ext_matrices,
    koszul_dual,
    opposite,
    regularize,
    ringel_dual,
    validate,
)
from bocskit.algebra import word_source, word_target
from bocskit.koszul import is_regular
from bocskit.rep import n_compose, n_identity
from bocskit.sampling import make_rng, random_biquiver, seed_from_env


def transpose_reversed(m):
    n = len(m)
    return tuple(tuple(m[n - 1 - j][n - 1 - i] for j in range(n)) for i in range(n))


@properties.suite_b
@given(properties.valid_biquivers())
def test_sampler_output_is_valid(dbq):
    assert validate(dbq).ok


@properties.suite_b
@given(properties.objects(), st.integers(0, 2**32 - 1))
def test_object_condition_survives_change_of_basis(obj, s):
    b, Y, c = obj
    rng = random.Random(s)
    lam = {(i, k): Fraction(rng.choice((1, -1, 2, 3))) for i in range(1, b.n + 1) for k in range(Y.dim_at(i))}
    moved = {(x, k, j): v * lam[(word_target(x), j)] / lam[(word_source(x), k)] for (x, k, j), v in c.items()}
    assert check_N_object(b, Y, moved).ok == check_N_object(b, Y, c).ok


@properties.suite_b
@given(properties.objects())
def test_identity_laws_for_comodule_morphisms(obj):
    b, Y, c = obj
    if not check_N_object(b, Y, c).ok:
        return
    ident = n_identity(b, Y)
    assert check_N_morphism(b, ident, (Y, c), (Y, c)).ok
    assert n_compose(b, ident, ident) == ident


@properties.suite_b
@given(properties.valid_biquivers())
def test_opposite_commutes_with_counts(dbq):
    solid, dashed = dbq.count_matrices()
    op_solid, op_dashed = opposite(dbq).count_matrices()
    assert op_solid == transpose_reversed(solid)
    assert op_dashed == transpose_reversed(dashed)


@properties.suite_b
@given(properties.valid_biquivers())
def test_ringel_dual_is_conjugated_koszul_dual(dbq):
    direct = ringel_dual(dbq).biquiver
    assert direct == opposite(koszul_dual(opposite(dbq)).biquiver)


@properties.suite_b
@given(properties.valid_biquivers(regular=True))
def test_standard_hom_matrix_is_unitriangular(dbq):
    dims = hom_ext_matrices(dbq)
    n = dbq.n
    for i in range(n):
        assert dims.hom[i][i] == 1
        assert dims.ext[i][i] == 0
        for l in range(i):
            assert dims.hom[i][l] == 0 and dims.ext[i][l] == 0


@properties.suite_b
@given(properties.valid_biquivers())
def test_regularize_is_idempotent(dbq):
    once = regularize(koszul_dual(dbq)).biquiver
    assert regularize(once) == once


def test_seed_comes_from_environment(monkeypatch):
    monkeypatch.setenv("BOCSKIT_SEED", "41")
    assert seed_from_env() == 41
    assert random_biquiver(make_rng()) == random_biquiver(random.Random(41))
    monkeypatch.delenv("BOCSKIT_SEED")
    assert seed_from_env() == 20171017


def test_regular_sampler_is_regular():
    rng = random.Random(5)
    assert all(is_regular(random_biquiver(rng, regular=True)) for _ in range(20))
    assert isinstance(Bocs(random_biquiver(rng)), Bocs)
