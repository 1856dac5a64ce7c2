from fractions import Fraction

import pytest
from hypothesis import given

import properties
from bocskit import (
    DualConstructionError,
    DualPresentation,
    hom_ext_matrices,
    koszul_dual,
    opposite,
    regularize,
    right_algebra_dim,
    ringel_dual,
    validate,
)
from bocskit.classify import enumerate_candidates
from bocskit.koszul import GRADED, UNSIGNED, find_superfluous, is_regular, rescale


def case(letter):
    (cand,) = [c for c in enumerate_candidates(4) if c.case == letter]
    return cand.biquiver


def test_graded_dual_differs_from_printed_signs_by_rescaling(running):
    graded = koszul_dual(running).biquiver
    unsigned = koszul_dual(running, convention=UNSIGNED).biquiver
    assert graded.count_matrices() == unsigned.count_matrices()
    assert graded != unsigned
    # flipping the dashed generators hat(c), hat(a), hat(b*a) turns one into the other
    assert rescale(graded, {"hat(c)": -1, "hat(a)": -1, "hat(b*a)": -1}) == unsigned


def test_unsigned_convention_breaks_on_four_vertices():
    dbq = case("K")
    with pytest.raises(DualConstructionError, match="square to zero"):
        koszul_dual(dbq, convention=UNSIGNED)
    assert validate(koszul_dual(dbq, convention=GRADED).biquiver).ok


def test_unknown_convention(running):
    with pytest.raises(ValueError):
        koszul_dual(running, convention="other")


def test_dual_metadata(running):
    pres = koszul_dual(running)
    assert isinstance(pres, DualPresentation)
    assert pres.kind == "koszul"
    assert pres.grouplikes == ("hat(e1)", "hat(e2)", "hat(e3)")
    assert ringel_dual(running).kind == "ringel"


def test_superfluous_pairs_of_the_running_dual(running):
    pairs = find_superfluous(koszul_dual(running))
    assert [(a, v) for a, v, _ in pairs] == [("hat(psi*a)", "hat(c)"), ("hat(b*phi)", "hat(c)")]
    assert is_regular(running)


def test_regularize_keeps_type_and_is_idempotent(running):
    pres = regularize(koszul_dual(running))
    assert isinstance(pres, DualPresentation)
    assert pres.log
    again = regularize(pres)
    assert again.biquiver == pres.biquiver
    assert regularize(running) == running


def test_bad_order(running):
    with pytest.raises(ValueError):
        regularize(running, order="sideways")


def test_ringel_dual_of_running_example(running):
    reg = regularize(ringel_dual(running)).biquiver
    assert reg.counts == (3, 3)
    assert not reg.relations
    assert ringel_dual(running).biquiver == opposite(koszul_dual(opposite(running)).biquiver)


def test_dimension_data(running):
    dims = hom_ext_matrices(running)
    assert [list(r) for r in dims.hom] == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    assert [list(r) for r in dims.ext] == [[0, 1, 1], [0, 0, 1], [0, 0, 0]]
    assert dims.dim_A == 7
    assert right_algebra_dim(running) == (21, {"A": 7, "phi": 2, "psi": 8, "chi": 4})


def test_rescale_round_trip(running):
    there = rescale(running, {"chi": Fraction(2), "a": Fraction(-3)})
    assert validate(there).ok
    assert rescale(there, {"chi": Fraction(1, 2), "a": Fraction(-1, 3)}) == running


@properties.suite_b
@given(properties.valid_biquivers())
def test_ringel_dual_is_valid(dbq):
    pres = ringel_dual(dbq)
    assert validate(pres.biquiver).ok
    assert validate(regularize(pres).biquiver).ok


@properties.suite_b
@given(properties.valid_biquivers(regular=True))
def test_regular_samples_have_regular_duals(dbq):
    reg = regularize(koszul_dual(dbq))
    assert is_regular(reg)
    assert not find_superfluous(reg)
