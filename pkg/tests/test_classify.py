import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

import properties
from bocskit import classify, enumerate_candidates, normalize_class, ringel_pairing, validate
from bocskit.algebra import scalar
from bocskit.classify import (
    M3_SLOTS,
    ClassifyError,
    CurvelikeCandidate,
    _m3_vector,
    _reduce,
    apply_change,
    apply_constraints,
    bridge_witness,
    class_label,
    composition_witness,
    dual_counts,
    identify,
    moves_for,
    pairing_problems,
    rename,
)
from bocskit.koszul import rescale

TEXTS = [t for _, t in M3_SLOTS[4]]


@pytest.fixture(scope="module")
def survivors4():
    return apply_constraints(enumerate_candidates(4))[0]


def test_enumeration_sizes():
    assert len(enumerate_candidates(2)) == 1
    assert len(enumerate_candidates(3)) == 8
    assert len(enumerate_candidates(4)) == 40


def test_three_vertex_exclusions():
    survivors, excluded = apply_constraints(enumerate_candidates(3))
    assert sorted(c.label for c in survivors) == ["2A", "2B", "2C"]
    reasons = {e.candidate: e.reason for e in excluded}
    assert reasons == {"1A": "composition", "1B": "composition", "1C": "composition", "1D": "composition", "2D": "bridge"}


def test_four_vertex_rows(survivors4):
    assert sorted(c.case for c in survivors4) == list("ABCGHIJK")


def test_bad_inputs():
    with pytest.raises(ClassifyError):
        classify(5)
    with pytest.raises(ClassifyError):
        CurvelikeCandidate(4, (1, 0))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_representatives_pass_every_filter(n):
    for entry in classify(n).classes:
        dbq = entry.candidate.biquiver
        assert validate(dbq).ok
        assert composition_witness(dbq) is None
        assert bridge_witness(dbq) is None


def test_regularised_ringel_duals_are_curve_like():
    for entry in classify(4).classes:
        assert dual_counts(entry.candidate.biquiver) == ((6, 6), 0), entry.label


def test_moves_realise_the_reduction(survivors4):
    """Applying the chosen changes of generators reaches the reduced vector."""
    for cand in survivors4:
        for m3 in itertools.product((0, 1, -1), repeat=3):
            variant = cand.with_m3(m3)
            moves = moves_for(variant)
            if not moves:
                continue
            target = _reduce(variant.m3, moves, TEXTS)
            for m in moves:
                assert target[TEXTS.index(m.clears)] == 0
            dbq = variant.biquiver
            # effects are linear in mu, so the solved coefficients can be applied one by one
            for m, c in zip(moves, _coefficients(variant.m3, moves)):
                dbq = apply_change(dbq, m.generator, m.correction, mu=-c)
            assert _m3_vector(dbq) == target
            assert validate(dbq).ok


def _coefficients(vector, moves):
    cols = [TEXTS.index(m.clears) for m in moves]
    A = sympy.Matrix([[m.effect[c] for m in moves] for c in cols])
    return [scalar(x) for x in A.LUsolve(sympy.Matrix([vector[c] for c in cols]))]


def test_normalisation_is_idempotent(survivors4):
    for cand in survivors4:
        for m3 in itertools.product((0, 1), repeat=3):
            once = normalize_class(cand.with_m3(m3))
            assert normalize_class(once) == once


def test_fully_cleared_rows_have_one_form(survivors4):
    for cand in survivors4:
        if cand.case not in "CJK":
            continue
        forms = {normalize_class(cand.with_m3(m3)) for m3 in itertools.product((0, 1, -1), repeat=3)}
        assert len(forms) == 1
        assert not any(next(iter(forms)).m3)


def test_suffix_separates_classes(survivors4):
    (A,) = [c for c in survivors4 if c.case == "A"]
    one, two = normalize_class(A.with_m3((0, 0, 0))), normalize_class(A.with_m3((1, 0, 0)))
    assert (class_label(one), class_label(two)) == ("A1", "A2")
    assert one != two


def test_classify_is_stable():
    report = classify(4)
    assert classify(4) is report
    assert not pairing_problems(ringel_pairing(report))
    data = report.as_dict()
    assert set(data) == {"n", "header", "classes", "excluded", "problems"}
    assert {c["label"] for c in data["classes"] if "note" in c} == {"A1", "B1", "B2", "G1"}
    assert all(set(e) == {"candidate", "reason", "witness"} for e in data["excluded"])


def test_pairing_is_an_involution():
    pairing = ringel_pairing(classify(4))
    assert all(pairing[pairing[x]] == x for x in pairing)
    assert ringel_pairing(classify(3)) == {"2A": "2B", "2B": "2A", "2C": "2C"}
    assert ringel_pairing(classify(2)) == {"1": "1"}


@properties.suite_b
@given(st.sampled_from(classify(4).labels), st.integers(0, 2**32 - 1))
def test_identify_ignores_names_and_scalars(label, s):
    rng = random.Random(s)
    dbq = classify(4).entry(label).candidate.biquiver
    names = [a.name for a in dbq.quiver.arrows]
    fresh = [f"x{k}" for k in range(len(names))]
    rng.shuffle(fresh)
    mapping = dict(zip(names, fresh))
    solid = [mapping[a.name] for a in dbq.quiver.solid]
    renamed = rename(dbq, mapping)
    scaled = rescale(renamed, {x: Fraction(rng.choice((1, -1, 2, -3))) for x in solid})
    assert identify(scaled) == label
