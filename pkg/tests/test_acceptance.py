"""One test per acceptance criterion; the conftest hook prints PASS/FAIL per number."""

import json
from fractions import Fraction

import properties
from oracles import right_algebra_dim_bruteforce

from bocskit import (
    box_complex,
    check_N_object,
    classify,
    data_path,
    diamond_complex,
    format_biquiver,
    koszul_dual,
    psi,
    regularize,
    right_algebra_dim,
    ringel_pairing,
    verify_complex,
    xi_expand,
)
from bocskit.algebra import word_str
from bocskit.bocs import path_of
from bocskit.classify import dual_counts, enumerate_candidates
from bocskit.cli import _entries, _lmodule
from bocskit.koszul import UNSIGNED
from bocskit.rep import describe_residue


def _object(running, name):
    data = json.loads(open(data_path(name)).read())
    Y = _lmodule(data["Y"], running.n)
    return Y, _entries(running, data["c"], Y, Y, paths=False)


def _lines(dbq):
    return set(format_biquiver(dbq).splitlines())


def test_criterion_1(running_bocs):
    b = running_bocs
    dims = {}
    for i in (1, 2, 3):
        C = box_complex(b, i)
        assert verify_complex(b, C).ok
        dims[i] = [C.modules[d].dim for d in C.degrees]
    assert dims == {1: [4, 4, 1], 2: [2, 1], 3: [1]}
    D = diamond_complex(b, 3)
    assert verify_complex(b, D).ok
    assert list(D.degrees) == [-2, -1, 0]
    assert [D.modules[d].dim for d in D.degrees] == [1, 4, 4]


def test_criterion_2(running, running_bocs):
    b = running_bocs
    Y, cY = _object(running, "object_cY.json")
    assert check_N_object(b, Y, cY).ok
    assert verify_complex(b, xi_expand(b, Y, cY)).ok

    Y, ct = _object(running, "object_ctilde.json")
    res = check_N_object(b, Y, ct)
    assert not res.ok
    ((word, k, j, coef),) = res.residues
    assert word_str(word) == "psi@phi" and abs(coef) == 1
    assert describe_residue(b, Y, res.residues) == ["1 psi@phi⊗v1 in the image of w3"]

    bad = verify_complex(b, xi_expand(b, Y, ct))
    assert not bad.ok
    ((degree, what, where, basis, value),) = bad.residues
    assert (what, where, basis) == ("d^2", "omega_3", "e3⊗w3")
    assert {k: abs(v) for k, v in value.items()} == {"psi@phi⊗v1": 1}


def test_criterion_3(running, running_bocs):
    b = running_bocs
    Y, cY = _object(running, "object_cY.json")
    s = psi(b, cY, Y)
    nonzero = {word_str(x): m.tolist() for x, m in s.items() if any(m)}
    # rows index v2, columns index (v3, w3)
    assert nonzero == {"psi": [[1, 1]]}
    assert set(map(word_str, s)) == {"psi", "phi", "chi", "psi*a", "b*phi"}


def test_criterion_4(running):
    pres = koszul_dual(running, convention=UNSIGNED)
    dbq = pres.biquiver
    assert [a.name for a in dbq.quiver.solid] == ["hat(chi)", "hat(phi)", "hat(psi)", "hat(psi*a)", "hat(b*phi)"]
    assert [a.name for a in dbq.quiver.dashed] == ["hat(a)", "hat(b)", "hat(c)", "hat(b*a)"]
    q = dbq.quiver
    assert dbq.relations == ({path_of(q, ["hat(chi)"]): 1, path_of(q, ["hat(psi)", "hat(phi)"]): 1},)
    assert dbq.differential("hat(psi*a)") == dbq.expr("hat(c) + hat(psi)*hat(a)")
    assert dbq.differential("hat(b*phi)") == dbq.expr("hat(c) + hat(b)*hat(phi)")
    assert dbq.differential("hat(b*a)") == dbq.expr("hat(b)@hat(a)")
    assert len(dbq.d0) + len(dbq.d1) == 3
    assert {
        "relation hat(chi) + hat(psi)*hat(phi)",
        "d(hat(psi*a)) = hat(c) + hat(psi)*hat(a)",
        "d(hat(b*phi)) = hat(c) + hat(b)*hat(phi)",
        "d(hat(b*a)) = hat(b)@hat(a)",
    } <= _lines(dbq)


def test_criterion_5(running):
    reg = regularize(koszul_dual(running, convention=UNSIGNED)).biquiver
    assert {a.name for a in reg.quiver.solid} == {"hat(phi)", "hat(psi)", "hat(b*phi)"}
    assert {a.name for a in reg.quiver.dashed} == {"hat(a)", "hat(b)", "hat(b*a)"}
    assert not reg.relations
    assert reg.differential("hat(b*phi)") == reg.expr("hat(b)*hat(phi) - hat(psi)*hat(a)")


def test_criterion_6():
    by_case = {}
    for cand in enumerate_candidates(4):
        by_case.setdefault(cand.case, []).append(cand)
    (D,) = by_case["D"]
    (H,) = by_case["H"]
    assert dual_counts(D.biquiver)[0] == (8, 7)
    assert dual_counts(H.biquiver) == ((6, 6), 0)
    reasons = {e.candidate: e.reason for e in classify(4).excluded}
    for letter in "DEF":
        assert reasons[letter] == "dual-dimension"
    assert "H" not in reasons


def test_criterion_7():
    assert classify(2).labels == ["1"]
    assert classify(3).labels == ["2A", "2B", "2C"]
    report = classify(4)
    assert report.labels == ["A1", "A2", "B1", "B2", "C", "G1", "G2", "H1", "H2", "I1", "I2", "J", "K"]
    assert not report.problems
    pairing = ringel_pairing(report)
    expected = {"B1": "B1", "B2": "B2", "K": "K"}
    for x, y in (("A1", "G1"), ("A2", "G2"), ("C", "J"), ("H1", "I1"), ("H2", "I2")):
        expected[x], expected[y] = y, x
    assert pairing == expected
    assert {e.label for e in report.classes if e.flagged} == {"A1", "B1", "B2", "G1"}


def test_criterion_8():
    for run in properties.ALL_RUNS:
        run()


def test_criterion_9(running, running_bocs):
    dim, parts = right_algebra_dim(running)
    oracle, oracle_parts = right_algebra_dim_bruteforce(running_bocs)
    assert dim == oracle == 21
    assert sum(parts.values()) == dim
    assert Fraction(sum(oracle_parts.values())) == 21
