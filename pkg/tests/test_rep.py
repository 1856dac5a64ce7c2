"""Representations: modules, morphisms, the standard complexes and the comodule conditions."""

import json

import pytest
import sympy
from hypothesis import given

import properties
from bocskit import (
    Bocs,
    box_complex,
    check_morphism,
    check_N_morphism,
    check_N_object,
    check_R_morphism,
    compose,
    data_path,
    diamond_complex,
    psi,
    verify_complex,
    xi_expand,
)
from bocskit.cli import _entries, _lmodule
from bocskit.rep import (
    LModule,
    cohomology_dims,
    dualize,
    identity,
    make_module,
    make_morphism,
    morphism_space_dim,
    n_compose,
    n_identity,
    simple,
)


def cY(running):
    data = json.loads(open(data_path("object_cY.json")).read())
    Y = _lmodule(data["Y"], 3)
    return Y, _entries(running, data["c"], Y, Y, paths=False)


class TestMorphisms:
    def test_identity(self, running_bocs):
        M = make_module(running_bocs, [1, 1, 1], {"a": [[1]], "b": [[1]]})
        assert check_morphism(running_bocs, identity(running_bocs, M)).ok

    def test_phi_gives_a_morphism_between_simples(self, running_bocs):
        b = running_bocs
        f = make_morphism(b, simple(b, 1), simple(b, 2), dashed={"phi": [[1]]})
        assert check_morphism(b, f).ok

    def test_simple_hom_dims(self, running_bocs):
        b = running_bocs
        dims = {(i, l): morphism_space_dim(b, simple(b, i), simple(b, l)) for i in (1, 2, 3) for l in (1, 2, 3)}
        assert dims == {(i, l): 1 for i in (1, 2, 3) for l in (1, 2, 3) if i <= l} | {
            (i, l): 0 for i in (1, 2, 3) for l in (1, 2, 3) if i > l
        }

    def test_composite_uses_the_dashed_differential(self, running_bocs):
        # d(chi) = psi@phi, so psi∘phi has a chi component
        b = running_bocs
        L1, L2, L3 = (simple(b, i) for i in (1, 2, 3))
        f = make_morphism(b, L1, L2, dashed={"phi": [[1]]})
        g = make_morphism(b, L2, L3, dashed={"psi": [[1]]})
        gf = compose(b, g, f)
        assert gf.dashed["chi"] == sympy.Matrix([[1]])
        assert not gf.dashed["psi"] and not gf.dashed["phi"]

    def test_shape_errors(self, running_bocs):
        with pytest.raises(ValueError):
            make_module(running_bocs, [1, 1])
        with pytest.raises(ValueError, match="shape"):
            make_module(running_bocs, [1, 1, 1], {"a": [[1, 1]]})


class TestComplexes:
    def test_box_cohomology_is_concentrated(self, running_bocs):
        b = running_bocs
        for i in (1, 2, 3):
            C = box_complex(b, i)
            assert verify_complex(b, C).ok
            assert {d: v for d, v in cohomology_dims(C, i).items() if v} == {0: 1}

    def test_dualize_is_an_involution_on_modules(self, running_bocs):
        M = box_complex(running_bocs, 1).modules[0]
        assert dualize(dualize(M)) == M

    def test_diamond_is_dual_shaped(self, running_bocs):
        b = running_bocs
        D = diamond_complex(b, 1)
        assert verify_complex(b, D).ok
        assert all(d <= 0 for d in D.degrees)


class TestComoduleConditions:
    def test_identity_morphism(self, running, running_bocs):
        b = running_bocs
        Y, c = cY(running)
        ident = n_identity(b, Y)
        assert check_N_morphism(b, ident, (Y, c), (Y, c)).ok
        assert n_compose(b, ident, ident) == ident
        sf = psi(b, ident, Y, Y, over="A")
        assert check_R_morphism(b, sf, (Y, psi(b, c, Y)), (Y, psi(b, c, Y))).ok

    def test_zero_object(self, running_bocs):
        Y = LModule.from_dims([1, 1, 1])
        assert check_N_object(running_bocs, Y, {}).ok
        assert verify_complex(running_bocs, xi_expand(running_bocs, Y, {})).ok

    def test_scaled_c_still_an_object(self, running, running_bocs):
        Y, c = cY(running)
        assert check_N_object(running_bocs, Y, {k: 3 * v for k, v in c.items()}).ok


@properties.suite_b
@given(properties.valid_biquivers())
def test_box_and_diamond_are_complexes(dbq):
    b = Bocs(dbq)
    for vertex in range(1, dbq.n + 1):
        assert verify_complex(b, box_complex(b, vertex)).ok
        assert verify_complex(b, diamond_complex(b, vertex)).ok
