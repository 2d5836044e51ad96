"""𝒫(X) 的扭轉合成、η/ξ/θ 與 Θ 窗口"""

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from core.errors import InvalidInputError, NotFactoringError, PrecisionExhaustedError
from models.morphism import MorphismModel
from services.cyclic_poset_service import build_zn
from services.linearization_service import LinearizationService, PMorphism, PObject
from services.scalar_service import ScalarRing

RING = ScalarRing(prime=7, precision=6)
POSET, PHI = build_zn(4)
LIN = LinearizationService(POSET, RING, PHI)

objects = st.lists(st.integers(1, 4), min_size=1, max_size=2).map(lambda xs: PObject(tuple(xs)))
scalars = st.lists(st.integers(0, 6), min_size=0, max_size=3).map(RING.from_coeffs)


def morphisms(source: PObject, target: PObject):
    return st.lists(
        st.lists(scalars, min_size=len(source), max_size=len(source)), min_size=len(target), max_size=len(target)
    ).map(lambda entries: PMorphism(source, target, entries))


@st.composite
def composable(draw):
    a, b, c, d = (draw(objects) for _ in range(4))
    return draw(morphisms(a, b)), draw(morphisms(b, c)), draw(morphisms(c, d))


@hsettings(max_examples=50, deadline=None)
@given(composable())
def test_composition_is_associative(triple):
    f, g, h = triple
    left = LIN.compose(h, LIN.compose(g, f, strict=False), strict=False)
    right = LIN.compose(LIN.compose(h, g, strict=False), f, strict=False)
    assert left == right


def test_identity_is_neutral():
    V = LIN.obj(1, 3)
    f = LIN.basic(1, 3)
    assert LIN.compose(LIN.identity(PObject((3,))), f) == f
    assert LIN.compose(LIN.identity(V), LIN.identity(V)) == LIN.identity(V)


def test_basic_composition_twists_by_cocycle():
    assert LIN.compose(LIN.basic(2, 3), LIN.basic(1, 2)) == LIN.basic(1, 3)
    loop = LIN.compose(LIN.basic(3, 1), LIN.basic(1, 3))
    assert loop.entries[0][0] == RING.t_power(1)


def test_strict_composition_detects_truncation():
    short = LinearizationService(POSET, ScalarRing(prime=7, precision=1), PHI)
    with pytest.raises(PrecisionExhaustedError):
        short.compose(short.basic(3, 1), short.basic(1, 3))


def test_compose_rejects_mismatched_objects():
    with pytest.raises(InvalidInputError):
        LIN.compose(LIN.basic(2, 3), LIN.basic(1, 4))


def test_xi_after_eta_is_t():
    V = LIN.obj(1, 2, 3, 4)
    eta, xi, _ = LIN.eta_xi_theta(V)
    assert LIN.compose(xi, eta) == LIN.scalar_identity(V, RING.t_power(1))


def test_theta_factors_through_eta():
    d = LIN.basic(1, 3)
    theta = LIN.theta(d)
    assert LIN.compose(theta, LIN.eta(d.source)) == d


def test_theta_refuses_identity():
    with pytest.raises(NotFactoringError):
        LIN.theta(LIN.basic(1, 1))


def test_theta_window_is_functorial():
    assert LIN.theta_functoriality(LIN.basic(2, 3), LIN.basic(1, 2), range(-2, 3))


def test_model_roundtrip():
    f = LIN.compose(LIN.basic(3, 1), LIN.basic(1, 3))
    model = LIN.to_model(f)
    assert model.entries == [[0, 0, [0, 1]]]
    assert LIN.from_model(model) == f


@pytest.mark.parametrize("entry", [[0, 0], [5, 0, [1]], ["a", 0, [1]]])
def test_malformed_entries(entry):
    with pytest.raises(InvalidInputError):
        LIN.from_model(MorphismModel(source=[1], target=[1], entries=[entry]))
