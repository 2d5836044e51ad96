"""C_φ(Z_n)：穩定 Hom、平移、叢、突變與箭圖"""

from itertools import product

import numpy as np
import pytest

from core.errors import InvalidInputError, InvalidPairError, NotInClusterError, WindowTooSmallError
from services.cyclic_poset_service import build_zn
from services.stable_cluster_service import (
    Arc,
    StableClusterService,
    build_zigzag,
    catalan,
    component_label,
    fz_mutate,
    polygon_triangulations,
)


def _service(n: int) -> StableClusterService:
    return StableClusterService(*build_zn(n))


def _fan(service: StableClusterService) -> frozenset:
    return frozenset(service.arc(1, k) for k in (3, 4, 5))


def test_arcs_are_the_diagonals(stable_z6):
    arcs = stable_z6.arcs()
    assert len(arcs) == 9
    assert Arc(1, 2) not in arcs and Arc(1, 6) not in arcs
    assert stable_z6.is_proj_inj(stable_z6.arc(6, 1))


def test_arc_is_canonical(stable_z6):
    assert stable_z6.arc(5, 2) == Arc(2, 5)
    assert stable_z6.arc(2, 5).label() == "E(2,5)"
    with pytest.raises(InvalidPairError):
        stable_z6.arc(3, 3)


def test_hom_and_ext_dimensions(stable_z6):
    e13, e14, e24 = stable_z6.arc(1, 3), stable_z6.arc(1, 4), stable_z6.arc(2, 4)
    assert stable_z6.stable_hom_dim(e13, e13) == 1
    assert stable_z6.ext_dim(e13, e24) == 1
    assert stable_z6.ext_dim(e13, e14) == 0
    assert stable_z6.crosses(e13, e24) or stable_z6.crosses(e24, e13)
    assert stable_z6.compatible(e13, e14)
    assert not stable_z6.compatible(e13, e24)


def test_shift_and_tau(stable_z6):
    X = stable_z6.arc(1, 3)
    assert stable_z6.shift(X) == Arc(2, 6)
    assert stable_z6.tau(X) == Arc(2, 6)
    for arc in stable_z6.arcs():
        assert stable_z6.shift(stable_z6.shift(arc, 1), -1) == arc
        assert stable_z6.shift(arc, 2) == stable_z6.shift(stable_z6.shift(arc))


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_two_calabi_yau(n):
    service = _service(n)
    arcs = service.arcs()
    for X in arcs:
        for Y in arcs:
            assert service.ext_dim(X, Y) == service.ext_dim(Y, X)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_cluster_count_is_catalan(n):
    service = _service(n)
    clusters = service.enumerate_clusters()
    triangulations = polygon_triangulations(list(range(1, n + 1)))
    assert len(clusters) == catalan(n - 2) == len(triangulations)
    assert {frozenset((a.x0, a.x1) for a in c) for c in clusters} == set(triangulations)


def test_catalan_values():
    assert [catalan(k) for k in range(2, 7)] == [2, 5, 14, 42, 132]


def test_mutation_of_the_fan(stable_z6):
    fan = _fan(stable_z6)
    mutation = stable_z6.mutate(stable_z6.arc(1, 4), fan)
    assert (mutation.a, mutation.b) == (3, 5)
    assert mutation.new == Arc(3, 5)

    mutated = stable_z6.mutated_cluster(stable_z6.arc(1, 4), fan)
    assert mutated == frozenset({Arc(1, 3), Arc(1, 5), Arc(3, 5)})
    assert stable_z6.mutate(Arc(3, 5), mutated).new == Arc(1, 4)


def test_mutate_rejects_foreign_arc(stable_z6):
    with pytest.raises(NotInClusterError):
        stable_z6.mutate(stable_z6.arc(2, 4), _fan(stable_z6))


def test_exchange_triangles_middle_terms(stable_z6):
    first, second = stable_z6.exchange_triangles(stable_z6.arc(1, 4), _fan(stable_z6))
    assert stable_z6.stable_middle(first) == [Arc(1, 5)]
    assert stable_z6.stable_middle(second) == [Arc(1, 3)]


def test_fan_quiver(stable_z6):
    model = stable_z6.quiver_model(_fan(stable_z6))
    assert model.vertices == ["E(1,3)", "E(1,4)", "E(1,5)"]
    assert model.edges == [["E(1,3)", "E(1,4)"], ["E(1,4)", "E(1,5)"]]


def test_quiver_mutation_matches_fomin_zelevinsky(stable_z6):
    fan = _fan(stable_z6)
    for T in sorted(fan):
        assert stable_z6.fz_agrees(T, fan)


def test_fz_mutate_on_a3():
    B = np.array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    expected = np.array([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])
    assert np.array_equal(fz_mutate(B, 1), expected)
    assert np.array_equal(fz_mutate(fz_mutate(B, 1), 1), B)


def test_fz_mutate_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        fz_mutate(np.zeros((2, 3)), 0)
    with pytest.raises(InvalidInputError):
        fz_mutate(np.zeros((2, 2)), 2)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_cluster_axioms(n):
    report = _service(n).verify_cluster_axioms()
    assert report.ok, report.violations
    assert report.checked == catalan(n - 2) * (n - 3)


def test_lemma_agrees_with_oracle_on_z4():
    service = _service(4)
    arcs = service.arcs()
    assert arcs == [Arc(1, 3), Arc(2, 4)]
    for X in arcs:
        for Y in arcs:
            assert service.stable_hom_dim(X, Y) == service.stable_hom_oracle(X, Y)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_factorization_lemma_agrees_with_oracle(n):
    service = _service(n)
    arcs = service.arcs()
    for X, S, Y in product(arcs, repeat=3):
        lemma = service.factors_through(X, S, Y)
        assert lemma == service.factors_through_oracle(X, S, Y), (X.label(), S.label(), Y.label(), lemma)
    for X in arcs:
        assert service.verify_almost_split(X, use_oracle=True) == []


def test_almost_split_triangle(stable_z6):
    triangle = stable_z6.almost_split(stable_z6.arc(1, 3))
    assert triangle.start == Arc(2, 6)
    assert triangle.middle == (Arc(3, 6),)
    for X in stable_z6.arcs():
        assert stable_z6.verify_almost_split(X) == []


def test_component_label():
    assert component_label(Arc((0, 0), (0, 2))) == ("C_0", "ZA∞")
    assert component_label(Arc((0, 1), (2, -1))) == ("C_02", "ZA∞∞")


def test_zigzag_is_pairwise_compatible():
    service, arcs = build_zigzag(1)
    assert len(arcs) == 6
    assert {a.component for a in arcs} == {"C_-10", "C_01"}
    assert all(a.kind == "ZA∞∞" for a in arcs)

    service, arcs = build_zigzag(3)
    assert any(a.arc.x1[0] - a.arc.x0[0] >= 2 for a in arcs)
    for u in arcs:
        for v in arcs:
            assert service.compatible(u.arc, v.arc)


def test_zigzag_needs_positive_radius():
    with pytest.raises(WindowTooSmallError):
        build_zigzag(0)
