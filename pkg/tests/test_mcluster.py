"""A∞ 型 m-叢範疇：分類、Ext、剖分、突變與非標準叢"""

from itertools import combinations

import pytest

from core.errors import ComponentMismatchError, InvalidInputError, NonRigidError, NotInClusterError, NotMaximalError
from models.cluster import AngulationModel, MArcModel
from services.mcluster_service import (
    NONSTANDARD,
    OTHER,
    PROJ_INJ,
    STANDARD,
    MClusterService,
    MPoint,
    chords_cross,
    classify,
    dissections,
    example_m5,
    fuss_catalan,
    split_faces,
)


@pytest.mark.parametrize(
    "m,delta,kind",
    [
        (5, 1, PROJ_INJ),
        (5, 6, STANDARD),
        (5, 11, STANDARD),
        (5, 3, NONSTANDARD),
        (5, 8, NONSTANDARD),
        (5, 2, OTHER),
        (5, 4, None),
        (5, 5, None),
        (5, 0, None),
        (5, -3, None),
        (3, 4, STANDARD),
        (3, 2, None),
    ],
)
def test_classify(m, delta, kind):
    assert classify(m, delta) == kind


def test_points_and_labels(m5):
    X = m5.marc(7, 1)
    assert (X.lam1, X.lam2, X.kind) == (1, 7, STANDARD)
    assert X.label() == "E(x0^1,x1^2)"
    assert MPoint.normalized(5, 6, 0) == MPoint(5, 1, 1)
    assert m5.from_model(MArcModel(p=1, k=0, q=2, j=1)) == X
    assert m5.to_model(X) == MArcModel(p=1, k=0, q=2, j=1)
    with pytest.raises(InvalidInputError):
        m5.marc(0, 5)


def test_m_must_be_at_least_three():
    with pytest.raises(InvalidInputError):
        MClusterService(2)


def test_shift_and_tau(m5):
    X = m5.marc(1, 7)
    assert m5.shift(X).to_list() == [0, 6]
    assert m5.tau(X).to_list() == [-4, 2]


@pytest.mark.parametrize(
    "m,counts",
    [(3, [1, 4, 22]), (4, [1, 5, 35]), (5, [1, 6, 51])],
)
def test_fuss_catalan(m, counts):
    assert [fuss_catalan(m, s) for s in (1, 2, 3)] == counts


@pytest.mark.parametrize("m", [3, 4])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_angulations_match_dissections(m, s):
    service = MClusterService(m)
    clusters = service.enumerate_angulations(s)
    assert len(clusters) == fuss_catalan(m, s)
    assert set(clusters) == set(dissections(service.window_vertices(s), m))


def test_angulation_roundtrip(m3):
    for cluster in m3.enumerate_angulations(3):
        arcs = sorted(m3.marc(a, b) for a, b in cluster)
        model = m3.cluster_to_angulation(arcs, 3)
        assert all(len(face) == 5 for face in split_faces(list(range(1, 12)), cluster))
        assert m3.angulation_to_cluster(model) == arcs


def test_angulation_rejects_partial_clusters(m3):
    with pytest.raises(NotMaximalError):
        m3.cluster_to_angulation([], 2)
    with pytest.raises(InvalidInputError):
        m3.cluster_to_angulation([m3.marc(1, 5), m3.marc(2, 6)], 2)
    with pytest.raises(InvalidInputError):
        m3.angulation_to_cluster(AngulationModel(m=4, window=[1, 8], chords=[[1, 5]]))


def test_ext_in_top_degree(m5):
    X, Y = m5.marc(1, 7), m5.marc(6, 12)
    assert m5.ext_k_m(X, Y, 5) == 1
    assert m5.ext_floor(X, Y, 5) == 1
    assert m5.ext_k_m(Y, X, 1) == 1
    with pytest.raises(InvalidInputError):
        m5.ext_k_m(X, Y, 6)


def test_calabi_yau_symmetry(m3):
    standard = [a for a in m3.rigid_objects(1, 11) if a.kind == STANDARD]
    for X in standard:
        for Y in standard:
            for k in range(1, 4):
                assert m3.ext_k_m(X, Y, k) == m3.ext_k_m(Y, X, 4 - k)
                assert m3.ext_k_m(X, Y, k) == m3.ext_floor(X, Y, k)


def test_std_hom_needs_one_component(m5):
    with pytest.raises(ComponentMismatchError):
        m5.std_hom(m5.marc(1, 7), m5.marc(2, 8))


def test_hom_between_compatible(m3):
    assert m3.hom_between_compatible(m3.marc(1, 5), m3.marc(1, 8))
    assert m3.hom_between_compatible(m3.marc(5, 9), m3.marc(1, 5))
    assert not m3.hom_between_compatible(m3.marc(1, 5), m3.marc(5, 9))
    with pytest.raises(InvalidInputError):
        m3.hom_between_compatible(m3.marc(1, 5), m3.marc(2, 6))


def test_compatibility_of_rigid_objects(m5):
    X1, Y1, Y2 = m5.marc(1, 7), m5.marc(0, 8), m5.marc(-4, 9)
    assert m5.compatible_rigid(X1, Y1)
    assert m5.compatible_rigid(Y1, Y2)
    assert not m5.compatible_rigid(m5.marc(0, 8), m5.marc(3, 11))
    assert not m5.compatible_rigid(X1, m5.marc(3, 11))
    with pytest.raises(NonRigidError):
        m5.compatible_rigid(X1, m5.marc(4, 6))
    with pytest.raises(InvalidInputError):
        m5.compatible_rigid(X1, m5.marc(1, 2))


def test_psi_agrees_with_compatibility(m5):
    assert m5.psi_disagreements(-5, 10) == []


def test_chords_cross():
    assert chords_cross(((0, 1), (0, 5)), ((0, 3), (0, 7)))
    assert not chords_cross(((0, 1), (0, 5)), ((0, 5), (0, 7)))
    assert not chords_cross(((0, 1), (0, 5)), ((1, 3), (1, 7)))


def test_mutation_chain(m3):
    T = m3.marc(1, 5)
    chain = m3.mutation_partners(T, [T], 2)
    assert [p.to_list() for p in chain.partners] == [[4, 8], [3, 7], [2, 6]]
    assert len(chain.middles) == 4
    assert len(chain.conflations) == 4

    model = m3.mutation_chain_model(chain)
    assert model.arc == [1, 5]
    assert model.partners == [[4, 8], [3, 7], [2, 6]]


def test_mutation_chain_has_m_partners():
    service = MClusterService(4)
    for cluster in service.enumerate_angulations(3):
        arcs = sorted(service.marc(a, b) for a, b in cluster)
        for T in arcs:
            chain = service.mutation_partners(T, arcs, 3, certify=False)
            assert len(chain.partners) == 4
            assert T not in chain.partners


def test_mutation_needs_member(m3):
    with pytest.raises(NotInClusterError):
        m3.mutation_partners(m3.marc(2, 6), [m3.marc(1, 5)], 2)


def test_nonstandard_example():
    example = example_m5()
    stats = example.stats
    assert example.compatible and example.maximal
    assert stats.window == (-10, 13)
    assert stats.sides == 8
    assert all(len(face) == 7 for face in stats.faces if face != stats.central)

    central = set(stats.central_objects)
    assert central
    for arc, count in stats.mutation_counts.items():
        assert count == (8 if arc in central else 5)

    report = example.service.central_report(stats)
    assert report.sides == 8
    assert report.window == [-10, 13]


def test_outer_window_needs_nonstandard(m5):
    with pytest.raises(InvalidInputError):
        m5.outer_window([m5.marc(1, 7)])
    with pytest.raises(InvalidInputError):
        m5.outer_window([m5.marc(0, 8), m5.marc(1, 12)])


def test_projection_to_zm(m5):
    report = m5.project_to_Zm()
    assert report.ok
    assert report.zigzag_classes == 10
    assert report.nonzero_classes == 5
    assert {c.label for c in report.classes if not c.collapses} == {"C_13", "C_14", "C_24", "C_25", "C_35"}


@pytest.mark.parametrize("m, hi", [(4, 6), (5, 8)])
def test_nonstandard_compatibility_agrees_with_oracle(m, hi):
    service = MClusterService(m)
    rigid = service.rigid_objects(0, hi)
    mixed = [(X, Y) for X, Y in combinations(rigid, 2) if NONSTANDARD in (X.kind, Y.kind)]
    assert mixed
    for X, Y in mixed:
        assert service.compatible_rigid(X, Y) == service.oracle_compatible(X, Y, (-m, hi)), (X.key(), Y.key())
