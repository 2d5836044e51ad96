"""循環偏序集：餘循環、覆蓋偏序、建構器與 𝒳(Z, φ)"""

import random
from itertools import product

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from core.errors import InvalidInputError, NonCyclicOrderError, WindowTooSmallError
from services.cyclic_poset_service import (
    CyclicPoset,
    CyclicPosetService,
    build,
    build_product,
    build_star,
    build_zm_star_z,
    build_zn,
    build_zwindow,
    lambda_of,
    zn_shift,
)

service = CyclicPosetService()


@pytest.mark.parametrize("n", range(3, 9))
def test_zn_cocycle(n):
    poset, _ = build_zn(n)
    assert service.verify_cocycle(poset).ok


def test_zn_values():
    poset, phi = build_zn(6)
    assert poset.c(1, 2, 3) == 0
    assert poset.c(3, 2, 1) == 1
    assert poset.c(2, 1, 2) == 1
    assert phi(6) == 1 and phi.offset(6) == 1 and phi.offset(1) == 0


def test_product_and_star():
    z3, _ = build_zn(3)
    assert service.verify_cocycle(build_product(z3, z3)).ok
    assert service.verify_cocycle(build_star(z3, 0, 2)).ok


def test_not_reduced_table_is_reported():
    poset = CyclicPoset([1, 2, 3], cocycle_table={(1, 1, 2): 1}, name="bad")
    report = service.verify_cocycle(poset)
    assert not report.ok
    assert {"kind": "not-reduced", "tuple": [1, 1, 2], "value": 1} in report.violations


def test_small_window_rejected():
    poset, _ = build_zwindow(0, 2)
    with pytest.raises(WindowTooSmallError):
        service.verify_cocycle(poset)


@hsettings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10_000))
def test_random_distance_functions_give_cocycles(n, seed):
    poset = service.random_distance_poset(n, random.Random(seed))
    assert service.verify_cocycle(poset).ok
    recovered = service.recover_cocycle_from_order(poset)
    assert all(recovered[t] == poset.c(*t) for t in recovered)


def test_cyclic_order_matches_lift_search():
    poset, _ = build_zn(5)
    for x, y, z in product(poset.elements, repeat=3):
        assert poset.cyclic_order_triple(x, y, z) == poset.cyclic_order_by_search(x, y, z)


def test_cyclic_order_on_zn():
    poset, _ = build_zn(6)
    assert poset.cyclic_order_triple(1, 2, 3)
    assert poset.cyclic_order_triple(5, 6, 1)
    assert not poset.cyclic_order_triple(1, 3, 2)
    assert poset.is_cyclically_ordered()


def test_equivalence_only_on_diagonal_of_zn():
    poset, _ = build_zn(4)
    assert poset.equivalent(2, 2)
    assert not poset.equivalent(1, 3)


def test_star_levels_are_ordered_not_equivalent():
    z2, _ = build_zn(2)
    poset = build_star(z2, 0, 1)
    assert poset.c((1, 0), (1, 1), (1, 0)) == 1
    assert not poset.equivalent((1, 0), (1, 1))
    assert poset.is_cyclically_ordered()


@pytest.mark.parametrize("shift, admissible", [(1, True), (2, True), (3, False)])
def test_admissible_shifts_of_z6(shift, admissible):
    poset, _ = build_zn(6)
    assert service.check_admissible(poset, zn_shift(6, shift)) is admissible


def test_z1_successor_is_the_full_turn():
    poset, phi = build("Zn", {"n": 1})
    assert poset.elements == (1,)
    assert poset.c(1, 1, 1) == 0
    assert service.verify_cocycle(poset).ok
    assert phi(1) == 1 and phi.offset(1) == 1
    assert not service.check_admissible(poset, phi)
    assert service.check_admissible(poset, zn_shift(1, 0))
    with pytest.raises(InvalidInputError):
        zn_shift(1, 2)


def test_zm_star_z_successor():
    poset, phi = build_zm_star_z(3, 0, 2)
    assert phi((1, 0)) == (2, 0)
    assert phi((3, 0)) == (1, 1) and phi.offset((3, 0)) == 1
    assert not phi.has_image((3, 2))
    assert lambda_of(3, (2, 1)) == 5
    assert service.verify_cocycle(poset).ok
    assert service.check_admissible(poset, phi)


def test_frobenius_poset_of_z6():
    poset, phi = build_zn(6)
    bundle = service.frobenius_poset(poset, phi)
    assert bundle.psi_report.ok
    assert bundle.psi_report.domain_size == bundle.psi_report.target_size == 30
    assert len(bundle.x_poset) == 15
    assert service.verify_cocycle(bundle.x_poset).ok


def test_frobenius_poset_needs_cyclic_order():
    z3, _ = build_zn(3)
    with pytest.raises(NonCyclicOrderError):
        service.frobenius_poset(build_product(z3, z3), zn_shift(3, 1))


def test_build_by_name():
    poset, phi = build("Zn", {"n": 5})
    assert len(poset) == 5 and phi is not None
    product_poset, none = build("product", {"first": {"name": "Zn", "params": {"n": 2}}, "second": {"name": "Zn", "params": {"n": 3}}})
    assert len(product_poset) == 6 and none is None


@pytest.mark.parametrize("kind, params", [("nope", {}), ("Zn", {})])
def test_build_rejects_bad_input(kind, params):
    with pytest.raises(InvalidInputError):
        build(kind, params)
