"""MF_φ(X)：不可分解物件、共合、伴隨與 Krull–Schmidt 分解"""

import random
from collections import Counter
from itertools import permutations

import pytest

from core.errors import InvalidInputError, InvalidPairError, NonCyclicOrderError
from models.morphism import EDescriptor
from services.cyclic_poset_service import build_product, build_zn, zn_shift
from services.frobenius_service import FrobeniusService, MFObject, iso_key
from services.linearization_service import PObject


def test_e_objects_are_valid(frobenius_z6):
    for x, y in [(1, 3), (2, 6), (4, 5)]:
        assert frobenius_z6.validate(frobenius_z6.make_E(x, y)).ok


def test_e_on_equivalent_pair(frobenius_z6):
    plain = frobenius_z6.make_E(2, 2)
    assert plain.d.entries[0][1] == frobenius_z6.ring.t_power(1)
    assert frobenius_z6.validate(plain, twisted=False).ok
    with pytest.raises(InvalidPairError):
        frobenius_z6.make_E(1, 3, variant="primed")


def test_twisted_membership_matches_factoring():
    poset, _ = build_zn(6)
    service = FrobeniusService(poset, zn_shift(6, 2))
    for x, y in permutations(poset.elements, 2):
        assert service.admitted_in_twisted(x, y) == service.validate(service.make_E(x, y)).ok, (x, y)
    assert not service.admitted_in_twisted(1, 2)
    assert service.admitted_in_twisted(1, 3)


def test_proj_inj(frobenius_z6):
    assert frobenius_z6.is_proj_inj(EDescriptor(x=1, y=2))
    assert frobenius_z6.is_proj_inj(EDescriptor(x=6, y=1))
    assert not frobenius_z6.is_proj_inj(EDescriptor(x=1, y=3))


def test_gphi_squares_to_t(frobenius_z6):
    G = frobenius_z6.make_Gphi(PObject((1, 3)))
    assert len(G) == 4
    assert frobenius_z6.validate(G, twisted=False).ok


def test_exchange_conflation(frobenius_z6):
    conflation = frobenius_z6.exchange_conflation(1, 3, 4, 6)
    assert conflation.B.V.summands == (1, 6, 3, 4)
    assert conflation.A.V.summands == (1, 4)
    assert conflation.C.V.summands == (3, 6)


def test_g_conflation(frobenius_z6):
    obj = frobenius_z6.make_E(1, 3)
    conflation = frobenius_z6.g_conflation(obj)
    assert conflation.B.V.summands == (1, 3, 2, 4)


def test_adjunction_and_endomorphisms(frobenius_z6):
    rng = random.Random(7)
    target = frobenius_z6.make_E(1, 3)
    assert frobenius_z6.check_adjunction(PObject((1, 3)), target, rng)
    assert frobenius_z6.check_endomorphism_ring(target, rng)


@pytest.mark.parametrize("seed", range(5))
def test_decompose_recovers_summands(frobenius_z6, seed):
    rng = random.Random(seed)
    poset = frobenius_z6.poset
    chosen = [EDescriptor(x=1, y=3), EDescriptor(x=2, y=5), EDescriptor(x=4, y=6)]
    obj = frobenius_z6.assemble(chosen)
    U, U_inv = frobenius_z6.random_base_change(obj.V, rng)
    result = frobenius_z6.decompose(frobenius_z6.conjugate(obj, U, U_inv))
    assert Counter(iso_key(e, poset) for e in result.summands) == Counter(iso_key(e, poset) for e in chosen)


def test_decompose_swapped_ends_is_same_class(frobenius_z6):
    poset = frobenius_z6.poset
    result = frobenius_z6.decompose(frobenius_z6.make_E(5, 2))
    assert [iso_key(e, poset) for e in result.summands] == [iso_key(EDescriptor(x=2, y=5), poset)]


def test_decompose_rejects_odd_rank(frobenius_z6):
    V = PObject((1,))
    with pytest.raises(InvalidInputError):
        frobenius_z6.decompose(MFObject(V, frobenius_z6.lin.zero(V, V)))


def test_decompose_needs_cyclic_order():
    z3, _ = build_zn(3)
    service = FrobeniusService(build_product(z3, z3))
    V = PObject(((1, 2), (2, 1)))
    with pytest.raises(NonCyclicOrderError):
        service.decompose(MFObject(V, service.lin.zero(V, V)))


def test_model_roundtrip(frobenius_z6):
    obj = frobenius_z6.make_E(1, 4)
    again = frobenius_z6.from_model(frobenius_z6.to_model(obj))
    assert again.V == obj.V and again.d == obj.d
