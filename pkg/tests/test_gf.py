import itertools

import pytest

from bt1.gf import (GF, extension_of, mat_identity, mat_inv, mat_mul,
                    mat_rank, seeded_irreducible, smallest_irreducible)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(1)


@pytest.mark.parametrize("p,e", [(2, 1), (2, 4), (3, 2), (5, 2)])
def test_field_axioms_sampled(p, e):
    K = GF(p, e)
    elements = list(K.elements())
    assert len(elements) == p**e
    sample = elements[:: max(1, len(elements) // 8)]
    for a, b in itertools.product(sample, repeat=2):
        assert K.mul(a, b) == K.mul(b, a)
        assert K.add(a, b) == K.add(b, a)
        if not K.is_zero(a):
            assert K.mul(a, K.inv(a)) == K.one()
        # Frobenius is additive and invertible
        assert K.frob(K.add(a, b)) == K.add(K.frob(a), K.frob(b))
        assert K.inv_frob(K.frob(a)) == a


def test_modulus_is_deterministic():
    assert smallest_irreducible(GF(2), 4) == smallest_irreducible(GF(2), 4)
    assert seeded_irreducible(GF(2, 4), 2) == seeded_irreducible(GF(2, 4), 2)


def test_extension_tower_order():
    big = extension_of(2, 2, 6)
    assert big.fp_dim == 12
    assert big.order == 2**12
    # a base element embeds compatibly with Frobenius
    K = GF(2, 2)
    a = list(K.elements())[2]
    lifted = a
    field = big
    chain = []
    while field is not K:
        chain.append(field)
        field = field.base
    for layer in reversed(chain):
        lifted = layer.from_base(lifted)
    assert big.to_fp_vec(lifted).count(0) >= big.fp_dim - 2


def test_matrix_rank_and_inverse():
    K = GF(3)
    A = [[1, 2, 0], [0, 1, 1], [1, 0, 2]]
    assert mat_rank(K, A) == 3
    inv = mat_inv(K, A)
    assert mat_mul(K, A, inv) == mat_identity(K, 3)
    singular = [[1, 2], [2, 4]]
    assert mat_rank(K, singular) == 1
    with pytest.raises(ZeroDivisionError):
        mat_inv(K, singular)
