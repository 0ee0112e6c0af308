import numpy as np
import pytest

from qcond import (
    choi_distance,
    frobenius,
    is_atomic,
    is_channel,
    is_sharp,
    measured_effect,
    measured_observable,
    validate_effect,
    validate_instrument,
    validate_observable,
    validate_state,
)
from qcond.rand import (
    Generator,
    random_atomic_effect,
    random_channel,
    random_codiagonal_effects,
    random_codiagonal_observable,
    random_context_measuring,
    random_effect,
    random_hermitian,
    random_instrument_measuring,
    random_observable,
    random_operation_measuring,
    random_projection,
    random_projective_observable,
    random_real_values,
    random_state,
    random_unitary,
)


def test_same_seed_same_stream():
    a = random_state(Generator(7), 3)
    b = random_state(Generator(7), 3)
    assert np.array_equal(a, b)  # bit-for-bit
    h1 = random_hermitian(Generator(9).derive(1, 2), 4)
    h2 = random_hermitian(Generator(9).derive(1, 2), 4)
    assert np.array_equal(h1, h2)


def test_derive_gives_independent_streams():
    g = Generator(7)
    a = random_state(g.derive(0), 3)
    b = random_state(g.derive(1), 3)
    assert frobenius(a - b) > 1e-3
    # deriving does not perturb the parent
    c = random_state(Generator(7).derive(0), 3)
    assert np.array_equal(a, c)


def test_generated_objects_are_valid():
    g = Generator(8)
    for t in range(10):
        dim = 2 + t % 4
        assert validate_state(random_state(g.derive(t, 0), dim)) == []
        assert validate_effect(random_effect(g.derive(t, 1), dim)) == []
        obs = random_observable(g.derive(t, 2), dim, 3)
        assert validate_observable(obs) == []
        assert frobenius(obs.total() - np.eye(dim)) <= 1e-10


def test_random_unitary_and_projection():
    g = Generator(9)
    u = random_unitary(g, 4)
    assert frobenius(u @ u.conj().T - np.eye(4)) <= 1e-10
    p = random_projection(g.derive(1), 4, 2)
    assert is_sharp(p)
    assert np.trace(p).real == pytest.approx(2.0)
    atom = random_atomic_effect(g.derive(2), 3)
    assert is_atomic(atom)


def test_random_projective_observable():
    g = Generator(10)
    a = random_projective_observable(g, 4, 3)
    assert validate_observable(a) == []
    for x in a.outcomes:
        assert is_sharp(a.effects[x])
    # orthogonality of distinct outcomes
    e = list(a.effects.values())
    assert frobenius(e[0] @ e[1]) <= 1e-10


def test_codiagonal_generators_commute():
    g = Generator(11)
    a, b = random_codiagonal_effects(g, 3)
    assert frobenius(a @ b - b @ a) <= 1e-12
    u = random_unitary(g.derive(1), 3)
    obs = random_codiagonal_observable(g.derive(2), u, 3)
    assert validate_observable(obs) == []
    mats = list(obs.effects.values())
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            assert frobenius(mats[i] @ mats[j] - mats[j] @ mats[i]) <= 1e-12


def test_random_channel_is_channel():
    g = Generator(12)
    for k in (1, 2, 4):
        assert is_channel(random_channel(g.derive(k), 3, k))


def test_operation_measuring_hits_target():
    g = Generator(13)
    for t in range(10):
        a = random_effect(g.derive(t, 0), 3)
        op = random_operation_measuring(g.derive(t, 1), a, 3)
        assert frobenius(measured_effect(op) - a) <= 1e-10


def test_context_measuring_carries_exact_effect():
    g = Generator(14)
    a = random_effect(g.derive(0), 2)
    ctx = random_context_measuring(g.derive(1), a, 2)
    assert np.array_equal(ctx.effect, a)


def test_different_seeds_give_different_maps():
    g = Generator(15)
    a = random_effect(g, 2)
    op1 = random_operation_measuring(Generator(1), a, 2)
    op2 = random_operation_measuring(Generator(2), a, 2)
    assert choi_distance(op1, op2) > 1e-6


def test_instrument_measuring():
    g = Generator(16)
    a = random_observable(g.derive(0), 3, 3)
    ins = random_instrument_measuring(g.derive(1), a, 2)
    assert validate_instrument(ins) == []
    m = measured_observable(ins)
    for x in a.outcomes:
        assert frobenius(m.effects[x] - a.effects[x]) <= 1e-10


def test_random_real_values():
    g = Generator(17)
    obs = random_observable(g.derive(0), 2, 3)
    b = random_real_values(g.derive(1), obs)
    assert set(b.values) == set(obs.outcomes)
    assert all(np.isfinite(v) for v in b.values.values())


def test_uniform_and_integer_ranges():
    g = Generator(18)
    xs = g.uniform(0.25, 0.75, 100)
    assert np.all((xs >= 0.25) & (xs < 0.75))
    ks = [g.integer(2, 5) for _ in range(50)]
    assert set(ks) <= {2, 3, 4, 5}
    assert min(ks) >= 2 and max(ks) <= 5
