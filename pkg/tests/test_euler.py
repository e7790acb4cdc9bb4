import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from conftest import random_unitary
from suneuler._validation import DimensionMismatchError
from suneuler.algebra import generate_basis
from suneuler.bloch import bell_density
from suneuler.entangle import tr_rhod_sq_su4, tr_rhod_sq_su6
from suneuler.euler import (
    SU4_SLOTS,
    SU6_REDUCED_POSITIONS,
    SU6_SLOTS,
    EulerFactorization,
    compose_unitary,
    conjugate,
    coset_state,
    coset_states,
    cp3_coset_state,
    cp5_coset_state,
    generator_exponential,
    rho_d,
    rho_d_su4,
    rho_d_su6,
    su4_euler,
    su6_euler,
)

B4 = generate_basis(4)
E1 = np.diag([1, 0, 0, 0]).astype(complex)


def _naive(alpha, slots, n):
    b = generate_basis(n)
    u = np.eye(n, dtype=complex)
    for k, a in zip(slots, alpha):
        u = u @ expm(1j * a * b.generator(k))
    return u


def test_exp_lambda10():
    a = 0.37
    c, s = np.cos(a), np.sin(a)
    want = np.eye(4, dtype=complex)
    want[0, 0] = want[3, 3] = c
    want[0, 3], want[3, 0] = s, -s
    np.testing.assert_allclose(generator_exponential(10, a, B4), want, atol=1e-15)


def test_exp_lambda3_and_zero_angle():
    a = 1.1
    np.testing.assert_allclose(
        generator_exponential(3, a, B4), np.diag([np.exp(1j * a), np.exp(-1j * a), 1, 1]), atol=1e-15
    )
    np.testing.assert_allclose(generator_exponential(7, 0.0, B4), np.eye(4), atol=1e-15)


def test_generator_exponential_against_expm(rng):
    for _ in range(30):
        k = int(rng.integers(1, 16))
        a = rng.uniform(-4, 4)
        np.testing.assert_allclose(generator_exponential(k, a, B4), expm(1j * a * B4.generator(k)), atol=1e-13)


def test_exp_index_out_of_range():
    with pytest.raises(IndexError):
        generator_exponential(16, 0.1, B4)


def test_lambda5_lambda2_product():
    mu, nu = 0.6, 1.3
    cm, sm, cn, sn = np.cos(mu), np.sin(mu), np.cos(nu), np.sin(nu)
    want = np.array(
        [
            [cm * cn, cm * sn, sm, 0],
            [-sn, cn, 0, 0],
            [-cn * sm, -sm * sn, cm, 0],
            [0, 0, 0, 1],
        ]
    )
    u = compose_unitary(EulerFactorization(4, ((5, mu), (2, nu))))
    np.testing.assert_allclose(u, want, atol=1e-15)
    rho = conjugate(u, E1).matrix
    assert rho[0, 1] == pytest.approx(-cm * cn * sn)
    assert rho[0, 2] == pytest.approx(-cm * cn**2 * sm)
    assert rho[1, 2] == pytest.approx(cn * sm * sn)


def test_empty_factorization_is_identity():
    np.testing.assert_array_equal(compose_unitary(EulerFactorization(3, ())), np.eye(3))


def test_compose_matches_naive_product(rng):
    for _ in range(100):
        a = rng.uniform(0, 2 * np.pi, 15)
        np.testing.assert_allclose(su4_euler(a).unitary(), _naive(a, SU4_SLOTS, 4), atol=1e-12)


def test_su6_matches_naive_product(rng):
    for _ in range(10):
        a = rng.uniform(0, 2 * np.pi, 35)
        np.testing.assert_allclose(su6_euler(a).unitary(), _naive(a, SU6_SLOTS, 6), atol=1e-12)


def test_zero_angles_give_identity():
    np.testing.assert_allclose(su4_euler(np.zeros(15)).unitary(), np.eye(4), atol=0)
    np.testing.assert_allclose(su6_euler(np.zeros(35)).unitary(), np.eye(6), atol=0)
    np.testing.assert_allclose(su6_euler(np.zeros(24)).unitary(), np.eye(6), atol=0)


def test_bell_generation():
    a = np.zeros(15)
    a[5] = np.pi / 4
    np.testing.assert_allclose(conjugate(su4_euler(a).unitary(), E1).matrix, bell_density(2).matrix, atol=1e-12)
    a = np.zeros(15)
    a[1], a[3] = np.pi / 2, np.pi / 4
    np.testing.assert_allclose(conjugate(su4_euler(a).unitary(), E1).matrix, bell_density(3).matrix, atol=1e-12)


def test_restricted_form_matches_coset_factors(rng):
    for _ in range(20):
        a = np.zeros(15)
        a[:6] = rng.uniform(0, np.pi, 6)
        f = EulerFactorization(4, tuple(zip((3, 2, 3, 5, 3, 10), a[:6])))
        np.testing.assert_allclose(su4_euler(a).unitary(), compose_unitary(f), atol=1e-13)


def test_su6_unitarity_and_determinant(rng):
    for _ in range(100):
        u = su6_euler(rng.uniform(0, 2 * np.pi, 35)).unitary()
        np.testing.assert_allclose(u @ u.conj().T, np.eye(6), atol=1e-12)
        assert np.linalg.det(u) == pytest.approx(1.0, abs=1e-12)


def test_su6_reduced_form():
    a = np.arange(1, 25) * 0.1
    full = np.zeros(35)
    full[np.array(SU6_REDUCED_POSITIONS) - 1] = a
    np.testing.assert_allclose(su6_euler(a).unitary(), su6_euler(full).unitary(), atol=1e-14)
    assert len(SU6_REDUCED_POSITIONS) == 24


def test_arity_errors():
    with pytest.raises(ValueError):
        su4_euler(np.zeros(14))
    with pytest.raises(ValueError):
        su6_euler(np.zeros(30))
    with pytest.raises(ValueError):
        cp3_coset_state(np.zeros(5))


def test_cp5_spans_all_components(rng):
    psi = cp5_coset_state(rng.uniform(0.2, 1.2, 10))
    assert np.all(np.abs(psi) > 1e-6)
    assert np.linalg.norm(psi) == pytest.approx(1.0)


def test_coset_state_examples():
    np.testing.assert_allclose(cp3_coset_state(np.zeros(6)), [1, 0, 0, 0], atol=0)
    r = 1 / np.sqrt(2)
    np.testing.assert_allclose(cp3_coset_state([0, 0, 0, 0, 0, np.pi / 4]), [r, 0, 0, -r], atol=1e-15)


def test_coset_state_norm(rng):
    for _ in range(1000):
        assert np.linalg.norm(cp3_coset_state(rng.uniform(-7, 7, 6))) == pytest.approx(1, abs=1e-13)


@pytest.mark.parametrize("n", [4, 6])
def test_batched_coset_states(rng, n):
    a = rng.uniform(0, 2 * np.pi, (25, 2 * (n - 1)))
    batch = coset_states(a, n)
    for row, psi in zip(a, batch):
        np.testing.assert_allclose(psi, coset_state(row, n), atol=1e-14)


def test_rho_d_examples():
    np.testing.assert_allclose(rho_d_su4([np.pi / 2] * 3).matrix, E1, atol=1e-15)
    np.testing.assert_allclose(np.diag(rho_d_su6([np.pi / 2] * 5).matrix), [1, 0, 0, 0, 0, 0], atol=1e-15)
    assert np.trace(rho_d_su4([np.pi / 4, 0.3, 1.0]).matrix).real == pytest.approx(1.0)
    assert rho_d_su6(np.zeros(5)).dims == (2, 3)


def test_rho_d_direct_against_closed_forms(rng):
    for _ in range(1000):
        t3 = rng.uniform(0, np.pi / 2, 3)
        t5 = rng.uniform(0, np.pi / 2, 5)
        assert tr_rhod_sq_su4(t3) == pytest.approx(float(np.sum(rho_d(t3) ** 2)), abs=1e-12)
        assert tr_rhod_sq_su6(t5) == pytest.approx(float(np.sum(rho_d(t5) ** 2)), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=5, max_size=5))
def test_rho_d_su6_is_a_probability_vector(theta):
    d = rho_d(theta)
    assert np.all(d >= 0)
    assert d.sum() == pytest.approx(1.0, abs=1e-12)


def test_conjugation_preserves_spectrum(rng):
    rho = rho_d_su4([0.4, 0.9, 1.2])
    for _ in range(20):
        u = random_unitary(rng, 4)
        out = conjugate(u, rho)
        np.testing.assert_allclose(np.linalg.eigvalsh(out.matrix), np.sort(np.diag(rho.matrix).real), atol=1e-13)
        assert out.dims == (2, 2)
    np.testing.assert_array_equal(conjugate(np.eye(4), rho).matrix, rho.matrix)


def test_conjugate_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        conjugate(np.eye(3), np.eye(4) / 4)
