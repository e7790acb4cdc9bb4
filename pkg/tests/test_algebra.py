import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suneuler.algebra import (
    InvalidDimensionError,
    antisymmetric_index,
    diagonal_index,
    expand_product,
    generate_basis,
    structure_tensors,
    symmetric_index,
)


def _brute_force_basis(n):
    """Independent construction: loop over pairs in column-major order."""
    mats = []
    for j in range(2, n + 1):
        for i in range(1, j):
            s = np.zeros((n, n), dtype=complex)
            s[i - 1, j - 1] = s[j - 1, i - 1] = 1
            a = np.zeros((n, n), dtype=complex)
            a[i - 1, j - 1], a[j - 1, i - 1] = -1j, 1j
            mats += [s, a]
        d = np.zeros((n, n), dtype=complex)
        for k in range(j - 1):
            d[k, k] = 1
        d[j - 1, j - 1] = -(j - 1)
        mats.append(d * np.sqrt(2.0 / (j * (j - 1))))
    return np.array(mats)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_basis_matches_brute_force(n):
    np.testing.assert_allclose(generate_basis(n).matrices, _brute_force_basis(n), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 7])
def test_basis_trace_orthogonality_and_hermiticity(n):
    m = generate_basis(n).matrices
    gram = np.einsum("iab,jba->ij", m, m)
    np.testing.assert_allclose(gram, 2 * np.eye(n * n - 1), atol=1e-13)
    np.testing.assert_allclose(np.einsum("iaa->i", m), 0, atol=1e-14)
    np.testing.assert_allclose(m, m.conj().transpose(0, 2, 1), atol=0)


def test_lambda15_and_lambda10_entries():
    b = generate_basis(4)
    np.testing.assert_allclose(b.generator(15), np.diag([1, 1, 1, -3]) / np.sqrt(6), atol=1e-15)
    l10 = b.generator(10)
    assert l10[3, 0] == 1j and l10[0, 3] == -1j
    assert np.count_nonzero(l10) == 2


def test_su2_is_pauli():
    b = generate_basis(2)
    np.testing.assert_array_equal(b.generator(1), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(b.generator(2), [[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(b.generator(3), [[1, 0], [0, -1]])


def test_index_rule():
    assert [symmetric_index(1, j) for j in (2, 3, 4)] == [1, 4, 9]
    assert [antisymmetric_index(1, j) for j in (2, 3, 4, 5, 6)] == [2, 5, 10, 17, 26]
    assert [diagonal_index(j) for j in (2, 3, 4, 5, 6)] == [3, 8, 15, 24, 35]
    assert symmetric_index(3, 4) == 13 and antisymmetric_index(3, 4) == 14


@pytest.mark.parametrize("bad", [1, 0, -3])
def test_invalid_dimension(bad):
    with pytest.raises(InvalidDimensionError):
        generate_basis(bad)


def test_generator_index_out_of_range():
    b = generate_basis(3)
    with pytest.raises(IndexError):
        b.generator(0)
    with pytest.raises(IndexError):
        b.generator(9)


def test_basis_is_read_only():
    b = generate_basis(3)
    with pytest.raises(ValueError):
        b.matrices[0, 0, 0] = 5


def test_su2_structure_constants():
    t = structure_tensors(generate_basis(2))
    assert t.c[0, 1, 2] == pytest.approx(1.0)
    assert t.c[1, 0, 2] == pytest.approx(-1.0)
    np.testing.assert_allclose(t.d, 0, atol=1e-15)


def test_su3_d118():
    t = structure_tensors(generate_basis(3))
    assert t.d[0, 0, 7] == pytest.approx(1 / np.sqrt(3), abs=1e-15)
    # well-known f_123 = 1, f_458 = sqrt(3)/2
    assert t.c[0, 1, 2] == pytest.approx(1.0)
    assert t.c[3, 4, 7] == pytest.approx(np.sqrt(3) / 2)


@pytest.mark.parametrize("n", [3, 4])
def test_tensor_symmetries(n):
    t = structure_tensors(generate_basis(n))
    for perm in [(1, 0, 2), (0, 2, 1), (2, 1, 0)]:
        np.testing.assert_allclose(t.d, t.d.transpose(perm), atol=1e-14)
        np.testing.assert_allclose(t.c, -t.c.transpose(perm), atol=1e-14)


def test_product_expansion_residual_su4(rng):
    b = generate_basis(4)
    for _ in range(50):
        i, j = rng.integers(1, 16, size=2)
        ident, coef = expand_product(int(i), int(j), b)
        recon = ident * np.eye(4) + np.tensordot(coef, b.matrices, axes=1)
        np.testing.assert_allclose(b.generator(i) @ b.generator(j), recon, atol=1e-12)


def test_expand_product_examples():
    ident, _ = expand_product(1, 1, generate_basis(4))
    assert ident == pytest.approx(0.5)
    ident, coef = expand_product(1, 2, generate_basis(2))
    assert ident == 0
    assert coef[2] == pytest.approx(1j)


def test_expand_product_su3_trace_projection():
    b = generate_basis(3)
    ident, coef = expand_product(3, 8, b)
    prod = b.generator(3) @ b.generator(8)
    want = np.array([np.trace(prod @ m) / 2 for m in b.matrices])
    np.testing.assert_allclose(coef, want, atol=1e-14)
    assert ident == 0


def test_expand_product_rejects_bad_index():
    with pytest.raises(IndexError):
        expand_product(0, 1, generate_basis(3))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 6), data=st.data())
def test_anticommutator_identity(n, data):
    b = generate_basis(n)
    m = n * n - 1
    i = data.draw(st.integers(1, m))
    j = data.draw(st.integers(1, m))
    t = structure_tensors(b)
    anti = b.generator(i) @ b.generator(j) + b.generator(j) @ b.generator(i)
    want = 4 / n * (i == j) * np.eye(n) + 2 * np.tensordot(t.d[i - 1, j - 1], b.matrices, axes=1)
    np.testing.assert_allclose(anti, want, atol=1e-12)
