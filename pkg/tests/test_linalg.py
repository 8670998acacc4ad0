import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from charvar import linalg as la
from charvar.errors import NotPositiveDefinite, ValidationError


def test_hermitian_exp_zero_is_identity():
    assert np.allclose(la.hermitian_exp(np.zeros((3, 3))), np.eye(3), atol=0)


def test_hermitian_exp_diagonal():
    p = np.diag([np.log(2), -np.log(2)])
    assert np.allclose(la.hermitian_exp(p), np.diag([2, 0.5]), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3])
def test_hermitian_exp_matches_pade_oracle(rng, n):
    for _ in range(50):
        p = 2.5 * la.random_hermitian_direction(rng, n)
        expected = scipy.linalg.expm(p)
        got = la.hermitian_exp(p)
        assert la.frob(got - expected) <= 1e-12 * la.frob(expected)
        assert np.allclose(np.sort(np.linalg.eigvalsh(got)), np.sort(np.exp(np.linalg.eigvalsh(p))))
        assert abs(np.linalg.det(got) - 1) < 1e-12


def test_hermitian_log_examples():
    assert np.allclose(la.hermitian_log(np.eye(2)), 0)
    assert np.allclose(la.hermitian_log(np.diag([4, 0.25])), np.diag([np.log(4), -np.log(4)]))


def test_hermitian_log_round_trip(rng):
    for _ in range(50):
        g = la.random_group_element(rng, 2, 1.5)
        P = la.dagger(g) @ g
        p = la.hermitian_log(P)
        assert la.frob(la.hermitian_exp(p) - P) <= 1e-10 * la.frob(P)
        assert abs(np.trace(p)) < 1e-12


def test_hermitian_log_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        la.hermitian_log(np.diag([2.0, -0.5]))
    with pytest.raises(NotPositiveDefinite):
        la.hermitian_log(np.array([[1, 1], [0, 1]], dtype=complex))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]), st.floats(0, 5))
def test_exp_log_inversion(seed, n, scale):
    p = scale * la.random_hermitian_direction(np.random.default_rng(seed), n)
    assert la.frob(la.hermitian_log(la.hermitian_exp(p)) - p) <= 1e-9


def test_polar_of_unitary_is_trivial(rng):
    for n in (2, 3):
        for _ in range(100):
            k = la.random_unitary(rng, n)
            k2, p = la.polar_decompose(k)
            assert la.frob(p) <= 1e-10
            assert la.frob(k2 - k) <= 1e-12


def test_polar_diagonal():
    k, p = la.polar_decompose(np.diag([2.0, 0.5]))
    assert np.allclose(k, np.eye(2), atol=1e-15)
    assert np.allclose(p, np.diag([np.log(2), -np.log(2)]), atol=1e-15)


def test_polar_unipotent_against_logm():
    g = np.array([[1, 1], [0, 1]], dtype=complex)
    expected_p = 0.5 * scipy.linalg.logm(np.array([[1, 1], [1, 2]], dtype=complex))
    k, p = la.polar_decompose(g)
    assert la.frob(p - expected_p) < 1e-12
    assert la.frob(la.dagger(k) @ k - np.eye(2)) < 1e-12
    assert la.frob(k @ la.hermitian_exp(p) - g) < 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_polar_round_trip_and_stability(rng, n):
    for _ in range(2000):
        g = la.random_group_element(rng, n, rng.uniform(0, 3))
        k, p = la.polar_decompose(g)
        assert la.frob(k @ la.hermitian_exp(p) - g) <= 1e-10 * la.frob(g)
        assert la.is_unitary(k, 1e-12)
        la.hermitian_direction(p)
    g = la.random_group_element(rng, n, 1.0)
    cur = g
    for _ in range(20):
        k, p = la.polar_decompose(cur)
        nxt = k @ la.hermitian_exp(p)
        assert la.frob(nxt - cur) <= 1e-12 * la.frob(cur) * 10
        cur = nxt


def test_random_unitary_deterministic():
    a = la.random_unitary(np.random.default_rng(5), 3)
    b = la.random_unitary(np.random.default_rng(5), 3)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("n", [2, 3])
def test_random_unitary_constraints_and_trace_moment(rng, n):
    samples = [la.random_unitary(rng, n) for _ in range(10_000)]
    for k in samples:
        assert la.frob(la.dagger(k) @ k - np.eye(n)) <= 1e-12
        assert abs(np.linalg.det(k) - 1) <= 1e-12
    mean = np.mean([np.trace(k) for k in samples])
    assert abs(mean.real) <= 5 / np.sqrt(10_000)
    assert abs(mean.imag) <= 5 / np.sqrt(10_000)


def test_random_group_element(rng):
    for n in (2, 3):
        assert la.is_unitary(la.random_group_element(rng, n, 0.0), 1e-12)
        for _ in range(100):
            assert abs(np.linalg.det(la.random_group_element(rng, n, 2.0)) - 1) <= 1e-10
    a = la.random_group_element(np.random.default_rng(9), 2, 1.0)
    b = la.random_group_element(np.random.default_rng(9), 2, 1.0)
    assert np.array_equal(a, b)
    with pytest.raises(ValidationError):
        la.random_group_element(rng, 2, -1.0)


def _brute_centralizer_dim(h):
    # null space of X -> Xh - hX on all of gl(n) via Kronecker products, minus the identity
    n = h.shape[0]
    op = np.kron(np.eye(n), h.T) - np.kron(h, np.eye(n))
    s = np.linalg.svd(op, compute_uv=False)
    return int(np.sum(s <= 1e-8 * max(1, s[0]))) - 1


def test_centralizer_examples():
    assert la.centralizer_basis(np.diag([1j, -1j])).dim == 1
    assert la.centralizer_basis(np.eye(2)).dim == 3
    assert la.centralizer_basis(np.eye(3)).dim == 8
    lam = 1.3 * np.exp(0.4j)
    h = np.diag([lam, lam, lam**-2])
    assert _brute_centralizer_dim(h) == 4
    assert la.centralizer_basis(h).dim == 4


def test_centralizer_basis_commutes_and_is_traceless(rng):
    h = la.random_group_element(rng, 3)
    basis = la.centralizer_basis(h)
    for x in basis.elements:
        assert la.frob(x @ h - h @ x) < 1e-10
        assert abs(np.trace(x)) < 1e-12


def test_centralizer_dimension_conjugation_invariant(rng):
    hs = [np.diag([1j, -1j]), np.eye(2), np.diag(np.exp(2j * np.pi * np.array([1, 1, -2]) / 7)),
          np.diag(np.exp(1j * np.array([0.3, 1.1, -1.4])))]
    for h in hs:
        u = la.random_unitary(rng, h.shape[0])
        assert la.centralizer_basis(u @ h @ la.dagger(u)).dim == la.centralizer_basis(h).dim == (
            _brute_centralizer_dim(h)
        )


def test_hermitian_centralizer_is_orthonormal(rng):
    h = np.diag(np.exp(2j * np.pi * np.array([1, 1, -2]) / 7))
    basis = la.hermitian_centralizer_basis(h)
    assert basis.dim == 4
    gram = np.einsum("aij,bij->ab", basis.elements.conj(), basis.elements).real
    assert np.allclose(gram, np.eye(4), atol=1e-12)
    for x in basis.elements:
        assert la.frob(x - la.dagger(x)) < 1e-12
        assert la.frob(x @ h - h @ x) < 1e-10


def test_validation_helpers():
    with pytest.raises(ValidationError):
        la.group_element(np.diag([2.0, 2.0]))
    with pytest.raises(ValidationError):
        la.group_element(np.eye(4))
    with pytest.raises(ValidationError):
        la.unitary_element(np.diag([2.0, 0.5]))
    with pytest.raises(ValidationError):
        la.hermitian_direction(np.diag([1.0, 1.0]))
    with pytest.raises(ValidationError):
        la.group_element(np.array([[np.nan, 0], [0, 1]]))


def test_match_spectra_identity_on_equal_lists():
    ev = np.array([1.0, 1.0, 1j])
    assert la.match_spectra(ev, ev) == [0, 1, 2]
    assert la.match_spectra(np.array([1j, 1.0]), np.array([1.0, 1j])) == [1, 0]


def test_stacked_sampling_shapes(rng):
    stack = la.random_group_element(rng, 3, np.linspace(0, 1.5, 7), size=7)
    assert stack.shape == (7, 3, 3)
    assert np.allclose(np.linalg.det(stack), 1, atol=1e-12)
    k = la.random_unitary(rng, 2, size=5)
    assert np.allclose(la.dagger(k) @ k, np.eye(2), atol=1e-12)
    # radius zero gives the unitary factor alone
    assert np.allclose(la.dagger(stack[0]) @ stack[0], np.eye(3), atol=1e-12)
