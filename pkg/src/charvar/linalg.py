"""Small dense matrix calculus for SL(n, C) and SU(n), n in {2, 3}.

Matrices are plain complex numpy arrays of shape (n, n). Validation
helpers check the type invariants (det 1, unitarity, Hermitian and
traceless) and return a complex copy so callers never alias user input.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotPositiveDefinite, ValidationError

EPS_VALID = 1e-10
RANK_TOL = 1e-8
GAP_TOL = 1e-8

DIMENSIONS = (2, 3)


def dagger(a: np.ndarray) -> np.ndarray:
    return np.swapaxes(a, -1, -2).conj()


def frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def traceless(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    tr = np.trace(a, axis1=-2, axis2=-1)
    return a - tr[..., None, None] / n * np.eye(n)


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + dagger(a))


def traceless_hermitian(a: np.ndarray) -> np.ndarray:
    """Orthogonal (Frobenius) projection onto Hermitian traceless matrices."""
    return traceless(hermitian_part(a))


def _as_square(a, what: str) -> np.ndarray:
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in DIMENSIONS:
        raise ValidationError(f"{what} must be a 2x2 or 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{what} has non-finite entries")
    return a


def group_element(a, tol: float = EPS_VALID) -> np.ndarray:
    """Validate an SL(n, C) element and return it as a complex array."""
    a = _as_square(a, "group element")
    det = np.linalg.det(a)
    if abs(det - 1) > tol:
        raise ValidationError(f"determinant {det} is not 1 (tol {tol})")
    return a


def unitary_element(a, tol: float = EPS_VALID) -> np.ndarray:
    a = group_element(a, tol)
    if not is_unitary(a, tol):
        raise ValidationError("matrix is not unitary")
    return a


def hermitian_direction(a, tol: float = EPS_VALID) -> np.ndarray:
    a = _as_square(a, "Hermitian direction")
    if frob(a - dagger(a)) > tol:
        raise ValidationError("matrix is not Hermitian")
    if abs(np.trace(a)) > tol:
        raise ValidationError("matrix is not traceless")
    return a


def is_unitary(a: np.ndarray, tol: float = EPS_VALID) -> bool:
    n = a.shape[-1]
    return frob(dagger(a) @ a - np.eye(n)) <= tol


def is_normal(a: np.ndarray, tol: float = EPS_VALID) -> bool:
    return frob(a @ dagger(a) - dagger(a) @ a) <= tol


def normalize_det(a: np.ndarray) -> np.ndarray:
    """Rescale by the principal n-th root of the determinant so det = 1."""
    n = a.shape[-1]
    det = np.linalg.det(a)
    return a / (det ** (1.0 / n))[..., None, None]


# --- Hermitian calculus -------------------------------------------------

def hermitian_exp(p: np.ndarray) -> np.ndarray:
    """Matrix exponential of a Hermitian matrix (or a stack of them).

    The result is positive-definite Hermitian; for traceless ``p`` it has
    determinant 1.
    """
    p = hermitian_part(np.asarray(p, dtype=complex))
    w, v = np.linalg.eigh(p)
    return (v * np.exp(w)[..., None, :]) @ dagger(v)


def hermitian_log(P: np.ndarray, tol: float = EPS_VALID) -> np.ndarray:
    """Principal logarithm of a Hermitian positive-definite matrix.

    Raises
    ------
    NotPositiveDefinite
        If ``P`` is not Hermitian or an eigenvalue is <= ``tol``.
    """
    P = np.asarray(P, dtype=complex)
    scale = max(1.0, frob(P))
    if frob(P - dagger(P)) > tol * scale:
        raise NotPositiveDefinite("matrix is not Hermitian")
    w, v = np.linalg.eigh(hermitian_part(P))
    if np.any(w <= tol):
        raise NotPositiveDefinite(f"eigenvalues {w} are not all positive")
    return (v * np.log(w)[..., None, :]) @ dagger(v)


def polar_decompose(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Factor ``g = k @ expm(p)`` with ``k`` in SU(n) and ``p`` Hermitian traceless.

    ``p`` equals ``log(g^H g) / 2``. It is obtained from the SVD
    ``g = W diag(s) V^H`` as ``V diag(log s) V^H`` which avoids squaring
    the condition number of ``g``.
    """
    g = np.asarray(g, dtype=complex)
    w, s, vh = np.linalg.svd(g)
    if np.any(s <= 0):
        raise NotPositiveDefinite("singular input to polar decomposition")
    v = dagger(vh)
    p = (v * np.log(s)[..., None, :]) @ vh
    k = w @ vh
    return k, traceless_hermitian(p)


# --- sampling -----------------------------------------------------------

def random_unitary(rng: np.random.Generator, n: int, size: int | None = None) -> np.ndarray:
    """Haar-random element of SU(n), or a stack of ``size`` independent ones.

    QR of a complex Ginibre matrix with the phases of diag(R) moved into Q
    (which makes Q Haar on U(n)), then divided by an n-th root of det Q.
    """
    if n not in DIMENSIONS:
        raise ValidationError(f"unsupported dimension {n}")
    shape = (n, n) if size is None else (size, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    q = q * (d / np.abs(d))[..., None, :]
    return normalize_det(q)


def random_hermitian_direction(rng: np.random.Generator, n: int, size: int | None = None) -> np.ndarray:
    """Random traceless Hermitian matrix of unit Frobenius norm (or a stack of them)."""
    shape = (n, n) if size is None else (size, n, n)
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    h = traceless_hermitian(z)
    return h / np.linalg.norm(h, axis=(-2, -1))[..., None, None]


def random_group_element(rng: np.random.Generator, n: int, radius=1.0,
                         size: int | None = None) -> np.ndarray:
    """``k exp(r h)`` with Haar ``k`` and a uniformly random unit direction ``h``.

    ``radius`` may be an array of length ``size`` when a stack is requested.
    """
    radius = np.asarray(radius, dtype=float)
    if np.any(radius < 0):
        raise ValidationError("radius must be nonnegative")
    k = random_unitary(rng, n, size)
    if size is None and radius == 0:
        return k
    h = random_hermitian_direction(rng, n, size)
    return k @ hermitian_exp(radius[..., None, None] * h)


def random_torus_element(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform random element of the diagonal maximal torus of SU(n)."""
    angles = rng.uniform(-np.pi, np.pi, n - 1)
    angles = np.append(angles, -angles.sum())
    return np.diag(np.exp(1j * angles))


# --- spectra and centralizers -----------------------------------------

def eigenvalues(a: np.ndarray) -> np.ndarray:
    return np.linalg.eigvals(a)


def match_spectra(src: np.ndarray, dst: np.ndarray) -> list[int]:
    """Greedy nearest matching of eigenvalue lists.

    Returns ``perm`` with ``src[i]`` matched to ``dst[perm[i]]``. The
    ``src`` values are visited by argument ascending; ties in distance go to
    the smallest ``dst`` index.
    """
    order = sorted(range(len(src)), key=lambda i: (np.angle(src[i]), i))
    free = list(range(len(dst)))
    perm = [0] * len(src)
    for i in order:
        j = min(free, key=lambda j: (abs(src[i] - dst[j]), j))
        perm[i] = j
        free.remove(j)
    return perm


def spectrum_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max distance between eigenvalue multisets after greedy matching."""
    ea, eb = eigenvalues(a), eigenvalues(b)
    perm = match_spectra(ea, eb)
    return float(max(abs(ea[i] - eb[perm[i]]) for i in range(len(ea))))


def min_eigen_gap(a: np.ndarray) -> float:
    ev = eigenvalues(a)
    n = len(ev)
    return float(min(abs(ev[i] - ev[j]) for i in range(n) for j in range(i + 1, n)))


@lru_cache(maxsize=None)
def sl_basis(n: int) -> np.ndarray:
    """Complex basis of sl(n): off-diagonal units then E_ii - E_nn."""
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = np.zeros((n, n), dtype=complex)
                e[i, j] = 1
                basis.append(e)
    for i in range(n - 1):
        e = np.zeros((n, n), dtype=complex)
        e[i, i] = 1
        e[n - 1, n - 1] = -1
        basis.append(e)
    return np.array(basis)


@lru_cache(maxsize=None)
def hermitian_basis(n: int) -> np.ndarray:
    """Frobenius-orthonormal real basis of traceless Hermitian matrices."""
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = e[j, i] = 1 / np.sqrt(2)
            basis.append(e)
            e = np.zeros((n, n), dtype=complex)
            e[i, j], e[j, i] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            basis.append(e)
    for k in range(1, n):
        d = np.zeros(n)
        d[:k] = 1
        d[k] = -k
        basis.append(np.diag(d / np.linalg.norm(d)).astype(complex))
    return np.array(basis)


def null_space(op: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Right null space of ``op`` with singular values cut at tol * max(1, s_max).

    Rows of the returned array span the kernel.
    """
    if op.size == 0:
        return np.eye(op.shape[1], dtype=op.dtype)
    _, s, vh = np.linalg.svd(op)
    cut = tol * max(1.0, s[0] if len(s) else 0.0)
    rank = int(np.sum(s > cut))
    return vh[rank:].conj()


def kernel_dimension(op: np.ndarray, tol: float = RANK_TOL) -> int:
    return null_space(op, tol).shape[0]


@dataclass(frozen=True)
class LieAlgebraBasis:
    """Basis of a Lie subalgebra, as a stack of (n, n) matrices."""

    elements: np.ndarray
    field: str = "complex"

    @property
    def dim(self) -> int:
        return len(self.elements)

    def project(self, a: np.ndarray) -> np.ndarray:
        """Orthogonal projection onto the span; requires an orthonormal basis
        (as produced by :func:`hermitian_centralizer_basis`)."""
        if self.dim == 0:
            return np.zeros_like(a)
        coeffs = np.einsum("kij,ij->k", self.elements.conj(), a)
        if self.field == "real":
            coeffs = coeffs.real
        return np.einsum("k,kij->ij", coeffs, self.elements)


def commutator_operator(h: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Matrix of X -> Xh - hX restricted to span(basis), acting on coefficients."""
    cols = [(x @ h - h @ x).ravel() for x in basis]
    return np.array(cols).T


def centralizer_basis(h: np.ndarray, tol: float = RANK_TOL) -> LieAlgebraBasis:
    """Basis of {X in sl(n) : Xh = hX} via the null space of the commutator map."""
    h = np.asarray(h, dtype=complex)
    basis = sl_basis(h.shape[0])
    kernel = null_space(commutator_operator(h, basis), tol)
    return LieAlgebraBasis(np.einsum("rk,kij->rij", kernel, basis))


def hermitian_centralizer_basis(h: np.ndarray, tol: float = RANK_TOL) -> LieAlgebraBasis:
    """Orthonormal real basis of the Hermitian traceless matrices commuting with h.

    For unitary ``h`` this spans the Hermitian half ``i Lie(K_h)`` of the
    complex centralizer.
    """
    h = np.asarray(h, dtype=complex)
    basis = hermitian_basis(h.shape[0])
    op = commutator_operator(h, basis)
    real_op = np.vstack([op.real, op.imag])
    kernel = null_space(real_op, tol).real
    return LieAlgebraBasis(np.einsum("rk,kij->rij", kernel, basis), field="real")
