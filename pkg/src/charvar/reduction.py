"""Reduction of parabolic quotients with a regular first class to torus quotients.

For regular diagonal ``x`` in SU(n) the centralizer of ``x`` in SU(n) is
the diagonal torus T, and ``[(rest)] -> [(x, rest)]`` identifies
``H'/T`` with ``H/K``. Classes are compared through word-trace
fingerprints.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg as la
from .errors import NotRegular, SpectrumMismatch, ValidationError
from .retraction import ParabolicData, RepTuple, SPECTRUM_TOL
from .traces import TraceVector

FINGERPRINT_DEPTH = 4
CLASS_TOL = 1e-6


def is_regular(x: np.ndarray, gap: float = la.GAP_TOL) -> bool:
    return la.min_eigen_gap(np.asarray(x, dtype=complex)) > gap


@dataclass(frozen=True)
class TorusContext:
    x: np.ndarray
    torus_basis: la.LieAlgebraBasis

    @classmethod
    def from_element(cls, x: np.ndarray) -> "TorusContext":
        x = la.unitary_element(x)
        if la.frob(x - np.diag(np.diag(x))) > la.EPS_VALID:
            raise ValidationError("torus context expects a diagonal element")
        if not is_regular(x):
            raise NotRegular("x has a repeated eigenvalue")
        basis = la.centralizer_basis(x)
        return cls(x, basis)

    @property
    def n(self) -> int:
        return self.x.shape[0]


def regular_torus_element(angles: Sequence[float]) -> np.ndarray:
    """diag(exp(i a_1), ..., exp(i a_{n-1}), exp(-i sum a))."""
    a = np.append(np.asarray(angles, dtype=float), -np.sum(angles))
    return np.diag(np.exp(1j * a))


def eta(ctx: TorusContext, rest: RepTuple, pardata: ParabolicData | None = None) -> RepTuple:
    """Prepend the regular element ``x`` as the first orbit component.

    Only the first factor is treated as the regular one; reorder the classes
    beforehand when a different factor is regular.
    """
    if not is_regular(ctx.x):
        raise NotRegular("x is not regular")
    if pardata is None:
        pardata = ParabolicData.from_elements((ctx.x,) + rest.pardata.h)
    return RepTuple(pardata, (ctx.x,) + rest.orbit_components, rest.free_components)


def diagonalizing_unitary(y: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Unitary ``u`` with det 1 and ``u y u^-1 = x`` for diagonal regular ``x``.

    Eigenvalues of ``y`` are visited by argument ascending in (-pi, pi];
    each eigenvector is phase-normalised so its largest entry is real
    positive, which fixes ``u`` within its torus coset.
    """
    from scipy.linalg import schur

    t, z = schur(np.asarray(y, dtype=complex), output="complex")
    ev = np.diag(t)
    target = np.diag(x)
    perm = la.match_spectra(ev, target)
    if max(abs(ev[i] - target[perm[i]]) for i in range(len(ev))) > SPECTRUM_TOL:
        raise SpectrumMismatch("y is not conjugate to x")
    cols = np.empty_like(z)
    for i, j in enumerate(perm):
        v = z[:, i]
        k = int(np.argmax(np.abs(v)))
        cols[:, j] = v * (abs(v[k]) / v[k])
    u = la.dagger(cols)
    return la.normalize_det(u)


def eta_inverse(ctx: TorusContext, tup: RepTuple, pardata: ParabolicData | None = None) -> RepTuple:
    """Conjugate ``tup`` so its first orbit component equals ``x`` and drop it."""
    if not is_regular(ctx.x):
        raise NotRegular("x is not regular")
    if not tup.orbit_components:
        raise ValidationError("tuple has no orbit component")
    y = tup.orbit_components[0]
    if not la.is_unitary(y, 1e-8):
        raise ValidationError("first orbit component must be unitary")
    if la.spectrum_distance(y, ctx.x) > SPECTRUM_TOL:
        raise SpectrumMismatch("spectrum of the first orbit component differs from x")
    u = diagonalizing_unitary(y, ctx.x)
    conj = tup.conjugate(u)
    if pardata is None:
        pardata = ParabolicData.from_elements(tup.pardata.h[1:])
    return RepTuple(pardata, conj.orbit_components[1:], conj.free_components)


@lru_cache(maxsize=64)
def _word_labels(names: tuple[str, ...], depth: int) -> tuple[str, ...]:
    labels, level = [], [()]
    for _ in range(depth):
        level = [w + (a,) for w in level for a in names]
        labels += [".".join(w) for w in level]
    return tuple(labels)


def fingerprint(tup: RepTuple | Sequence[np.ndarray], ctx: TorusContext | None = None,
                depth: int = FINGERPRINT_DEPTH) -> TraceVector:
    """Traces of every word of length 1..depth in the components and their inverses.

    With ``ctx`` the alphabet also contains ``x`` and ``x^-1``, so the vector
    is invariant under conjugation by the torus but detects any other
    conjugation.
    """
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    comps = list(tup.components) if isinstance(tup, RepTuple) else list(tup)
    names = [f"g{i + 1}" for i in range(len(comps))]
    if ctx is not None:
        comps = [ctx.x] + comps
        names = ["x"] + names
    if not comps:
        return TraceVector((), np.zeros(0, dtype=complex))
    stack = np.array(comps)
    letters = np.concatenate([stack, np.linalg.inv(stack)])
    names = names + [f"{a}^-1" for a in names]
    k = letters.shape[-1]
    letters_t = np.swapaxes(letters, -1, -2).reshape(len(letters), k * k)
    traces, prefix = [np.trace(letters, axis1=-2, axis2=-1)], letters
    for level in range(1, depth):
        # tr(P L) = <vec P, vec L^T> for every prefix P and letter L, as one product
        traces.append((prefix.reshape(len(prefix), k * k) @ letters_t.T).ravel())
        if level + 1 < depth:
            prefix = (prefix[:, None] @ letters[None, :]).reshape(-1, *letters.shape[1:])
    return TraceVector(_word_labels(tuple(names), depth), np.concatenate(traces))


def eta_witness(rng: np.random.Generator, dim: int, m: int, n: int,
                depth: int = FINGERPRINT_DEPTH) -> dict:
    """One sample of the well-definedness, injectivity and surjectivity checks for eta.

    Returns the measured fingerprint distances:

    ``well_defined``
        between eta(rest) and eta(t rest t^-1) for a random torus element t.
    ``input_gap`` / ``output_gap``
        between two unrelated inputs (with x in the alphabet) and between
        their images.
    ``surjective``
        between a random point of the compact locus and eta(eta_inverse(point)).
    ``inverse_ambiguity``
        between eta_inverse of a point and of a unitary conjugate of it
        (with x in the alphabet).
    """
    from .sampling import random_pardata, random_regular_diagonal, random_rep_tuple

    if m < 1:
        raise ValidationError("need at least one parabolic class")
    ctx = TorusContext.from_element(random_regular_diagonal(rng, dim))
    rest_data = random_pardata(rng, dim, m - 1)
    full_data = ParabolicData.from_elements((ctx.x,) + rest_data.h)
    rest = random_rep_tuple(rng, rest_data, n, dim, radius=0.0)
    other = random_rep_tuple(rng, rest_data, n, dim, radius=0.0)
    t = la.random_torus_element(rng, dim)

    out = fingerprint(eta(ctx, rest, full_data), depth=depth)
    well_defined = out.distance(
        fingerprint(eta(ctx, rest.conjugate(t), full_data), depth=depth)
    )
    input_gap = fingerprint(rest, ctx, depth).distance(fingerprint(other, ctx, depth))
    output_gap = out.distance(
        fingerprint(eta(ctx, other, full_data), depth=depth)
    )

    w = la.random_unitary(rng, dim)
    point = random_rep_tuple(rng, rest_data, n, dim, radius=0.0)
    point = RepTuple(full_data, (w @ ctx.x @ la.dagger(w),) + point.orbit_components,
                     point.free_components)
    back = eta(ctx, eta_inverse(ctx, point, rest_data), full_data)
    surjective = fingerprint(back, depth=depth).distance(fingerprint(point, depth=depth))

    moved = point.conjugate(la.random_unitary(rng, dim))
    inverse_ambiguity = fingerprint(eta_inverse(ctx, point, rest_data), ctx, depth).distance(
        fingerprint(eta_inverse(ctx, moved, rest_data), ctx, depth)
    )
    return {
        "well_defined": well_defined,
        "input_gap": input_gap,
        "output_gap": output_gap,
        "surjective": surjective,
        "inverse_ambiguity": inverse_ambiguity,
    }
