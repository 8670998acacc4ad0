"""Deformation retractions of G^n and of conjugacy orbits onto compact loci.

A point of ``C_1 x ... x C_m x G^n`` (``C_i`` the conjugacy orbit of the
unitary ``h_i``) is retracted by the polar part of a conjugator: if
``y = q h q^-1`` and ``q = kappa exp(pi)``, the orbit factor follows
``kappa exp(t pi) h exp(-t pi) kappa^-1``; free factors follow
``k exp(t p)``. ``t = 1`` is the identity end and ``t = 0`` the compact end.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg as la
from .errors import DimensionMismatch, NotDiagonalizable, SpectrumMismatch, ValidationError
from .serialize import matrix_to_json

SPECTRUM_TOL = 1e-8
COND_MAX = 1e8


@dataclass(frozen=True)
class ParabolicData:
    """Fixed unitary conjugacy-class representatives and their centralizers."""

    h: tuple[np.ndarray, ...]
    centralizers: tuple[la.LieAlgebraBasis, ...] = field(repr=False)
    hermitian_centralizers: tuple[la.LieAlgebraBasis, ...] = field(repr=False)

    @classmethod
    def from_elements(cls, h: Sequence[np.ndarray]) -> "ParabolicData":
        hs = tuple(la.unitary_element(x) for x in h)
        if len({x.shape for x in hs}) > 1:
            raise DimensionMismatch("parabolic data mixes matrix sizes")
        return cls(
            hs,
            tuple(la.centralizer_basis(x) for x in hs),
            tuple(la.hermitian_centralizer_basis(x) for x in hs),
        )

    @property
    def m(self) -> int:
        return len(self.h)

    @property
    def compact_centralizers(self) -> tuple[la.LieAlgebraBasis, ...]:
        """Skew-Hermitian bases spanning Lie(K_i)."""
        return tuple(la.LieAlgebraBasis(1j * b.elements, "real") for b in self.hermitian_centralizers)


@dataclass(frozen=True)
class RepTuple:
    pardata: ParabolicData
    orbit_components: tuple[np.ndarray, ...]
    free_components: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.orbit_components) != self.pardata.m:
            raise DimensionMismatch(
                f"{len(self.orbit_components)} orbit components for m={self.pardata.m}"
            )

    @classmethod
    def create(cls, pardata: ParabolicData, orbit, free, check: bool = True) -> "RepTuple":
        orbit = tuple(np.asarray(y, dtype=complex) for y in orbit)
        free = tuple(np.asarray(g, dtype=complex) for g in free)
        if check:
            orbit = tuple(la.group_element(y, 1e-9) for y in orbit)
            free = tuple(la.group_element(g, 1e-9) for g in free)
            for y, h in zip(orbit, pardata.h):
                if la.spectrum_distance(y, h) > SPECTRUM_TOL:
                    raise SpectrumMismatch("orbit component spectrum differs from h_i")
        return cls(pardata, orbit, free)

    @property
    def components(self) -> tuple[np.ndarray, ...]:
        return self.orbit_components + self.free_components

    @property
    def dim(self) -> int:
        comps = self.components or self.pardata.h
        return comps[0].shape[0] if comps else 0

    def conjugate(self, u: np.ndarray) -> "RepTuple":
        ui = np.linalg.inv(u)
        return RepTuple(
            self.pardata,
            tuple(u @ y @ ui for y in self.orbit_components),
            tuple(u @ g @ ui for g in self.free_components),
        )

    def distance(self, other: "RepTuple") -> float:
        return max((la.frob(a - b) for a, b in zip(self.components, other.components)), default=0.0)

    def is_compact(self, tol: float = 1e-8) -> bool:
        return all(la.is_unitary(c, tol) for c in self.components)


def phi(g: np.ndarray, t: float) -> np.ndarray:
    """Retraction of G onto SU(n): ``k exp(p) -> k exp(t p)``."""
    if not 0.0 <= t <= 1.0:
        raise ValidationError("t must lie in [0, 1]")
    k, p = la.polar_decompose(g)
    return k @ la.hermitian_exp(t * p)


def _schur_eigen(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    from scipy.linalg import schur

    t, z = schur(y, output="complex")
    return np.diag(t).copy(), z


def orbit_solve(y: np.ndarray, h: np.ndarray, tol: float = SPECTRUM_TOL) -> np.ndarray:
    """Find ``q`` in SL(n, C) with ``q h q^-1 = y``.

    ``q`` is unitary whenever ``y`` is normal. Raises SpectrumMismatch or
    NotDiagonalizable.
    """
    y = np.asarray(y, dtype=complex)
    h = np.asarray(h, dtype=complex)
    ev_h, u = _schur_eigen(h)
    if la.is_normal(y):
        ev_y, v = _schur_eigen(y)
    else:
        ev_y, v = np.linalg.eig(y)
        v = v / np.linalg.norm(v, axis=0)
        if np.linalg.cond(v) > COND_MAX:
            raise NotDiagonalizable("orbit component has a defective eigenvalue")
    perm = la.match_spectra(ev_y, ev_h)
    if max(abs(ev_y[i] - ev_h[perm[i]]) for i in range(len(ev_y))) > tol:
        raise SpectrumMismatch(f"spectra {ev_y} and {ev_h} differ")
    # column perm[i] of u spans the h-eigenline matched to v[:, i]
    u_matched = u[:, perm]
    q = v @ la.dagger(u_matched)
    return la.normalize_det(q)


@dataclass(frozen=True)
class RetractionPath:
    """Per-factor polar data; ``evaluate(t)`` gives the point at time t."""

    pardata: ParabolicData
    orbit: tuple[tuple[np.ndarray, np.ndarray], ...]
    free: tuple[tuple[np.ndarray, np.ndarray], ...]

    def evaluate(self, t: float) -> RepTuple:
        return evaluate_path(self, t)

    def lipschitz_bound(self) -> float:
        """Crude bound on d/dt of any component (Frobenius)."""
        norms = [la.frob(p) for _, p in self.free] + [2 * la.frob(p) for _, p in self.orbit]
        big = max(norms, default=0.0)
        return max(1.0, big) * float(np.exp(2 * big)) * 3.0

    def to_json(self) -> dict:
        return {
            "orbit": [{"kappa": matrix_to_json(k), "pi": matrix_to_json(p)} for k, p in self.orbit],
            "free": [{"k": matrix_to_json(k), "p": matrix_to_json(p)} for k, p in self.free],
        }


def build_retraction(tup: RepTuple) -> RetractionPath:
    orbit = []
    for y, h in zip(tup.orbit_components, tup.pardata.h):
        q = orbit_solve(y, h)
        orbit.append(la.polar_decompose(q))
    free = tuple(la.polar_decompose(g) for g in tup.free_components)
    return RetractionPath(tup.pardata, tuple(orbit), free)


def evaluate_path(path: RetractionPath, t: float) -> RepTuple:
    if not 0.0 <= t <= 1.0:
        raise ValidationError("t must lie in [0, 1]")
    orbit = []
    for (kappa, pi), h in zip(path.orbit, path.pardata.h):
        e = la.hermitian_exp(t * pi)
        ei = la.hermitian_exp(-t * pi)
        orbit.append(kappa @ e @ h @ ei @ la.dagger(kappa))
    free = tuple(k @ la.hermitian_exp(t * p) for k, p in path.free)
    return RepTuple(path.pardata, tuple(orbit), free)
