"""Boundary maps of punctured-surface character varieties and dimension counts.

A tuple ``(rho(e_1), ..., rho(e_{m+n}))`` is read through the identification
of the free group with the surface group: ``e_i -> gamma_i`` for
``i < b``, then ``alpha_1..alpha_g``, then ``beta_1..beta_g``; the last
puncture loop is ``gamma_b = (prod [alpha_i, beta_i] gamma_1...gamma_{b-1})^-1``.
Generator indices in words are 1-based; a negative index means the inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg as la
from .errors import IndexOutOfRange, ShapeMismatch, TooFewFactors, ValidationError
from .retraction import ParabolicData
from .traces import ClassPoint, class_coordinates, group_name


@dataclass(frozen=True)
class SurfaceData:
    genus: int
    punctures: int
    m: int
    n: int

    def __post_init__(self):
        if self.genus < 0 or self.m < 0 or self.n < 0:
            raise ValidationError("genus, m and n must be nonnegative")
        if self.punctures < 1:
            raise ValidationError("need at least one puncture")
        if not self.punctures > self.m:
            raise ValidationError("need b > m")
        if self.m + self.n != 2 * self.genus + self.punctures - 1:
            raise ValidationError("need m + n = 2g + b - 1")

    @classmethod
    def genus_zero(cls, m: int, n: int = 0) -> "SurfaceData":
        return cls(0, m + n + 1, m, n)

    @property
    def rank(self) -> int:
        return self.m + self.n

    def alpha(self, i: int) -> int:
        return self.punctures - 1 + i

    def beta(self, i: int) -> int:
        return self.punctures - 1 + self.genus + i

    def gamma_word(self, j: int) -> list[int]:
        """Word in the free generators for the j-th puncture loop (1-based)."""
        if not 1 <= j <= self.punctures:
            raise IndexOutOfRange(f"no puncture {j}")
        if j < self.punctures:
            return [j]
        word: list[int] = []
        for i in range(1, self.genus + 1):
            a, b = self.alpha(i), self.beta(i)
            word += [a, b, -a, -b]
        word += list(range(1, self.punctures))
        return invert_word(word)


@dataclass(frozen=True)
class BoundaryVector:
    points: tuple[ClassPoint, ...]

    def __len__(self):
        return len(self.points)

    @property
    def group(self) -> str | None:
        return self.points[0].group if self.points else None

    def distance(self, other: "BoundaryVector") -> float:
        if len(self) != len(other):
            raise ShapeMismatch("boundary vectors differ in length")
        return max((a.distance(b) for a, b in zip(self.points, other.points)), default=0.0)

    def to_json(self) -> dict:
        return {"group": self.group, "points": [p.to_json() for p in self.points]}


def invert_word(word: Sequence[int]) -> list[int]:
    return [-i for i in reversed(word)]


def word_evaluate(tup: Sequence[np.ndarray], word: Sequence[int]) -> np.ndarray:
    """Left-to-right product of the letters of ``word`` evaluated on ``tup``."""
    if not tup and word:
        raise IndexOutOfRange("empty tuple")
    n = tup[0].shape[0] if len(tup) else 2
    out = np.eye(n, dtype=complex)
    for letter in word:
        if letter == 0 or abs(letter) > len(tup):
            raise IndexOutOfRange(f"generator index {letter} out of range 1..{len(tup)}")
        g = tup[abs(letter) - 1]
        out = out @ (g if letter > 0 else np.linalg.inv(g))
    return out


def _check_tuple(tup: Sequence[np.ndarray], surface: SurfaceData) -> None:
    if len(tup) != surface.rank:
        raise ShapeMismatch(f"tuple of length {len(tup)} for a free group of rank {surface.rank}")


def boundary(tup: Sequence[np.ndarray], surface: SurfaceData) -> BoundaryVector:
    _check_tuple(tup, surface)
    points = [class_coordinates(tup[j - 1]) for j in range(1, surface.punctures)]
    points.append(class_coordinates(word_evaluate(tup, surface.gamma_word(surface.punctures))))
    return BoundaryVector(tuple(points))


def boundary_par(tup: Sequence[np.ndarray], m: int) -> BoundaryVector:
    if not 0 <= m <= len(tup):
        raise ShapeMismatch(f"m={m} exceeds tuple length {len(tup)}")
    return BoundaryVector(tuple(class_coordinates(g) for g in tup[:m]))


def diagram_check(tup: Sequence[np.ndarray], surface: SurfaceData) -> float:
    """Max coordinate discrepancy between pi(boundary) and boundary_par."""
    full = boundary(tup, surface)
    par = boundary_par(tup, surface.m)
    projected = BoundaryVector(full.points[: surface.m])
    return projected.distance(par)


def relative_fiber_membership(
    tup: Sequence[np.ndarray], bvec: BoundaryVector, surface: SurfaceData, tol: float = 1e-12
) -> bool:
    """Whether the tuple lies in the relative character variety over ``bvec``."""
    if len(bvec) != surface.punctures:
        raise ShapeMismatch("boundary vector length differs from the puncture count")
    return boundary(tup, surface).distance(bvec) <= tol


def parabolic_fiber_membership(
    tup: Sequence[np.ndarray], classes: BoundaryVector, tol: float = 1e-12
) -> bool:
    """Whether the first m components lie over the given classes (m = len(classes))."""
    return boundary_par(tup, len(classes)).distance(classes) <= tol


# --- dimension counts -------------------------------------------------

@dataclass(frozen=True)
class DimensionEstimate:
    dim_H: int
    dim_stab: int
    dim_X: int
    dim_formula: int

    @property
    def match(self) -> bool:
        return self.dim_X == self.dim_formula

    def to_json(self) -> dict:
        return {
            "dim_H": self.dim_H,
            "dim_stab": self.dim_stab,
            "dim_X": self.dim_X,
            "dim_formula": self.dim_formula,
            "match": self.match,
        }


def stabilizer_dimension(tup: Sequence[np.ndarray], tol: float = la.RANK_TOL) -> int:
    """Complex dimension of {X in sl(n) : [X, y] = 0 for every y in tup}."""
    basis = la.sl_basis(tup[0].shape[0])
    op = np.vstack([la.commutator_operator(y, basis) for y in tup])
    return la.kernel_dimension(op, tol)


def dim_estimate(
    pardata: ParabolicData, n: int, samples: int, rng: np.random.Generator, dim: int | None = None
) -> DimensionEstimate:
    """Dimension of the parabolic character variety from orbit and stabilizer counts.

    ``dim_X = dim_H - dim G + dim_stab`` where ``dim_H`` is the dimension of
    ``C_1 x ... x C_m x G^n`` and ``dim_stab`` the generic stabilizer
    dimension (max over ``samples`` random points). ``dim_formula`` is
    ``(n + m - 1) dim G + dim Z(G) - m rank G`` with ``dim Z = 0``.
    """
    m = pardata.m
    if m + n < 2:
        raise TooFewFactors("need m + n >= 2")
    if dim is None:
        if not pardata.h:
            raise ValidationError("matrix dimension needed when m = 0")
        dim = pardata.h[0].shape[0]
    dim_g = dim * dim - 1
    rank = dim - 1
    dim_h = sum(dim_g - c.dim for c in pardata.centralizers) + n * dim_g
    dim_stab = 0
    for _ in range(max(1, samples)):
        tup = [
            (q := la.random_group_element(rng, dim)) @ h @ np.linalg.inv(q) for h in pardata.h
        ] + [la.random_group_element(rng, dim) for _ in range(n)]
        dim_stab = max(dim_stab, stabilizer_dimension(tup))
    dim_x = dim_h - dim_g + dim_stab
    formula = (n + m - 1) * dim_g - m * rank
    return DimensionEstimate(dim_h, dim_stab, dim_x, formula)


def group_of(tup: Sequence[np.ndarray]) -> str:
    return group_name(tup[0].shape[0])
