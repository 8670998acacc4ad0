"""Trace coordinates on SL(2, C) and SL(3, C) character varieties."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ShapeMismatch
from .serialize import complex_to_json

SEVEN_LABELS = ("a", "b", "c", "d", "x", "y", "z")
NINE_LABELS = tuple(f"t{i}" for i in range(1, 10))


@dataclass(frozen=True)
class TraceVector:
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ShapeMismatch("labels and values differ in length")

    def __getitem__(self, label: str) -> complex:
        return complex(self.values[self.labels.index(label)])

    def distance(self, other: "TraceVector") -> float:
        if len(self.values) != len(other.values):
            raise ShapeMismatch("trace vectors differ in length")
        if not len(self.values):
            return 0.0
        return float(np.max(np.abs(self.values - other.values)))

    def to_json(self) -> dict:
        return {lab: complex_to_json(v) for lab, v in zip(self.labels, self.values)}


@dataclass(frozen=True)
class ClassPoint:
    """Point of G//G: tr g for SL2, (tr g, tr g^-1) for SL3."""

    group: str
    coords: tuple[complex, ...]

    def distance(self, other: "ClassPoint") -> float:
        if self.group != other.group:
            raise ShapeMismatch("class points from different groups")
        return max(abs(a - b) for a, b in zip(self.coords, other.coords))

    def to_json(self) -> list:
        return [complex_to_json(c) for c in self.coords]


def group_name(n: int) -> str:
    return {2: "SL2", 3: "SL3"}[n]


def tr(a: np.ndarray) -> complex:
    return complex(np.trace(a))


def inv(a: np.ndarray) -> np.ndarray:
    return np.linalg.inv(a)


def class_coordinates(g: np.ndarray) -> ClassPoint:
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    if n == 2:
        return ClassPoint("SL2", (tr(g),))
    if n == 3:
        return ClassPoint("SL3", (tr(g), tr(inv(g))))
    raise ShapeMismatch(f"no class coordinates for n={n}")


def sl2_trace_triple(g1: np.ndarray, g2: np.ndarray) -> tuple[complex, complex, complex]:
    return tr(g1), tr(g2), tr(g1 @ g2)


def sl2_lift(x: complex, y: complex, z: complex) -> tuple[np.ndarray, np.ndarray]:
    """Explicit pair in SL(2, C) with trace triple (x, y, z).

    ``g1 = [[l, 1], [0, 1/l]]`` with ``l + 1/l = x`` (a unipotent Jordan
    block when x = +-2), ``g2 = [[m, 0], [s, 1/m]]`` with ``m + 1/m = y``
    and ``s = z - l m - 1/(l m)``.
    """
    lam = _root(complex(x))
    mu = _root(complex(y))
    s = complex(z) - lam * mu - 1 / (lam * mu)
    g1 = np.array([[lam, 1], [0, 1 / lam]], dtype=complex)
    g2 = np.array([[mu, 0], [s, 1 / mu]], dtype=complex)
    return g1, g2


def _root(x: complex) -> complex:
    """Root of l^2 - x l + 1 = 0 with |l| >= 1."""
    disc = np.sqrt(complex(x * x - 4))
    lam = (x + disc) / 2
    other = (x - disc) / 2
    return lam if abs(lam) >= abs(other) else other


def sl2_seven_traces(g1: np.ndarray, g2: np.ndarray, g3: np.ndarray) -> TraceVector:
    vals = [
        tr(g1), tr(g2), tr(g3),
        tr(g1 @ g2 @ g3),
        tr(g1 @ g2), tr(g2 @ g3), tr(g3 @ g1),
    ]
    return TraceVector(SEVEN_LABELS, np.array(vals))


def sl2_seven_traces_stack(g1: np.ndarray, g2: np.ndarray, g3: np.ndarray) -> np.ndarray:
    """Seven traces for stacks of triples; returns shape (count, 7) in label order."""
    def trace(a):
        return np.trace(a, axis1=-2, axis2=-1)

    g12 = g1 @ g2
    return np.stack(
        [trace(g1), trace(g2), trace(g3), trace(g12 @ g3),
         trace(g12), trace(g2 @ g3), trace(g3 @ g1)],
        axis=-1,
    )


class FrickeVariant(str, enum.Enum):
    PAPER_PRINTED = "paper"
    CORRECTED = "corrected"


def fricke_cubic(a, b, c, d, x, y, z, variant: FrickeVariant | str = FrickeVariant.CORRECTED) -> complex:
    """Relation among the seven traces of a triple in SL(2, C).

    The ``paper`` variant carries ``-abcd``, which does not vanish on the
    identity triple (value -32); ``corrected`` uses ``+abcd`` and vanishes on
    every triple.
    """
    variant = FrickeVariant(variant)
    sign = -1 if variant is FrickeVariant.PAPER_PRINTED else 1
    return (
        x * x + y * y + z * z + x * y * z
        - (a * b + c * d) * x - (a * d + b * c) * y - (a * c + b * d) * z
        - 4 + a * a + b * b + c * c + d * d + sign * a * b * c * d
    )


def fricke_scale(coords: Sequence[complex]) -> float:
    """Tolerance scale (1 + max |coord|)^3 for a degree-3 relation."""
    return (1.0 + max(abs(c) for c in coords)) ** 3


def sl3_nine_traces(g1: np.ndarray, g2: np.ndarray) -> TraceVector:
    g1i, g2i = inv(g1), inv(g2)
    g12 = g1 @ g2
    vals = [
        tr(g1), tr(g1i), tr(g2), tr(g2i),
        tr(g12), tr(inv(g12)),
        tr(g1i @ g2), tr(g1 @ g2i),
        tr(g12 @ g1i @ g2i),
    ]
    return TraceVector(NINE_LABELS, np.array(vals))


def sl3_transpose_involution(g1: np.ndarray, g2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(g1, g2) -> (g1^T, g2^T): fixes t1..t8 and sends t9 to tr(g2^-1 g1^-1 g2 g1)."""
    return np.asarray(g1).T.copy(), np.asarray(g2).T.copy()
