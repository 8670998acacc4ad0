"""Kempf-Ness function, its gradient at the identity, and a descent flow.

The group ``(G_1 x ... x G_m) x G`` acts on ``G^m x G^n`` by
``f_i -> g f_i h_i^-1`` and ``g_j -> g g_j g^-1``; ``G_i`` is the
centralizer of the i-th parabolic element. Points are embedded by their
matrix entries with the Frobenius norm, so

    F(f, g) = sum ||f_i||^2 + sum ||g_j||^2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg as la
from .errors import DimensionMismatch
from .retraction import ParabolicData


class FlowStatus(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    NON_CLOSED = "NonClosedOrbitSuspected"


class OrbitStatus(str, enum.Enum):
    CLOSED = "Closed"
    NOT_CLOSED = "NotClosed"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class KNResidual:
    xi: np.ndarray
    etas: tuple[np.ndarray, ...]

    @property
    def norm(self) -> float:
        return math.sqrt(la.frob(self.xi) ** 2 + sum(la.frob(e) ** 2 for e in self.etas))


@dataclass
class KNReport:
    F_trace: list[float] = field(default_factory=list)
    residual_norm: float = 0.0
    iterations: int = 0
    status: FlowStatus = FlowStatus.MAX_ITERATIONS

    def to_json(self) -> dict:
        return {
            "F": list(self.F_trace),
            "residual": self.residual_norm,
            "iters": self.iterations,
            "status": self.status.value,
        }


def kn_function(f: Sequence[np.ndarray], g: Sequence[np.ndarray]) -> float:
    return float(sum(la.frob(x) ** 2 for x in f) + sum(la.frob(x) ** 2 for x in g))


def kn_lower_bound(m: int, n: int, dim: int) -> float:
    """AM-GM bound ||x||_F^2 >= dim for det-1 matrices, attained on SU(dim)."""
    return float((m + n) * dim)


def kn_residual(f: Sequence[np.ndarray], g: Sequence[np.ndarray], pardata: ParabolicData) -> KNResidual:
    """Half the gradient of F at the identity of the acting group.

    ``xi`` is the G-component, ``etas[i]`` the G_i-component in the
    coordinates of the acting group (G_i acts by right inverse translation,
    hence ``eta_i = -P_i(f_i^H f_i)`` with ``P_i`` the projection onto the
    Hermitian part of Lie(G_i)). Acting by ``(exp(t eta), exp(t xi))``, i.e.
    ``f_i -> exp(t xi) f_i exp(-t eta_i)``, ``g_j -> exp(t xi) g_j exp(-t xi)``,
    changes F at rate ``2 (|xi|^2 + sum |eta_i|^2)``.
    """
    if len(f) != pardata.m:
        raise DimensionMismatch(f"{len(f)} orbit factors for m={pardata.m}")
    dim = (list(f) + list(g) + list(pardata.h))[0].shape[0] if (f or g or pardata.h) else 2
    total = np.zeros((dim, dim), dtype=complex)
    for x in f:
        total += x @ la.dagger(x)
    for x in g:
        xd = la.dagger(x)
        total += x @ xd - xd @ x
    xi = la.traceless_hermitian(total)
    etas = tuple(
        -basis.project(la.traceless_hermitian(la.dagger(x) @ x))
        for x, basis in zip(f, pardata.hermitian_centralizers)
    )
    return KNResidual(xi, etas)


def _step(f, g, res: KNResidual, s: float):
    left = la.hermitian_exp(-s * res.xi)
    right = la.hermitian_exp(s * res.xi)
    f_new = [left @ x @ la.hermitian_exp(s * eta) for x, eta in zip(f, res.etas)]
    g_new = [left @ x @ right for x in g]
    return [_renormalize(x) for x in f_new], [_renormalize(x) for x in g_new]


def _renormalize(x: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    if abs(np.linalg.det(x) - 1) > tol:
        return la.normalize_det(x)
    return x


def _stalled(history: list[float], window: int, rate: float) -> bool:
    """Mean per-iteration log-decrease of the residual over ``window`` steps below ``rate``."""
    if len(history) <= window:
        return False
    old, new = history[-window - 1], history[-1]
    if new <= 0:
        return False
    return math.log(old / new) / window < rate


def kn_flow(
    f: Sequence[np.ndarray],
    g: Sequence[np.ndarray],
    pardata: ParabolicData,
    tol: float = 1e-6,
    max_iter: int = 10_000,
    stall_window: int = 500,
    stall_rate: float = 1e-3,
    armijo: float = 1e-4,
    max_backtracks: int = 60,
) -> tuple[tuple[list[np.ndarray], list[np.ndarray]], KNReport]:
    """Backtracking descent of F along its gradient at the identity.

    Returns the final point and a :class:`KNReport`. The run stops with
    ``Converged`` once the residual norm is at most ``tol``, with
    ``NonClosedOrbitSuspected`` when the residual decays slower than
    ``stall_rate`` per iteration (averaged over ``stall_window``), and with
    ``MaxIterations`` otherwise.
    """
    f = [np.asarray(x, dtype=complex) for x in f]
    g = [np.asarray(x, dtype=complex) for x in g]
    value = kn_function(f, g)
    report = KNReport(F_trace=[value])
    history = []
    res = kn_residual(f, g, pardata)
    for it in range(max_iter + 1):
        r = res.norm
        history.append(r)
        report.residual_norm = r
        report.iterations = it
        if r <= tol:
            report.status = FlowStatus.CONVERGED
            break
        if _stalled(history, stall_window, stall_rate):
            report.status = FlowStatus.NON_CLOSED
            break
        if it == max_iter:
            report.status = FlowStatus.MAX_ITERATIONS
            break
        s = 1.0 / (1.0 + r)
        decrease = 2.0 * r * r
        for _ in range(max_backtracks):
            f_try, g_try = _step(f, g, res, s)
            v_try = kn_function(f_try, g_try)
            if v_try < value and v_try <= value - armijo * s * decrease:
                break
            s *= 0.5
        else:
            # no representable decrease left; treat as a stall
            report.status = FlowStatus.NON_CLOSED
            break
        f, g, value = f_try, g_try, v_try
        report.F_trace.append(value)
        res = kn_residual(f, g, pardata)
    return (f, g), report


def closed_orbit_probe(
    f: Sequence[np.ndarray],
    g: Sequence[np.ndarray],
    pardata: ParabolicData,
    tol: float = 1e-6,
    max_iter: int = 10_000,
) -> OrbitStatus:
    _, report = kn_flow(f, g, pardata, tol=tol, max_iter=max_iter)
    if report.status is FlowStatus.CONVERGED:
        return OrbitStatus.CLOSED
    if report.status is FlowStatus.NON_CLOSED:
        bound = kn_lower_bound(len(f), len(g), (list(f) + list(g))[0].shape[0])
        if report.F_trace[-1] < report.F_trace[0] and report.F_trace[-1] >= bound - 1e-9:
            return OrbitStatus.NOT_CLOSED
    return OrbitStatus.INCONCLUSIVE
