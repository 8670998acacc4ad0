"""Seeded sampling of parabolic data and representation tuples."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

import numpy as np

from . import linalg as la
from .retraction import ParabolicData, RepTuple

T = TypeVar("T")


def rng_for(seed: int, index: int) -> np.random.Generator:
    """Independent stream for sample ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), index]))


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CHARVAR_THREADS", "1")))
    except ValueError:
        return 1


def map_samples(fn: Callable[[np.random.Generator, int], T], seed: int, count: int) -> list[T]:
    """Run ``fn(rng, index)`` for every index; results come back in index order."""
    jobs = range(count)
    workers = worker_count()
    if workers == 1:
        return [fn(rng_for(seed, i), i) for i in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: fn(rng_for(seed, i), i), jobs))


def random_regular_diagonal(rng: np.random.Generator, n: int, min_gap: float = 0.1) -> np.ndarray:
    """Diagonal element of SU(n) whose eigenvalues are at least ``min_gap`` apart."""
    while True:
        x = la.random_torus_element(rng, n)
        if la.min_eigen_gap(x) > min_gap:
            return x


def random_pardata(rng: np.random.Generator, n: int, m: int, diagonal: bool = False) -> ParabolicData:
    """Parabolic data with regular unitary classes.

    With ``diagonal=False`` the classes are conjugated by a Haar unitary so
    they are not aligned with the coordinate torus.
    """
    hs = []
    for _ in range(m):
        x = random_regular_diagonal(rng, n)
        if not diagonal:
            u = la.random_unitary(rng, n)
            x = u @ x @ la.dagger(u)
        hs.append(x)
    return ParabolicData.from_elements(hs)


def random_rep_tuple(
    rng: np.random.Generator, pardata: ParabolicData, n: int, dim: int, radius: float = 1.0
) -> RepTuple:
    """Point of ``C_1^G x ... x C_m^G x G^n`` (compact locus when radius = 0)."""
    orbit = []
    for h in pardata.h:
        q = la.random_group_element(rng, dim, radius)
        orbit.append(q @ h @ np.linalg.inv(q))
    free = [la.random_group_element(rng, dim, radius) for _ in range(n)]
    return RepTuple(pardata, tuple(orbit), tuple(free))
