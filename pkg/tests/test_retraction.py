import numpy as np
import pytest

from charvar import linalg as la
from charvar.errors import NotDiagonalizable, SpectrumMismatch, ValidationError
from charvar.retraction import (
    ParabolicData,
    RepTuple,
    build_retraction,
    evaluate_path,
    orbit_solve,
    phi,
)
from charvar.sampling import random_pardata, random_rep_tuple
from charvar.traces import sl2_trace_triple


def test_phi_fixes_unitary(rng):
    for n in (2, 3):
        k = la.random_unitary(rng, n)
        for t in (0.0, 0.3, 1.0):
            assert la.frob(phi(k, t) - k) < 1e-12


def test_phi_diagonal():
    got = phi(np.diag([2.0, 0.5]), 0.5)
    assert np.allclose(got, np.diag([np.sqrt(2), 1 / np.sqrt(2)]), atol=1e-14)


def test_phi_endpoints(rng):
    for n in (2, 3):
        g = la.random_group_element(rng, n, 2.0)
        assert la.frob(phi(g, 1.0) - g) < 1e-12 * la.frob(g)
        assert la.is_unitary(phi(g, 0.0), 1e-12)
    with pytest.raises(ValidationError):
        phi(np.eye(2), 1.5)


def test_phi_biequivariance(rng):
    for n in (2, 3):
        for _ in range(200):
            g = la.random_group_element(rng, n, 1.5)
            a, b = la.random_unitary(rng, n), la.random_unitary(rng, n)
            t = rng.uniform()
            lhs = a @ phi(g, t) @ la.dagger(b)
            rhs = phi(a @ g @ la.dagger(b), t)
            assert la.frob(lhs - rhs) <= 1e-9


def test_orbit_solve_identity_case():
    h = np.diag(np.exp(1j * np.array([0.4, -0.4])))
    assert np.allclose(orbit_solve(h, h), np.eye(2), atol=1e-14)
    h3 = np.diag(np.exp(1j * np.array([0.4, 0.4, -0.8])))
    assert np.allclose(orbit_solve(h3, h3), np.eye(3), atol=1e-14)


def test_orbit_solve_normal_gives_unitary(rng):
    for n in (2, 3):
        h = np.diag(np.exp(1j * np.array([0.7, -1.9, 1.2][:n - 1] + [0.0])))
        h = la.normalize_det(h)
        u = la.random_unitary(rng, n)
        y = u @ h @ la.dagger(u)
        q = orbit_solve(y, h)
        assert la.is_unitary(q, 1e-12)
        assert la.frob(q @ h @ la.dagger(q) - y) < 1e-12
        assert abs(np.linalg.det(q) - 1) < 1e-12


def test_orbit_solve_general_conjugate(rng):
    for n in (2, 3):
        for _ in range(100):
            h = la.random_unitary(rng, n)
            g = la.random_group_element(rng, n, 1.5)
            y = g @ h @ np.linalg.inv(g)
            q = orbit_solve(y, h)
            # independent check through an eigendecomposition of y
            assert la.frob(q @ h @ np.linalg.inv(q) - y) <= 1e-8
            assert abs(np.linalg.det(q) - 1) < 1e-10


def test_orbit_solve_degenerate_class(rng):
    lam = np.exp(2j * np.pi / 7)
    h = np.diag([lam, lam, lam**-2])
    g = la.random_group_element(rng, 3, 1.0)
    y = g @ h @ np.linalg.inv(g)
    q = orbit_solve(y, h)
    assert la.frob(q @ h @ np.linalg.inv(q) - y) <= 1e-8


def test_orbit_solve_errors():
    h = np.diag([1j, -1j])
    with pytest.raises(SpectrumMismatch):
        orbit_solve(np.diag([np.exp(0.3j), np.exp(-0.3j)]), h)
    with pytest.raises(NotDiagonalizable):
        orbit_solve(np.array([[1, 1], [0, 1]], dtype=complex), np.eye(2))


def test_rep_tuple_validation():
    pd = ParabolicData.from_elements([np.diag([1j, -1j])])
    with pytest.raises(SpectrumMismatch):
        RepTuple.create(pd, [np.eye(2)], [])
    with pytest.raises(ValidationError):
        RepTuple.create(pd, [np.diag([1j, -1j])], [np.diag([2.0, 2.0])])


def test_path_free_diagonal():
    pd = ParabolicData.from_elements([])
    path = build_retraction(RepTuple.create(pd, [], [np.diag([2.0, 0.5])]))
    for t in (0.0, 0.25, 0.5, 1.0):
        g = evaluate_path(path, t).free_components[0]
        assert np.allclose(g, np.diag([2**t, 2**-t]), atol=1e-14)


def test_path_compact_input_is_fixed(rng):
    for n, m, k in ((2, 2, 1), (3, 1, 1)):
        pd = random_pardata(rng, n, m)
        tup = random_rep_tuple(rng, pd, k, n, radius=0.0)
        path = build_retraction(tup)
        for t in np.linspace(0, 1, 9):
            assert evaluate_path(path, t).distance(tup) <= 1e-9


def test_path_endpoint_for_single_orbit(rng):
    h = np.diag(np.exp(1j * np.array([1.1, -1.1])))
    pd = ParabolicData.from_elements([h])
    for _ in range(50):
        g = la.random_group_element(rng, 2, 1.5)
        tup = RepTuple.create(pd, [g @ h @ np.linalg.inv(g)], [])
        end = evaluate_path(build_retraction(tup), 0.0).orbit_components[0]
        assert la.is_unitary(end, 1e-8)
        assert la.spectrum_distance(end, h) <= 1e-8


def test_path_invariants_along_t(rng):
    for n, m, k in ((2, 2, 1), (3, 2, 1)):
        pd = random_pardata(rng, n, m)
        tup = random_rep_tuple(rng, pd, k, n, radius=1.0)
        path = build_retraction(tup)
        assert evaluate_path(path, 1.0).distance(tup) <= 1e-9
        assert evaluate_path(path, 0.0).is_compact(1e-8)
        for t in np.linspace(0, 1, 21):
            pt = evaluate_path(path, t)
            for y, h in zip(pt.orbit_components, pd.h):
                assert la.spectrum_distance(y, h) <= 1e-7
            for c in pt.components:
                assert abs(np.linalg.det(c) - 1) <= 1e-9


def test_path_lipschitz_and_trace_continuity(rng):
    pd = ParabolicData.from_elements([])
    tup = RepTuple.create(pd, [], [la.random_group_element(rng, 2, 1.0) for _ in range(2)])
    path = build_retraction(tup)
    grid = np.linspace(0, 1, 10_001)
    prev_pt, prev_tr = None, None
    bound = path.lipschitz_bound()
    for t in grid:
        pt = evaluate_path(path, t)
        tr = np.array(sl2_trace_triple(*pt.free_components))
        if prev_pt is not None:
            assert np.max(np.abs(tr - prev_tr)) <= 1e-3
            assert pt.distance(prev_pt) <= bound * 1e-4
        prev_pt, prev_tr = pt, tr


def test_path_json_fields(rng):
    pd = random_pardata(rng, 2, 1)
    path = build_retraction(random_rep_tuple(rng, pd, 1, 2))
    obj = path.to_json()
    assert set(obj) == {"orbit", "free"}
    assert set(obj["orbit"][0]) == {"kappa", "pi"}
    assert set(obj["free"][0]) == {"k", "p"}
