from __future__ import annotations

import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from perfpoly import polytopes as pt
from perfpoly import symmetry as sy
from perfpoly.mvee import IterationCapExceeded, coincides_with_circumsphere, mvee, report_json
from perfpoly.numberfield import SQRT2, to_float


@pytest.mark.parametrize("n", range(2, 9))
def test_cube_gives_circumsphere(n):
    E = mvee(pt.cube(n))
    assert np.allclose(E.center, 0, atol=1e-5)
    assert np.allclose(E.semiaxes(), math.sqrt(n), rtol=1e-5)


def test_box_semiaxes():
    E = mvee(pt.parallelotope([1, 2]))
    assert np.allclose(E.semiaxes(), [math.sqrt(2), 2 * math.sqrt(2)], rtol=1e-5)
    cmp = coincides_with_circumsphere(E, pt.parallelotope([1, 2]))
    assert not cmp.coincides
    assert math.isclose(cmp.shape_deviation, 0.5 - 0.2, rel_tol=1e-6)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_simplex_matches_group_average(n):
    V = pt.simplex(n)
    E = mvee(V)
    G = V.float_gram()
    # averaging oracle over all vertex permutations
    mats = []
    for perm in itertools.permutations(range(n + 1)):
        g = sy.linear_map_from_images(V, list(perm))
        mats.append(np.array([[to_float(x) for x in r] for r in g]))
    avg_shape = sum(np.linalg.inv(g).T @ E.shape @ np.linalg.inv(g) for g in mats) / len(mats)
    avg_center = sum(g @ E.center for g in mats) / len(mats)
    assert np.allclose(avg_shape, E.shape, atol=1e-5)
    assert np.allclose(avg_center, E.center, atol=1e-5)
    cmp = coincides_with_circumsphere(E, V, tol=1e-5)
    assert cmp.coincides
    # vertices e_i of R^(n+1): circumradius^2 = 1 - 1/(n+1)
    assert np.allclose(E.semiaxes(), math.sqrt(n / (n + 1)), rtol=1e-5)


def test_cell24_coincides():
    V = pt.cell24()
    assert coincides_with_circumsphere(mvee(V), V, 1e-4).coincides


def test_octagon_prism_coincides_with_sphere():
    V = pt.prism(pt.regular_polygon(8), SQRT2)
    assert coincides_with_circumsphere(mvee(V), V, 1e-4).coincides


def _cloud(args):
    # seeded Gaussian clouds: hypothesis shrinking drives raw float arrays toward
    # nearly flat configurations where first-order MVEE needs ~10^6 steps at eps=1e-7
    n, seed = args
    return np.random.default_rng(seed).normal(scale=5.0, size=(3 * n + 4, n))


point_clouds = st.tuples(st.integers(2, 4), st.integers(0, 2**32 - 1)).map(_cloud)


def _spanning(P):
    return np.linalg.matrix_rank(P - P.mean(axis=0), tol=1e-3) == P.shape[1]


@given(point_clouds)
def test_containment_and_monotone_potential(P):
    if not _spanning(P):
        return
    eps = 1e-6
    E = mvee(P, eps=eps, track=True)
    n = P.shape[1]
    d = P - E.center
    vals = np.einsum("ij,jk,ik->i", d, E.shape, d)
    assert vals.max() <= 1 + n * eps + 1e-9
    h = np.array(E.logdet_history)
    assert np.all(np.diff(h) >= -1e-9 * max(1.0, np.abs(h).max()))
    assert np.all(np.linalg.eigvalsh(E.shape) > 0)


@given(point_clouds, st.integers(0, 2**31 - 1))
def test_affine_equivariance(P, seed):
    if not _spanning(P):
        return
    n = P.shape[1]
    rng = np.random.default_rng(seed)
    T = rng.normal(size=(n, n)) + 3 * np.eye(n)
    if abs(np.linalg.det(T)) < 0.1 or np.linalg.cond(T) > 1e3:
        return
    t = rng.normal(size=n)
    eps = 1e-7
    E = mvee(P, eps=eps)
    moved = mvee(P @ T.T + t, eps=eps)
    expect = E.affine_image(T, t)
    scale = np.abs(expect.shape).max()
    assert np.abs(moved.shape - expect.shape).max() <= 10 * eps * scale
    assert np.abs(moved.center - expect.center).max() <= 10 * eps * max(1.0, np.abs(expect.center).max())


def test_degenerate_span():
    with pytest.raises(pt.DegenerateError):
        mvee([[0, 0], [1, 1], [2, 2]])


def test_iteration_cap():
    rng = np.random.default_rng(3)
    with pytest.raises(IterationCapExceeded):
        mvee(rng.normal(size=(40, 3)), eps=1e-9, max_iter=2)


def test_each_solve_under_a_second():
    import time

    for V in (pt.cube(8), pt.cell120(), pt.prism(pt.regular_polygon(8), SQRT2)):
        t = time.perf_counter()
        mvee(V)
        assert time.perf_counter() - t < 1


def test_report_json_fields():
    V = pt.parallelotope([1, 2])
    E = mvee(V)
    data = json.loads(report_json(E, coincides_with_circumsphere(E, V)))
    assert set(data) >= {"center", "shape", "eps", "iterations", "max_violation", "circumsphere_deviation"}
    assert len(data["shape"]) == 4
