"""Minimal-volume enclosing (Loewner-John) ellipsoids of finite point sets.

Khachiyan's barycentric ascent on the lifted points q_i = (p_i, 1) with the
Todd-Yildirim away steps.  Weights start uniform, so runs are deterministic;
the weight update depends only on the affine-invariant values q_i^T X^-1 q_i,
which makes the iteration affine equivariant.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .polytopes import DegenerateError, VertexSet


class IterationCapExceeded(RuntimeError):
    pass


@dataclass
class Ellipsoid:
    """{x : (x - center)^T shape (x - center) <= 1}."""

    center: np.ndarray
    shape: np.ndarray
    tolerance: float
    iterations: int = 0
    max_violation: float = 0.0
    logdet_history: list = field(default_factory=list, repr=False)
    gram: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return len(self.center)

    def semiaxes(self) -> np.ndarray:
        """Semi-axis lengths in increasing order, measured in the chart metric."""
        if self.gram is None:
            lam = np.linalg.eigvalsh(self.shape)
        else:
            lam = np.linalg.eigvals(np.linalg.solve(self.gram, self.shape)).real
        return np.sort(1.0 / np.sqrt(lam))

    def contains(self, x: Sequence[float], slack: float = 0.0) -> bool:
        d = np.asarray(x, dtype=float) - self.center
        return float(d @ self.shape @ d) <= 1.0 + slack

    def volume_factor(self) -> float:
        """Volume divided by the volume of the unit ball."""
        return float(np.linalg.det(self.shape) ** -0.5)

    def affine_image(self, T: np.ndarray, t: np.ndarray) -> Ellipsoid:
        """The ellipsoid {T x + t : x in self}."""
        Tinv = np.linalg.inv(T)
        shape = Tinv.T @ self.shape @ Tinv
        return Ellipsoid(T @ self.center + t, (shape + shape.T) / 2, self.tolerance, self.iterations)


def _as_points(points) -> np.ndarray:
    if isinstance(points, VertexSet):
        return points.float_array()
    P = np.asarray(points, dtype=float)
    if P.ndim != 2:
        raise ValueError("points must be a list of n-vectors")
    return P


def mvee(points, eps: float = 1e-7, max_iter: int = 10**6, track: bool = False) -> Ellipsoid:
    """Loewner-John ellipsoid of ``points`` up to the factor (1+eps) in the lifted norm.

    Stops once max_i q_i^T X(u)^-1 q_i <= (1+eps)(n+1).  With ``track`` the
    log-determinant of X(u) is recorded after every step.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    P = _as_points(points)
    m, n = P.shape
    if m < n + 1 or np.linalg.matrix_rank(P - P.mean(axis=0)) < n:
        raise DegenerateError("points do not affinely span the space")
    Q = np.hstack([P, np.ones((m, 1))])
    d = n + 1
    u = np.full(m, 1.0 / m)
    history = []

    def lifted_norms():
        # X(u) = R^T R from a QR of the weighted lifted points; going through R
        # instead of X^-1 keeps the error at cond(R) rather than cond(R)^2
        R = np.linalg.qr(np.sqrt(u)[:, None] * Q, mode="r")
        Z = np.linalg.solve(R.T, Q.T)
        return np.einsum("ij,ij->j", Z, Z), 2.0 * float(np.sum(np.log(np.abs(np.diag(R)))))

    M, logdet = lifted_norms()
    if track:
        history.append(logdet)
    it = 0
    while True:
        j = int(np.argmax(M))
        Mj = M[j]
        support = np.flatnonzero(u > 0)
        k = int(support[np.argmin(M[support])])
        Mk = M[k]
        if Mj <= (1 + eps) * d:
            break
        if it >= max_iter:
            raise IterationCapExceeded(f"mvee did not converge in {max_iter} iterations")
        it += 1
        if Mj - d >= d - Mk or u[k] >= 1.0:
            idx, step = j, (Mj - d) / (d * (Mj - 1))
        else:
            idx, step = k, -min((d - Mk) / (d * (Mk - 1)), u[k] / (1 - u[k]))
        # u <- (1 - step) u + step e_idx; a negative step is an away step
        u *= 1 - step
        u[idx] += step
        if step < 0 and u[idx] < 1e-14:
            u[idx] = 0.0
        M, logdet = lifted_norms()
        if track:
            history.append(logdet)
    center = P.T @ u
    scatter = (P * u[:, None]).T @ P - np.outer(center, center)
    shape = np.linalg.inv(scatter) / n
    shape = (shape + shape.T) / 2
    diffs = P - center
    vals = np.einsum("ij,jk,ik->i", diffs, shape, diffs)
    gram = points.float_gram() if isinstance(points, VertexSet) and points.gram is not None else None
    return Ellipsoid(center, shape, eps, it, float(vals.max() - 1.0), history, gram)


@dataclass
class SphereComparison:
    coincides: bool
    center_deviation: float
    shape_deviation: float
    radius: float

    def as_dict(self) -> dict:
        return {
            "coincides": self.coincides,
            "center_deviation": self.center_deviation,
            "shape_deviation": self.shape_deviation,
            "radius": self.radius,
        }


def coincides_with_circumsphere(E: Ellipsoid, V: VertexSet, tol: float = 1e-4) -> SphereComparison:
    """Compare E with the circumscribed sphere of V in V's chart metric.

    The center test is relative to the circumradius r; the shape test is the
    max-norm of shape - G / r^2, with G the chart Gram matrix (identity for
    Euclidean coordinates).
    """
    G = V.float_gram()
    c = np.asarray(V.to_float().center, dtype=float)
    P = V.float_array()
    r2 = float(np.mean(np.einsum("ij,jk,ik->i", P - c, G, P - c)))
    r = math.sqrt(r2)
    dc = E.center - c
    center_dev = math.sqrt(max(float(dc @ G @ dc), 0.0))
    shape_dev = float(np.max(np.abs(E.shape - G / r2)))
    ok = center_dev <= tol * r and shape_dev <= tol
    return SphereComparison(ok, center_dev, shape_dev, r)


def report(E: Ellipsoid, comparison: SphereComparison | None = None) -> dict:
    return {
        "center": [float(x) for x in E.center],
        "shape": [float(x) for x in E.shape.ravel()],
        "eps": E.tolerance,
        "iterations": E.iterations,
        "max_violation": E.max_violation,
        "semiaxes": [float(x) for x in E.semiaxes()],
        "circumsphere_deviation": None if comparison is None else comparison.as_dict(),
    }


def report_json(E: Ellipsoid, comparison: SphereComparison | None = None) -> str:
    return json.dumps(report(E, comparison), indent=2, sort_keys=True)
