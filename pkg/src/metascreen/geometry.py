"""Inclusion geometry: boundary curves in the periodic cell, boundary and
interior quadrature.

The periodic cell is S = [-1/2, 1/2) x (0, inf).  A curve must be smooth,
closed, star-shaped about its center, and lie strictly inside S (in
particular strictly above the Dirichlet line x2 = 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

_VALIDATION_SAMPLES = 2048


class GeometryError(ValueError):
    """Raised for curves that violate the cell or smoothness constraints."""


@dataclass(frozen=True)
class BoundaryCurve:
    """Smooth closed curve gamma(t), t in [0, 2pi), with analytic derivative.

    Attributes
    ----------
    kind : str
        One of ``disk``, ``ellipse``, ``smooth-star``.
    center : ndarray, shape (2,)
        Star center; also the reference point for interior quadrature.
    params : dict
        Shape parameters as passed to :func:`make_curve`.
    """

    kind: str
    center: np.ndarray
    params: dict
    _gamma: Callable = field(repr=False)
    _dgamma: Callable = field(repr=False)

    def gamma(self, t):
        """Boundary points at parameters t, shape (..., 2)."""
        return self._gamma(np.asarray(t, dtype=float))

    def dgamma(self, t):
        """Parameter derivative gamma'(t), shape (..., 2)."""
        return self._dgamma(np.asarray(t, dtype=float))

    def radial(self, t):
        """Distance of gamma(t) from the star center."""
        return np.linalg.norm(self.gamma(t) - self.center, axis=-1)

    def arc_length(self, n: int = 4096) -> float:
        """Arc length by a fine periodic trapezoid rule."""
        t = 2.0 * np.pi * np.arange(n) / n
        return float(np.linalg.norm(self.dgamma(t), axis=-1).sum() * 2.0 * np.pi / n)


@dataclass(frozen=True)
class NodeSet:
    """Periodic-trapezoid discretization of a boundary curve.

    points, normals have shape (n, 2); weights include the arc-length
    Jacobian |gamma'(t_i)| * (2 pi / n).
    """

    curve: BoundaryCurve
    t: np.ndarray
    points: np.ndarray
    normals: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def spacing(self) -> float:
        """Typical node separation along the curve."""
        return float(self.weights.mean())

    def __post_init__(self):
        for a in (self.t, self.points, self.normals, self.weights):
            a.setflags(write=False)


@dataclass(frozen=True)
class AreaRule:
    """Interior (area) quadrature: points (m, 2) and positive weights (m,)."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    def integrate(self, values):
        """Integrate sampled values (m,) or (m, k) over the interior."""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


def make_curve(kind: str, **params) -> BoundaryCurve:
    """Build a validated boundary curve.

    Parameters
    ----------
    kind : {"disk", "ellipse", "smooth-star"}
    params :
        ``center`` (pair, default required), ``radius`` (disk, star),
        ``radius2`` (ellipse second semi-axis), ``star_eps``/``star_k``
        (star modulation amplitude and frequency).

    Raises
    ------
    GeometryError
        If the curve touches or crosses the cell walls or the line x2 = 0,
        or is not smooth / star-shaped.
    """
    center = np.asarray(params.get("center", (0.0, 0.5)), dtype=float)
    if center.shape != (2,):
        raise GeometryError(f"center must be a 2-vector, got shape {center.shape}")
    cx, cy = center

    if kind == "disk":
        r = float(params["radius"])
        if r <= 0:
            raise GeometryError(f"disk radius must be positive, got {r}")

        def gam(t):
            return np.stack([cx + r * np.cos(t), cy + r * np.sin(t)], axis=-1)

        def dgam(t):
            return np.stack([-r * np.sin(t), r * np.cos(t)], axis=-1)

    elif kind == "ellipse":
        a = float(params["radius"])
        b = float(params.get("radius2", a))
        if a <= 0 or b <= 0:
            raise GeometryError(f"ellipse semi-axes must be positive, got {a}, {b}")

        def gam(t):
            return np.stack([cx + a * np.cos(t), cy + b * np.sin(t)], axis=-1)

        def dgam(t):
            return np.stack([-a * np.sin(t), b * np.cos(t)], axis=-1)

    elif kind == "smooth-star":
        r = float(params["radius"])
        eps = float(params.get("star_eps", 0.0))
        k = int(params.get("star_k", 5))
        if r <= 0:
            raise GeometryError(f"star radius must be positive, got {r}")
        if not 0 <= eps < 1:
            raise GeometryError(f"star_eps must lie in [0, 1), got {eps}")

        def gam(t):
            rr = r * (1.0 + eps * np.cos(k * t))
            return np.stack([cx + rr * np.cos(t), cy + rr * np.sin(t)], axis=-1)

        def dgam(t):
            rr = r * (1.0 + eps * np.cos(k * t))
            drr = -r * eps * k * np.sin(k * t)
            return np.stack(
                [drr * np.cos(t) - rr * np.sin(t), drr * np.sin(t) + rr * np.cos(t)],
                axis=-1,
            )

    else:
        raise GeometryError(f"unknown curve kind {kind!r}")

    curve = BoundaryCurve(kind=kind, center=center, params=dict(params),
                          _gamma=gam, _dgamma=dgam)
    _validate_curve(curve)
    return curve


def _validate_curve(curve: BoundaryCurve) -> None:
    t = 2.0 * np.pi * np.arange(_VALIDATION_SAMPLES) / _VALIDATION_SAMPLES
    x = curve.gamma(t)
    dx = curve.dgamma(t)
    speed = np.linalg.norm(dx, axis=-1)
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(dx)):
        raise GeometryError("curve parametrization produced non-finite values")
    if speed.min() <= 1e-12:
        raise GeometryError("curve is not regular: |gamma'(t)| vanishes")
    if x[:, 1].min() <= 0.0:
        raise GeometryError(
            f"curve reaches x2 = {x[:, 1].min():.4g} <= 0; it must stay strictly "
            "above the Dirichlet line")
    if np.abs(x[:, 0]).max() >= 0.5:
        raise GeometryError(
            f"curve reaches |x1| = {np.abs(x[:, 0]).max():.4g} >= 1/2; it must stay "
            "strictly inside the periodic cell")
    # star-shapedness about the center: (x - c) . nu > 0 everywhere
    nu = np.stack([dx[:, 1], -dx[:, 0]], axis=-1) / speed[:, None]
    if np.min(np.sum((x - curve.center) * nu, axis=-1)) <= 0:
        raise GeometryError("curve is not star-shaped about its center")


def quadrature_nodes(curve: BoundaryCurve, n: int) -> NodeSet:
    """Equispaced-in-parameter periodic trapezoid nodes on the curve.

    Weights are |gamma'(t_i)| * (2 pi / n); normals are outward units.
    Requires even n >= 16.
    """
    if n < 16 or n % 2 != 0:
        raise GeometryError(f"need an even number of nodes >= 16, got {n}")
    t = 2.0 * np.pi * np.arange(n) / n
    x = curve.gamma(t)
    dx = curve.dgamma(t)
    speed = np.linalg.norm(dx, axis=-1)
    normals = np.stack([dx[:, 1], -dx[:, 0]], axis=-1) / speed[:, None]
    weights = speed * (2.0 * np.pi / n)
    return NodeSet(curve=curve, t=t, points=x, normals=normals, weights=weights)


def interior_quadrature(curve: BoundaryCurve, n_r: int, n_t: int) -> AreaRule:
    """Polar tensor rule (Gauss in radius, trapezoid in angle) about the
    star center.  Exact scaling x = c + s * (gamma(phi) - c), s in (0, 1].
    """
    if n_r < 2 or n_t < 4:
        raise GeometryError(f"interior rule too small: n_r={n_r}, n_t={n_t}")
    gl_x, gl_w = np.polynomial.legendre.leggauss(n_r)
    s = 0.5 * (gl_x + 1.0)
    ws = 0.5 * gl_w
    phi = 2.0 * np.pi * np.arange(n_t) / n_t
    wphi = 2.0 * np.pi / n_t

    bx = curve.gamma(phi) - curve.center        # (n_t, 2)
    dbx = curve.dgamma(phi)                     # (n_t, 2)
    # Jacobian of (s, phi) -> c + s b(phi): |s (b x b')| = s |b1 b2' - b2 b1'|
    jac_phi = np.abs(bx[:, 0] * dbx[:, 1] - bx[:, 1] * dbx[:, 0])

    pts = curve.center[None, None, :] + s[:, None, None] * bx[None, :, :]
    wts = (ws[:, None] * s[:, None]) * (jac_phi[None, :] * wphi)
    return AreaRule(points=pts.reshape(-1, 2), weights=wts.reshape(-1))
