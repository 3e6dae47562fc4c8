"""Bounce-map linearization in boundary coordinates (s, v).

``s`` is arclength along the boundary and ``v`` the tangential component of
the unit velocity right after reflection; ``v_perp = +sqrt(1 - v^2)`` is the
normal component.  The linearized bounce-to-bounce map, the endpoint
Jacobians between (s, v) perturbations and transverse (displacement,
velocity) perturbations, and their chain product along an orbit are all
unit-determinant 2x2 matrices.

The off-diagonal entry of the chain product divided by the momentum k is
the transverse position/momentum Jacobian of the orbit; for an all-straight
orbit of length L it reduces to (-1)^n L / k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BilliardError, DomainError
from . import geometry
from .geometry import Boundary, frame_at

__all__ = [
    "Mat2",
    "BirkhoffCoord",
    "OrbitSpec",
    "GrazingIncidenceError",
    "RayEscapeError",
    "CornerHitError",
    "linearized_bounce_map",
    "linearized_bounce_map_product",
    "transverse_jacobians",
    "monodromy",
    "jacobian_r_p",
    "bounce_map",
    "trace_orbit",
    "chain_product",
]


class GrazingIncidenceError(BilliardError):
    """v_perp -> 0: the linearized map is singular at grazing incidence."""


class RayEscapeError(BilliardError):
    """Ray found no next boundary intersection (open or misoriented geometry)."""


class CornerHitError(BilliardError):
    """Ray landed within tolerance of a corner, where reflection is undefined."""


@dataclass(frozen=True)
class Mat2:
    m11: float
    m12: float
    m21: float
    m22: float

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def diag(a: float, b: float) -> "Mat2":
        return Mat2(a, 0.0, 0.0, b)


@dataclass(frozen=True)
class BirkhoffCoord:
    """Boundary point s with signed tangential velocity v, |v| < 1."""

    s: float
    v: float

    def __post_init__(self):
        if not abs(self.v) < 1.0:
            raise DomainError(f"|v| must be < 1, got {self.v!r}")

    @property
    def v_perp(self) -> float:
        return math.sqrt(1.0 - self.v * self.v)


@dataclass(frozen=True)
class OrbitSpec:
    """Bounce-sequence data for an orbit with interior endpoints.

    ``y_first`` is the position of the first bounce relative to the launch
    point, measured along the motion (positive: the bounce lies ahead).
    ``y_last`` is the position of the last bounce relative to the endpoint
    (negative: the bounce lies behind).  ``chords[i]`` joins bounce i to
    bounce i+1.
    """

    v_perp: tuple[float, ...]
    curvature: tuple[float, ...]
    chords: tuple[float, ...]
    y_first: float
    y_last: float
    k: float = 1.0

    def __post_init__(self):
        n = len(self.v_perp)
        if n < 1:
            raise DomainError("OrbitSpec needs at least one bounce")
        if len(self.curvature) != n or len(self.chords) != n - 1:
            raise DomainError("inconsistent per-bounce data lengths")
        if any(l <= 0 for l in self.chords):
            raise DomainError("chord lengths must be positive")
        if not self.k > 0:
            raise DomainError("k must be positive")

    @property
    def n(self) -> int:
        return len(self.v_perp)

    @property
    def length(self) -> float:
        return abs(self.y_first) + math.fsum(self.chords) + abs(self.y_last)


def _check_v_perp(*vs: float) -> None:
    for v in vs:
        if not v > 0.0:
            raise GrazingIncidenceError(f"v_perp must be > 0, got {v!r}")
        if v > 1.0 + 1e-12:
            raise DomainError(f"v_perp must be <= 1, got {v!r}")


def linearized_bounce_map(v1_perp: float, v2_perp: float, l12: float,
                          c1: float, c2: float) -> Mat2:
    """Linearized bounce-to-bounce map from (s1, v1) to (s2, v2).

    c is the boundary curvature at the bounce (positive when the interior
    curves around the center), l12 the chord length.
    """
    _check_v_perp(v1_perp, v2_perp)
    if not l12 > 0:
        raise DomainError(f"chord length must be > 0, got {l12!r}")
    return Mat2(
        (l12 * c1 - v1_perp) / v2_perp,
        -l12 / (v1_perp * v2_perp),
        c1 * v2_perp + c2 * v1_perp - l12 * c1 * c2,
        (l12 * c2 - v2_perp) / v1_perp,
    )


def linearized_bounce_map_product(v1_perp: float, v2_perp: float, l12: float,
                                  c1: float, c2: float) -> Mat2:
    """Same map synthesized from its five unit-determinant factors."""
    _check_v_perp(v1_perp, v2_perp)
    return (Mat2.diag(1.0 / v2_perp, v2_perp)
            @ Mat2(1.0, 0.0, -c2 / v2_perp, 1.0)
            @ Mat2(-1.0, -l12, 0.0, -1.0)
            @ Mat2(1.0, 0.0, -c1 / v1_perp, 1.0)
            @ Mat2.diag(v1_perp, 1.0 / v1_perp))


def transverse_jacobians(y: float, c: float, v_perp: float,
                         end: str = "start") -> tuple[Mat2, Mat2]:
    """Jacobians between (ds, dv) at a bounce and transverse (xi, kappa).

    ``end="start"`` treats the bounce as the chord's first endpoint
    (velocity pointing along the chord); ``end="finish"`` as its second
    endpoint, which replaces v_perp by -v_perp.  ``y`` is the bounce's
    position along the chord relative to the reference point.  Returns
    (J_s_xi, J_xi_s) with J_s_xi @ J_xi_s = identity.
    """
    _check_v_perp(v_perp)
    if end == "finish":
        v = -v_perp
    elif end == "start":
        v = v_perp
    else:
        raise DomainError(f"end must be 'start' or 'finish', got {end!r}")
    j_sxi = Mat2(1.0 / v, y / v, c, v + c * y)
    j_xis = Mat2(v + y * c, -y / v, -c, 1.0 / v)
    return j_sxi, j_xis


def monodromy(orbit: OrbitSpec) -> Mat2:
    """Chain product of endpoint Jacobians and bounce maps along an orbit.

    The launch leg ends at bounce 1 (finish-type Jacobian, y = y_first > 0);
    the final leg starts at bounce n (start-type, y = y_last < 0).  For an
    all-straight orbit the product is (-1)^n [[1, L], [0, 1]].
    """
    n = orbit.n
    m = transverse_jacobians(orbit.y_first, orbit.curvature[0],
                             orbit.v_perp[0], end="finish")[0]
    for i in range(n - 1):
        m = linearized_bounce_map(
            orbit.v_perp[i], orbit.v_perp[i + 1], orbit.chords[i],
            orbit.curvature[i], orbit.curvature[i + 1]) @ m
    j_out = transverse_jacobians(orbit.y_last, orbit.curvature[n - 1],
                                 orbit.v_perp[n - 1], end="start")[1]
    return j_out @ m


def jacobian_r_p(m: Mat2, k: float) -> float:
    """Transverse position/momentum Jacobian: the chain's 1-2 entry over k."""
    if not k > 0:
        raise DomainError(f"k must be > 0, got {k!r}")
    return m.m12 / k


# ---------------------------------------------------------------------------
# nonlinear bounce map (ray trace with specular reflection)

_HIT_TOL = 1e-9         # hits closer than this to the launch point are ignored
_CORNER_HIT_TOL = 1e-9  # arclength distance to a corner that counts as a hit


def _line_intersections(p, d, seg: geometry.Segment):
    """Ray p + t d against a line segment; yields (t, local_arclength)."""
    ex = seg.p1[0] - seg.p0[0]
    ey = seg.p1[1] - seg.p0[1]
    seg_len = math.hypot(ex, ey)
    ux, uy = ex / seg_len, ey / seg_len
    denom = d[0] * (-uy) + d[1] * ux
    if abs(denom) < 1e-15:
        return
    # solve p + t d = p0 + u * (ux, uy)
    rx, ry = seg.p0[0] - p[0], seg.p0[1] - p[1]
    t = (rx * (-uy) + ry * ux) / denom
    u = (d[0] * ry - d[1] * rx) / denom
    if t > _HIT_TOL and -1e-12 <= u <= seg_len + 1e-12:
        yield t, min(max(u, 0.0), seg_len)


def _arc_intersections(p, d, seg: geometry.Segment):
    cx, cy = seg.center
    fx, fy = p[0] - cx, p[1] - cy
    b = fx * d[0] + fy * d[1]
    c = fx * fx + fy * fy - seg.radius**2
    disc = b * b - c
    if disc < 0.0:
        return
    sq = math.sqrt(disc)
    for t in (-b - sq, -b + sq):
        if t <= _HIT_TOL:
            continue
        hx, hy = p[0] + t * d[0] - cx, p[1] + t * d[1] - cy
        ang = math.atan2(hy, hx)
        # relative angle from a0 measured along the sweep direction
        if seg.sweep > 0:
            rel = (ang - seg.a0) % geometry.TWO_PI
            if rel <= seg.sweep + 1e-12:
                yield t, seg.radius * min(rel, seg.sweep)
        else:
            rel = (seg.a0 - ang) % geometry.TWO_PI
            if rel <= -seg.sweep + 1e-12:
                yield t, seg.radius * min(rel, -seg.sweep)


def bounce_map(b: Boundary, coord: BirkhoffCoord) -> BirkhoffCoord:
    """Trace the ray leaving (s, v) to the next bounce.

    The tangential velocity component is continuous across a specular
    reflection, so the returned coordinate is again post-reflection data.
    Raises :class:`RayEscapeError` or :class:`CornerHitError`.
    """
    fr = frame_at(b, coord.s)
    v, vp = coord.v, coord.v_perp
    d = (v * fr.tangent[0] + vp * fr.inward_normal[0],
         v * fr.tangent[1] + vp * fr.inward_normal[1])
    p = fr.point

    best_t = math.inf
    best = None
    for i, seg in enumerate(b.segments):
        gen = _line_intersections(p, d, seg) if seg.kind == "line" \
            else _arc_intersections(p, d, seg)
        for t, local in gen:
            if t < best_t:
                best_t = t
                best = (i, local)
    if best is None:
        raise RayEscapeError(f"ray from s={coord.s}, v={coord.v} escaped")
    i, local = best
    s_hit = (b.cumlen[i] + local) % b.perimeter
    for c in b.corners:
        dd = abs(s_hit - c.arclength)
        if min(dd, b.perimeter - dd) < _CORNER_HIT_TOL:
            raise CornerHitError(f"ray hit corner at s={s_hit}")
    fr2 = frame_at(b, s_hit)
    v2 = d[0] * fr2.tangent[0] + d[1] * fr2.tangent[1]
    v2 = min(max(v2, -1.0 + 1e-15), 1.0 - 1e-15)
    return BirkhoffCoord(s_hit, v2)


def trace_orbit(b: Boundary, start: BirkhoffCoord, bounces: int) -> list[BirkhoffCoord]:
    """Iterate the bounce map ``bounces`` times, returning all visited coords."""
    pts = [start]
    for _ in range(bounces):
        pts.append(bounce_map(b, pts[-1]))
    return pts


def chain_product(b: Boundary, pts: Sequence[BirkhoffCoord]) -> Mat2:
    """Product of the linearized bounce maps along a traced point sequence."""
    if len(pts) < 2:
        raise DomainError("need at least two boundary points")
    m = Mat2.identity()
    for c1, c2 in zip(pts[:-1], pts[1:]):
        f1, f2 = frame_at(b, c1.s), frame_at(b, c2.s)
        l12 = math.hypot(f2.point[0] - f1.point[0], f2.point[1] - f1.point[1])
        m = linearized_bounce_map(c1.v_perp, c2.v_perp, l12,
                                  f1.curvature, f2.curvature) @ m
    return m
