"""Polyline string links in the cylinder D^2 x I, sampled configuration maps,
closure into a solid torus and Gauss linking numbers.

A :class:`GeomStringLink` stores all strands over one shared, strictly
increasing list of t-samples, so the strand points at a common t form a
configuration of n points.  The sampled map ``kappa_sample`` sends
(t_1, ..., t_n) to (sigma_1(t_1), ..., sigma_n(t_n)).

t-samples produced by :func:`realize` lie on the lattice 2^-24 Z, so affine
rescaling by dyadic little intervals is exact in floating point.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .braid import BraidWord, crossing_strands
from .errors import (
    DegenerateConfigurationError,
    IllConditionedWarning,
    InvalidTorusError,
    MalformedWordError,
    QuotientUndefinedError,
    RefinementError,
)

SCHEMA_VERSION = 1
T_LATTICE = 2.0**-24
VERTICAL_HEIGHT = 0.05
BEND_RADIUS = 2.0
DEFAULT_RESOLUTION = 8
MAX_GRID_POINTS = 10**6
MAX_SAMPLED_STRANDS = 6
# +1: for a positive letter the strand moving right passes on the +y side.
# Chosen so that Gauss linking of the closure matches the crossing count.
HANDEDNESS = 1


def snap(t: float) -> float:
    return round(t / T_LATTICE) * T_LATTICE


def default_basepoints(n: int) -> np.ndarray:
    """Collinear marked points on the horizontal diameter."""
    return np.array([[-1.0 + 2.0 * i / (n + 1), 0.0] for i in range(1, n + 1)])


def _interp(ts: np.ndarray, pts: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Piecewise-linear evaluation, bit-exact at the sample parameters."""
    t = np.asarray(t, dtype=float)
    k = np.clip(np.searchsorted(ts, t, side="right") - 1, 0, len(ts) - 2)
    w = (t - ts[k]) / (ts[k + 1] - ts[k])
    out = pts[k] + w[..., None] * (pts[k + 1] - pts[k])
    at_end = t >= ts[-1]
    if np.any(at_end):
        out = np.where(at_end[..., None], pts[-1], out)
    return out


def _pair_min_distance(d0: np.ndarray, d1: np.ndarray) -> np.ndarray:
    """min over w in [0, 1] of |d0 + w (d1 - d0)|, elementwise over leading axes."""
    e = d1 - d0
    ee = np.einsum("...k,...k->...", e, e)
    w = np.where(ee > 0, -np.einsum("...k,...k->...", d0, e) / np.where(ee > 0, ee, 1.0), 0.0)
    w = np.clip(w, 0.0, 1.0)
    return np.linalg.norm(d0 + w[..., None] * e, axis=-1)


@dataclass(frozen=True, eq=False)
class GeomStringLink:
    """n polyline strands over shared t-samples ``ts``; ``disk[i, k]`` is the
    D^2 coordinate of strand i at ``ts[k]``."""

    basepoints: np.ndarray
    ts: np.ndarray
    disk: np.ndarray
    eps_sep: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "basepoints", np.array(self.basepoints, dtype=float))
        object.__setattr__(self, "ts", np.array(self.ts, dtype=float))
        object.__setattr__(self, "disk", np.array(self.disk, dtype=float))
        self.validate()

    @property
    def n(self) -> int:
        return len(self.basepoints)

    def strand(self, i: int) -> np.ndarray:
        """Vertices (x, y, t) of strand i (1-based)."""
        d = self.disk[i - 1]
        return np.column_stack([d, self.ts])

    def evaluate(self, i: int, t) -> np.ndarray:
        return _interp(self.ts, self.strand(i), t)

    def validate(self) -> None:
        n, ts, disk = self.n, self.ts, self.disk
        if self.basepoints.shape != (n, 2) or disk.shape != (n, len(ts), 2):
            raise ValueError("inconsistent array shapes")
        if len(ts) < 2 or ts[0] != 0.0 or ts[-1] != 1.0 or np.any(np.diff(ts) <= 0):
            raise ValueError("t-samples must increase strictly from 0 to 1")
        if not np.array_equal(disk[:, 0], self.basepoints) or not np.array_equal(disk[:, -1], self.basepoints):
            raise ValueError("strand endpoints must sit at the basepoints")
        if np.any(np.linalg.norm(self.basepoints, axis=1) >= 1.0):
            raise ValueError("basepoints must lie inside the unit disk")
        if len(ts) > 2:
            if np.any(np.linalg.norm(disk[:, 1:-1], axis=-1) >= 1.0):
                raise ValueError("interior vertices must lie in the open cylinder")
            if not (np.array_equal(disk[:, 1], disk[:, 0]) and np.array_equal(disk[:, -2], disk[:, -1])):
                raise ValueError("first and last segments must be vertical")
        if n > 1:
            sep = self.min_sample_separation()
            if sep <= 0.0 or sep < self.eps_sep:
                raise DegenerateConfigurationError(
                    f"strands {sep:.3g} apart at a shared sample, need {self.eps_sep}"
                )

    def simplified(self) -> GeomStringLink:
        """Same polylines with vertices removed where every strand is stationary on both sides."""
        d = self.disk
        still = np.all(d[:, 1:] == d[:, :-1], axis=(0, 2))
        keep = np.ones(len(self.ts), dtype=bool)
        keep[1:-1] = ~(still[:-1] & still[1:])
        return GeomStringLink(self.basepoints, self.ts[keep], d[:, keep], eps_sep=self.eps_sep)

    def min_sample_separation(self) -> float:
        if self.n < 2:
            return math.inf
        diff = self.disk[:, None] - self.disk[None, :]
        dist = np.linalg.norm(diff, axis=-1)
        iu = np.triu_indices(self.n, 1)
        return float(dist[iu].min())

    def min_segment_separation(self) -> float:
        """Exact minimum distance between distinct strands over whole segments."""
        if self.n < 2:
            return math.inf
        best = math.inf
        for a, b in itertools.combinations(range(self.n), 2):
            d = self.disk[a] - self.disk[b]
            best = min(best, float(_pair_min_distance(d[:-1], d[1:]).min()))
        return best


def _strand_layout(b: BraidWord, ts: np.ndarray, bounds: np.ndarray, base: np.ndarray) -> np.ndarray:
    n = b.strands
    disk = np.empty((n, len(ts), 2))
    order = list(range(n))  # order[p] = strand at position p (0-based)
    xs = base[:, 0]
    disk[:, :, :] = base[:, None, :]
    slab = np.searchsorted(bounds, ts, side="right") - 1
    for j, (k, s) in enumerate(b.letters):
        lo, hi = bounds[j], bounds[j + 1]
        for p, strand in enumerate(order):
            mask = slab >= j
            disk[strand, mask] = (xs[p], 0.0)
        inside = (ts > lo) & (ts < hi)
        u = (ts[inside] - lo) / (hi - lo)
        c = 0.5 * (xs[k - 1] + xs[k])
        r = 0.5 * (xs[k] - xs[k - 1])
        left, right = order[k - 1], order[k]
        y = HANDEDNESS * s * r * np.sin(np.pi * u)
        disk[left, inside] = np.column_stack([c - r * np.cos(np.pi * u), y])
        disk[right, inside] = np.column_stack([c + r * np.cos(np.pi * u), -y])
        order[k - 1], order[k] = right, left
    for p, strand in enumerate(order):
        disk[strand, slab >= len(b.letters)] = (xs[p], 0.0)
    return disk


def realize(
    sigma,
    samples_per_letter: int = 8,
    eps_sep: float = 0.05,
    grid_align: int = DEFAULT_RESOLUTION,
    basepoints: np.ndarray | None = None,
) -> GeomStringLink:
    """Geometric braid for a string link (or pure braid word).

    Each letter occupies one horizontal slab in which the two exchanged
    strands travel along antipodal points of a half circle; the side they
    pass on encodes the sign.  Samples include every multiple of
    ``1/grid_align`` so that ``kappa_sample`` at that resolution hits
    vertices exactly.
    """
    b = getattr(sigma, "rep", sigma)
    n = b.strands
    if samples_per_letter < 2:
        raise RefinementError("need at least two samples per letter to keep strands apart")
    base = default_basepoints(n) if basepoints is None else np.asarray(basepoints, dtype=float)
    if len(base) != n:
        raise MalformedWordError(f"need {n} basepoints")
    if n > 1:
        xs = base[:, 0]
        if np.any(np.diff(xs) <= 0) or np.any(base[:, 1] != 0.0):
            raise MalformedWordError("basepoints must lie on y = 0 with increasing x")
    count = len(b.letters)
    bounds = np.array([snap(VERTICAL_HEIGHT + j * (1 - 2 * VERTICAL_HEIGHT) / max(count, 1)) for j in range(count + 1)])
    samples = {0.0, 1.0, float(bounds[0]), float(bounds[-1])}
    for j in range(count):
        lo, hi = bounds[j], bounds[j + 1]
        samples.update(snap(lo + q * (hi - lo) / samples_per_letter) for q in range(samples_per_letter + 1))
    if grid_align:
        samples.update(q / grid_align for q in range(grid_align + 1))
    ts = np.array(sorted(samples))
    disk = _strand_layout(b, ts, bounds, base)
    g = GeomStringLink(base, ts, disk, eps_sep=0.0)
    if n > 1:
        sep = min(g.min_sample_separation(), g.min_segment_separation())
        if sep < eps_sep:
            raise RefinementError(f"strands come within {sep:.3g} < eps_sep = {eps_sep}")
    return GeomStringLink(base, ts, disk, eps_sep=eps_sep)


def read_braid(g: GeomStringLink) -> BraidWord:
    """Recover a braid word from the x-order of the strands along t.

    Assumes generic position: two strands exchange x-order only between
    consecutive samples, and the sign is read from which passes at larger y.
    """
    n = g.n
    order = list(np.argsort(g.disk[:, 0, 0], kind="stable"))
    letters = []
    for k in range(len(g.ts) - 1):
        x0, x1 = g.disk[:, k, 0], g.disk[:, k + 1, 0]
        changed = True
        while changed:
            changed = False
            for p in range(n - 1):
                a, b = order[p], order[p + 1]
                if x1[a] > x1[b]:
                    # crossing parameter inside this segment
                    da0, da1 = x0[a] - x0[b], x1[a] - x1[b]
                    w = 0.0 if da0 >= 0 else da0 / (da0 - da1)
                    ya = g.disk[a, k, 1] + w * (g.disk[a, k + 1, 1] - g.disk[a, k, 1])
                    yb = g.disk[b, k, 1] + w * (g.disk[b, k + 1, 1] - g.disk[b, k, 1])
                    if ya == yb:
                        raise DegenerateConfigurationError("strands meet in projection; cannot read sign")
                    sign = 1 if (ya > yb) == (HANDEDNESS > 0) else -1
                    letters.append((p + 1, sign))
                    order[p], order[p + 1] = b, a
                    changed = True
    return BraidWord(n, tuple(letters))


@dataclass(frozen=True, eq=False)
class GridMap:
    """Map I^n -> Conf(C, n) sampled on the grid {0, 1/r, ..., 1}^n.

    ``values`` has shape ``(r+1,)*n + (n, 3)``; the last axis is (x, y, t).
    """

    basepoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basepoints", np.asarray(self.basepoints, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        n = self.n
        if self.values.ndim != n + 2 or self.values.shape[-2:] != (n, 3):
            raise ValueError("values must have shape (r+1,)*n + (n, 3)")
        if len(set(self.values.shape[:n])) != 1:
            raise ValueError("grid must have the same resolution on every axis")

    @property
    def n(self) -> int:
        return len(self.basepoints)

    @property
    def resolution(self) -> int:
        return self.values.shape[0] - 1

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.resolution + 1)

    def check_configurations(self) -> None:
        """Raise if two configuration points coincide at some grid point."""
        for i, j in itertools.combinations(range(self.n), 2):
            d = np.linalg.norm(self.values[..., i, :] - self.values[..., j, :], axis=-1)
            if np.any(d <= 0.0):
                idx = tuple(int(v) for v in np.argwhere(d <= 0.0)[0])
                raise DegenerateConfigurationError(f"points {i + 1} and {j + 1} coincide at grid index {idx}")

    def __call__(self, t) -> np.ndarray:
        """Multilinear interpolation at points of I^n; ``t`` has shape ``(..., n)``."""
        r, n = self.resolution, self.n
        t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
        pos = t * r
        lo = np.minimum(np.floor(pos).astype(int), r - 1)
        frac = pos - lo
        out = np.zeros(t.shape[:-1] + (n, 3))
        for corner in itertools.product((0, 1), repeat=n):
            weight = np.ones(t.shape[:-1])
            for k, c in enumerate(corner):
                weight = weight * (frac[..., k] if c else 1.0 - frac[..., k])
            if not np.any(weight):
                continue
            idx = tuple(lo[..., k] + c for k, c in enumerate(corner))
            out = out + weight[..., None, None] * self.values[idx]
        return out


def _check_grid_size(n: int, r: int) -> None:
    if n > MAX_SAMPLED_STRANDS:
        raise ValueError(f"sampling supports at most {MAX_SAMPLED_STRANDS} strands")
    if r < 1 or (r + 1) ** n > MAX_GRID_POINTS:
        raise ValueError(f"grid of {(r + 1)}^{n} points exceeds {MAX_GRID_POINTS}")


def _product_grid(columns: list[np.ndarray]) -> np.ndarray:
    """Stack per-coordinate samples into a product-structured grid array."""
    n = len(columns)
    r1 = len(columns[0])
    values = np.empty((r1,) * n + (n, 3))
    for i, col in enumerate(columns):
        shape = [1] * n
        shape[i] = r1
        values[..., i, :] = np.broadcast_to(col.reshape(shape + [3]), (r1,) * n + (3,))
    return values


def kappa_sample(g: GeomStringLink, r: int = DEFAULT_RESOLUTION) -> GridMap:
    """Sample (t_1..t_n) -> (sigma_1(t_1), ..., sigma_n(t_n)) on the (r+1)^n grid."""
    _check_grid_size(g.n, r)
    grid = np.linspace(0.0, 1.0, r + 1)
    columns = [g.evaluate(i, grid) for i in range(1, g.n + 1)]
    # component i only depends on t_i, so pairwise checks reduce to 2-d grids
    for i, j in itertools.combinations(range(g.n), 2):
        d = np.linalg.norm(columns[i][:, None, :] - columns[j][None, :, :], axis=-1)
        if np.any(d <= 0.0):
            raise DegenerateConfigurationError(f"strands {i + 1} and {j + 1} meet at a grid point")
    return GridMap(g.basepoints, _product_grid(columns))


class KappaMap:
    """Exact, lazily evaluated configuration map of a geometric string link."""

    def __init__(self, g: GeomStringLink):
        self.link = g
        self.basepoints = g.basepoints
        self.n = g.n

    def __call__(self, t) -> np.ndarray:
        """``t`` has shape ``(..., n)``; the result has shape ``(..., n, 3)``."""
        t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
        return np.stack([self.link.evaluate(i + 1, t[..., i]) for i in range(self.n)], axis=-2)


@dataclass
class Violation:
    condition: str
    component: int
    grid_index: tuple[int, ...]
    detail: str = ""


@dataclass
class ConditionReport:
    checked: tuple[str, ...]
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, condition: str) -> int:
        return sum(v.condition == condition for v in self.violations)

    def summary(self) -> dict[str, int]:
        return {c: self.count(c) for c in self.checked}


CONDITIONS = ("endpoints", "support", "periodicity")


def _face(values: np.ndarray, axis: int, index: int) -> np.ndarray:
    return np.take(values, index, axis=axis)


def _face_index(n: int, axis: int, index: int, rest: np.ndarray) -> tuple[int, ...]:
    full = list(int(v) for v in rest)
    full.insert(axis, index)
    return tuple(full)


def verify_conditions(f: GridMap, which: Iterable[str] = CONDITIONS) -> ConditionReport:
    """Check the basepoint, interior-support and periodicity conditions on the grid.

    Violations are collected, never raised.
    """
    which = tuple(which)
    for c in which:
        if c not in CONDITIONS:
            raise ValueError(f"unknown condition {c!r}")
    n, r, v = f.n, f.resolution, f.values
    report = ConditionReport(which)
    if "endpoints" in which:
        for i in range(n):
            for index, height in ((0, 0.0), (r, 1.0)):
                target = np.array([f.basepoints[i, 0], f.basepoints[i, 1], height])
                face = _face(v, i, index)[..., i, :]
                bad = np.argwhere(np.any(face != target, axis=-1))
                for rest in bad:
                    report.violations.append(
                        Violation("endpoints", i + 1, _face_index(n, i, index, rest), f"expected {target.tolist()}")
                    )
    if "support" in which and r >= 2:
        inner = v[(slice(1, r),) * n]
        for i in range(n):
            pts = inner[..., i, :]
            outside = (np.hypot(pts[..., 0], pts[..., 1]) >= 1.0) | (pts[..., 2] <= 0.0) | (pts[..., 2] >= 1.0)
            for idx in np.argwhere(outside):
                report.violations.append(
                    Violation("support", i + 1, tuple(int(q) + 1 for q in idx), "left the open cylinder")
                )
    if "periodicity" in which:
        for i in range(n):
            lo, hi = _face(v, i, 0), _face(v, i, r)
            for k in range(n):
                if k == i:
                    continue
                bad = np.argwhere(np.any(lo[..., k, :] != hi[..., k, :], axis=-1))
                for rest in bad:
                    report.violations.append(
                        Violation("periodicity", k + 1, _face_index(n, i, 0, rest), f"differs across axis {i + 1}")
                    )
    return report


def bend(points: np.ndarray, R: float = BEND_RADIUS) -> np.ndarray:
    """Embed the cylinder into a solid torus: (x, y, t) -> ((R+x)cos 2pi t, (R+x)sin 2pi t, y)."""
    if R <= 1.0:
        raise InvalidTorusError(f"bending radius must exceed 1, got {R}")
    points = np.asarray(points, dtype=float)
    x, y, t = points[..., 0], points[..., 1], points[..., 2]
    angle = 2.0 * np.pi * np.mod(t, 1.0)
    return np.stack([(R + x) * np.cos(angle), (R + x) * np.sin(angle), y], axis=-1)


@dataclass(frozen=True, eq=False)
class ClosedLink:
    """Closed polylines in R^3; each component has an implicit closing edge.

    ``params`` records the cylinder parameter of each vertex so the closure
    can be evaluated as a map from the circle R/Z.
    """

    components: tuple[np.ndarray, ...]
    params: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.components)

    def vertex_count(self, i: int) -> int:
        return len(self.components[i - 1])

    def evaluate(self, i: int, t) -> np.ndarray:
        if self.params is None:
            raise ValueError("this closed link carries no parametrisation")
        pts = self.components[i - 1]
        ts = np.append(self.params, 1.0)
        closed = np.vstack([pts, pts[:1]])
        return _interp(ts, closed, np.mod(np.asarray(t, dtype=float), 1.0))


def closure_b(g: GeomStringLink, R: float = BEND_RADIUS) -> ClosedLink:
    """Close a string link by bending the cylinder into a solid torus."""
    comps = []
    for i in range(1, g.n + 1):
        pts = bend(g.strand(i), R)
        if not np.array_equal(pts[0], pts[-1]):
            raise QuotientUndefinedError(f"strand {i} does not close up")
        comps.append(pts[:-1])
    return ClosedLink(tuple(comps), g.ts[:-1].copy())


def torus_map(f: GridMap, R: float = BEND_RADIUS) -> np.ndarray:
    """Apply the bending pointwise; the result descends to the torus grid."""
    report = verify_conditions(f)
    if not report.ok:
        raise QuotientUndefinedError(f"map violates the conditions: {report.summary()}")
    return bend(f.values, R)


def kappa_on_torus(link: ClosedLink, r: int = DEFAULT_RESOLUTION) -> np.ndarray:
    """Sample (t_1..t_n) -> (L_1(t_1), ..., L_n(t_n)) for a parametrised closed link."""
    _check_grid_size(link.n, r)
    grid = np.linspace(0.0, 1.0, r + 1)
    return _product_grid([link.evaluate(i, grid) for i in range(1, link.n + 1)])


def commuting_square_deviation(g: GeomStringLink, r: int = DEFAULT_RESOLUTION, R: float = BEND_RADIUS) -> tuple[float, int]:
    """Max pointwise gap between torus_map(kappa_sample(g)) and kappa_on_torus(closure_b(g)).

    Only grid points whose coordinates are all vertex parameters are compared;
    the count of such points is returned alongside.
    """
    upper = torus_map(kappa_sample(g, r), R)
    lower = kappa_on_torus(closure_b(g, R), r)
    grid = np.linspace(0.0, 1.0, r + 1)
    shared_axis = np.isin(grid, g.ts)
    mask = np.ones((r + 1,) * g.n, dtype=bool)
    for i in range(g.n):
        shape = [1] * g.n
        shape[i] = r + 1
        mask &= shared_axis.reshape(shape)
    if not mask.any():
        return 0.0, 0
    dev = np.abs(upper - lower)[mask]
    return float(dev.max()), int(mask.sum())


def _gauss_pair_terms(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact Gauss-integral contribution of every segment pair (closed polylines)."""
    p1, p2 = A, np.roll(A, -1, axis=0)
    p3, p4 = B, np.roll(B, -1, axis=0)
    p1, p2 = p1[:, None, :], p2[:, None, :]
    p3, p4 = p3[None, :, :], p4[None, :, :]
    r13, r14, r23, r24 = p3 - p1, p4 - p1, p3 - p2, p4 - p2

    def unit(v):
        norm = np.linalg.norm(v, axis=-1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(norm > 0, v / norm, 0.0)

    n1 = unit(np.cross(r13, r14))
    n2 = unit(np.cross(r14, r24))
    n3 = unit(np.cross(r24, r23))
    n4 = unit(np.cross(r23, r13))

    def asin_dot(a, b):
        return np.arcsin(np.clip(np.einsum("...k,...k->...", a, b), -1.0, 1.0))

    omega = asin_dot(n1, n2) + asin_dot(n2, n3) + asin_dot(n3, n4) + asin_dot(n4, n1)
    d1, d2 = p2 - p1, p4 - p3
    triple = np.einsum("...k,...k->...", np.cross(d2, d1), r13)
    scale = (
        np.linalg.norm(d1, axis=-1) * np.linalg.norm(d2, axis=-1) * np.linalg.norm(r13, axis=-1)
    )
    # coplanar segment pairs contribute exactly zero
    sign = np.where(np.abs(triple) <= 1e-13 * scale, 0.0, np.sign(triple))
    return omega * sign / (4.0 * np.pi)


def segment_distance(A: np.ndarray, B: np.ndarray) -> float:
    """Minimum distance between two closed polylines."""
    P0, P1 = A[:, None, :], np.roll(A, -1, axis=0)[:, None, :]
    Q0, Q1 = B[None, :, :], np.roll(B, -1, axis=0)[None, :, :]
    d1, d2, r = P1 - P0, Q1 - Q0, P0 - Q0
    a = np.einsum("...k,...k->...", d1, d1)
    e = np.einsum("...k,...k->...", d2, d2)
    f = np.einsum("...k,...k->...", d2, r)
    c = np.einsum("...k,...k->...", d1, r)
    b = np.einsum("...k,...k->...", d1, d2)
    a = np.maximum(a, 1e-300)
    e = np.maximum(e, 1e-300)
    denom = a * e - b * b
    s = np.where(denom > 1e-300, np.clip((b * f - c * e) / np.where(denom > 1e-300, denom, 1.0), 0, 1), 0.0)
    t = (b * s + f) / e
    s = np.where(t < 0, np.clip(-c / a, 0, 1), np.where(t > 1, np.clip((b - c) / a, 0, 1), s))
    t = np.clip(t, 0, 1)
    gap = P0 + s[..., None] * d1 - (Q0 + t[..., None] * d2)
    return float(np.linalg.norm(gap, axis=-1).min())


def min_component_distance(link: ClosedLink) -> float:
    best = math.inf
    for i, j in itertools.combinations(range(link.n), 2):
        best = min(best, segment_distance(link.components[i], link.components[j]))
    return best


def gauss_linking(
    link: ClosedLink,
    i: int,
    j: int,
    deterministic: bool = False,
    separation_threshold: float = 1e-3,
) -> tuple[float, int]:
    """Linking number of components i and j as (float value, nearest integer)."""
    if i == j:
        raise ValueError("linking number needs two distinct components")
    A, B = link.components[i - 1], link.components[j - 1]
    gap = segment_distance(A, B)
    if gap < separation_threshold:
        warnings.warn(f"components {i} and {j} are only {gap:.2e} apart", IllConditionedWarning, stacklevel=2)
    terms = _gauss_pair_terms(A, B)
    value = math.fsum(terms.ravel().tolist()) if deterministic else float(terms.sum())
    return value, int(round(value))


# ---- export -----------------------------------------------------------------


def link_to_lines(g: GeomStringLink) -> str:
    lines = [f"# string link n={g.n}", "# strand x y t"]
    for i in range(1, g.n + 1):
        for x, y, t in g.strand(i):
            lines.append(f"{i} {float(x)!r} {float(y)!r} {float(t)!r}")
    return "\n".join(lines) + "\n"


def closed_to_lines(link: ClosedLink) -> str:
    lines = [f"# closed link n={link.n}", "# component x y z"]
    for i, pts in enumerate(link.components, start=1):
        for x, y, z in pts:
            lines.append(f"{i} {float(x)!r} {float(y)!r} {float(z)!r}")
    return "\n".join(lines) + "\n"


def link_to_dict(g: GeomStringLink) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "string_link",
        "n": g.n,
        "basepoints": g.basepoints.tolist(),
        "eps_sep": g.eps_sep,
        "strands": [{"index": i, "vertices": g.strand(i).tolist()} for i in range(1, g.n + 1)],
    }


def closed_to_dict(link: ClosedLink) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "closed_link",
        "n": link.n,
        "components": [{"index": i, "vertices": c.tolist()} for i, c in enumerate(link.components, 1)],
    }
    if link.params is not None:
        out["params"] = link.params.tolist()
    return out


def link_from_dict(data: dict) -> GeomStringLink:
    if data.get("kind") != "string_link":
        raise ValueError("not a string link document")
    strands = sorted(data["strands"], key=lambda s: s["index"])
    verts = [np.asarray(s["vertices"], dtype=float) for s in strands]
    ts = verts[0][:, 2]
    for v in verts:
        if not np.array_equal(v[:, 2], ts):
            raise ValueError("strands must share t-samples")
    disk = np.stack([v[:, :2] for v in verts])
    return GeomStringLink(np.asarray(data["basepoints"]), ts, disk, eps_sep=float(data.get("eps_sep", 0.0)))


def closed_from_dict(data: dict) -> ClosedLink:
    if data.get("kind") != "closed_link":
        raise ValueError("not a closed link document")
    comps = sorted(data["components"], key=lambda c: c["index"])
    params = np.asarray(data["params"]) if "params" in data else None
    return ClosedLink(tuple(np.asarray(c["vertices"], dtype=float) for c in comps), params)


def link_from_lines(text: str, basepoints: np.ndarray | None = None) -> GeomStringLink:
    rows: dict[int, list[list[float]]] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        idx, *coords = line.split()
        rows.setdefault(int(idx), []).append([float(c) for c in coords])
    verts = [np.asarray(rows[k]) for k in sorted(rows)]
    disk = np.stack([v[:, :2] for v in verts])
    base = disk[:, 0] if basepoints is None else basepoints
    return GeomStringLink(base, verts[0][:, 2], disk)


def export(obj, path: str | Path, fmt: str | None = None) -> None:
    """Write a GeomStringLink or ClosedLink as ``lines`` or ``json``."""
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "lines")
    if isinstance(obj, GeomStringLink):
        text = json.dumps(link_to_dict(obj)) if fmt == "json" else link_to_lines(obj)
    elif isinstance(obj, ClosedLink):
        text = json.dumps(closed_to_dict(obj)) if fmt == "json" else closed_to_lines(obj)
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    path.write_text(text if text.endswith("\n") else text + "\n")
