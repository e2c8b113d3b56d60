"""Little intervals acting on string links and on cube maps I^n -> Conf(C, n).

An element of L(k) is a list of k subintervals [lo, hi] of [0, 1] with
disjoint interiors, each read as the affine map s -> lo + (hi - lo) s.

Map objects are anything with ``n``, ``basepoints`` and a vectorised
``__call__(T)`` taking an array of shape ``(..., n)`` of cube points and
returning ``(..., n, 3)`` configurations; see :class:`hslink.geometry.KappaMap`
and :class:`hslink.geometry.GridMap`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import IllFormedInputError, IntervalError, RankMismatchError
from .geometry import GeomStringLink, GridMap, _check_grid_size

BOUNDARY_TOL = 1e-12
BASEPOINT_TOL = 1e-9


@dataclass(frozen=True)
class Intervals:
    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        for lo, hi in ivs:
            if not 0.0 <= lo < hi <= 1.0:
                raise IntervalError(f"[{lo}, {hi}] is not a nondegenerate subinterval of [0, 1]")
        ordered = sorted(ivs)
        for (_, hi), (lo, _) in zip(ordered, ordered[1:]):
            if lo < hi:
                raise IntervalError("intervals must have disjoint interiors")

    @property
    def k(self) -> int:
        return len(self.intervals)

    def forward(self, j: int, s):
        lo, hi = self.intervals[j]
        return lo + (hi - lo) * s

    def backward(self, j: int, t):
        lo, hi = self.intervals[j]
        return (t - lo) / (hi - lo)

    def permuted(self, perm: Sequence[int]) -> Intervals:
        return Intervals(tuple(self.intervals[p] for p in perm))

    def __str__(self) -> str:
        return format_intervals(self)


STACKING = Intervals(((0.0, 0.5), (0.5, 1.0)))
UNIT = Intervals(((0.0, 1.0),))


_IV_HEADER = re.compile(r"\s*k\s*=\s*(\d+)\s*:")
_IV_TOKEN = re.compile(r"\[\s*([^,\]\s]+)\s*,\s*([^,\]\s]+)\s*\]")


def _number(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise IntervalError(f"bad number {text!r}") from exc


def parse_intervals(text: str) -> Intervals:
    """Parse ``k=2: [0,1/2] [0.5,1]``."""
    head = _IV_HEADER.match(text)
    if head is None:
        raise IntervalError("expected header 'k=<int>:'")
    body = text[head.end():]
    pairs = []
    pos = 0
    for m in _IV_TOKEN.finditer(body):
        if body[pos:m.start()].strip():
            raise IntervalError(f"unexpected text {body[pos:m.start()].strip()!r}")
        pairs.append((_number(m.group(1)), _number(m.group(2))))
        pos = m.end()
    if body[pos:].strip():
        raise IntervalError(f"unexpected text {body[pos:].strip()!r}")
    if len(pairs) != int(head.group(1)):
        raise IntervalError(f"header declares {head.group(1)} intervals, found {len(pairs)}")
    return Intervals(tuple(pairs))


def format_intervals(ivs: Intervals) -> str:
    body = " ".join(f"[{lo!r},{hi!r}]" for lo, hi in ivs.intervals)
    return f"k={ivs.k}:" + (f" {body}" if body else "")


def compose_intervals(outer: Intervals, inners: Sequence[Intervals]) -> Intervals:
    """Operad composition: substitute inner families into the outer intervals."""
    if len(inners) != outer.k:
        raise IntervalError(f"need {outer.k} inner families, got {len(inners)}")
    out = []
    for (lo, hi), inner in zip(outer.intervals, inners):
        w = hi - lo
        out.extend((lo + w * a, lo + w * b) for a, b in inner.intervals)
    return Intervals(tuple(out))


def act_on_links(ivs: Intervals, links: Sequence[GeomStringLink]) -> GeomStringLink:
    """Place link j, rescaled, in the slab L_j; strands run vertically elsewhere."""
    if len(links) != ivs.k or ivs.k == 0:
        raise IntervalError(f"need {ivs.k} >= 1 links, got {len(links)}")
    base = links[0].basepoints
    for g in links:
        if g.n != links[0].n:
            raise RankMismatchError("all links need the same number of strands")
        if not np.array_equal(g.basepoints, base):
            raise IntervalError("all links must share basepoints")
    pieces = sorted(zip(ivs.intervals, range(ivs.k)))
    ts: list[np.ndarray] = []
    disks: list[np.ndarray] = []
    if pieces[0][0][0] > 0.0:
        ts.append(np.array([0.0]))
        disks.append(base[:, None, :])
    for (lo, hi), j in pieces:
        g = links[j]
        t = lo + (hi - lo) * g.ts
        t[0], t[-1] = lo, hi
        d = g.disk
        if ts and ts[-1][-1] == lo:
            t, d = t[1:], d[:, 1:]
        ts.append(t)
        disks.append(d)
    if pieces[-1][0][1] < 1.0:
        ts.append(np.array([1.0]))
        disks.append(base[:, None, :])
    return GeomStringLink(
        base,
        np.concatenate(ts),
        np.concatenate(disks, axis=1),
        eps_sep=min(g.eps_sep for g in links),
    )


def _as_batch(T, n: int) -> tuple[np.ndarray, bool]:
    T = np.asarray(T, dtype=float)
    if T.shape[-1] != n:
        raise ValueError(f"expected points with {n} coordinates")
    single = T.ndim == 1
    return (T[None] if single else T), single


class ActedMap:
    """Lazy result of acting with little intervals on k cube maps."""

    def __init__(self, ivs: Intervals, maps: Sequence):
        if len(maps) != ivs.k or ivs.k == 0:
            raise IntervalError(f"need {ivs.k} >= 1 maps, got {len(maps)}")
        self.n = maps[0].n
        self.basepoints = np.asarray(maps[0].basepoints, dtype=float)
        for f in maps:
            if f.n != self.n:
                raise RankMismatchError("all maps need the same number of components")
            if not np.array_equal(np.asarray(f.basepoints, dtype=float), self.basepoints):
                raise IntervalError("all maps must share basepoints")
        self.intervals = ivs
        self.maps = tuple(maps)

    def __call__(self, T) -> np.ndarray:
        T, single = _as_batch(T, self.n)
        a = self.basepoints
        x = np.empty(T.shape + (3,))
        x[..., :2] = a
        x[..., 2] = T
        for (lo, hi), f in zip(self.intervals.intervals, self.maps):
            s = (x[..., 2] - lo) / (hi - lo)
            on_boundary = (np.abs(s) <= BOUNDARY_TOL) | (np.abs(s - 1.0) <= BOUNDARY_TOL)
            off_base = np.linalg.norm(x[..., :2] - a, axis=-1) > BASEPOINT_TOL
            if np.any(on_boundary & off_base):
                where = np.argwhere(on_boundary & off_base)[0]
                raise IllFormedInputError(f"boundary point away from its basepoint at batch/component {tuple(where)}")
            inside = (s >= 0.0) & (s <= 1.0)
            if not np.any(inside):
                continue
            # coordinates outside I are clamped when fed to f
            val = f(np.clip(s, 0.0, 1.0))
            moved = np.concatenate([val[..., :2], (lo + (hi - lo) * val[..., 2])[..., None]], axis=-1)
            x = np.where(inside[..., None], moved, x)
        return x[0] if single else x


def act_on_maps(ivs: Intervals, maps: Sequence) -> ActedMap:
    return ActedMap(ivs, maps)


class ProductMap:
    """Direct two-factor product of cube maps, each coordinate rescaled by its own half."""

    def __init__(self, f, g):
        if f.n != g.n:
            raise RankMismatchError("maps need the same number of components")
        self.f, self.g = f, g
        self.n = f.n
        self.basepoints = np.asarray(f.basepoints, dtype=float)

    def __call__(self, T) -> np.ndarray:
        T, single = _as_batch(T, self.n)
        lower = T <= 0.5
        Z = np.where(lower, 2.0 * T, 2.0 * T - 1.0)
        F, G = self.f(Z), self.g(Z)
        F = np.concatenate([F[..., :2], 0.5 * F[..., 2:]], axis=-1)
        G = np.concatenate([G[..., :2], 0.5 * G[..., 2:] + 0.5], axis=-1)
        out = np.where(lower[..., None], F, G)
        return out[0] if single else out


def map_product(f, g) -> ProductMap:
    return ProductMap(f, g)


class ReflectedMap:
    """Experimental: t -> r(f(1 - t)) with r(t) = 1 - t.  Not claimed to invert anything."""

    def __init__(self, f):
        self.f, self.n, self.basepoints = f, f.n, f.basepoints

    def __call__(self, T) -> np.ndarray:
        T, single = _as_batch(T, self.n)
        v = self.f(1.0 - T)
        out = np.concatenate([v[..., :2], 1.0 - v[..., 2:]], axis=-1)
        return out[0] if single else out


def sample_map(f, r: int = 8) -> GridMap:
    """Evaluate a map object on the (r+1)^n grid."""
    _check_grid_size(f.n, r)
    axes = np.meshgrid(*([np.linspace(0.0, 1.0, r + 1)] * f.n), indexing="ij")
    T = np.stack(axes, axis=-1)
    return GridMap(f.basepoints, f(T))
