"""Reduced Magnus algebra.

Integer polynomials in non-commuting variables X1..Xn in which any monomial
with a repeated variable is zero.  The algebra is finite dimensional, and
x_i -> 1 + X_i, x_i^-1 -> 1 - X_i extends to a homomorphism from F(n) to its
group of units.
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import InvalidMultiIndexError, RankMismatchError
from .freewords import FreeWord

Monomial = tuple[int, ...]


def monomial_key(m: Monomial) -> tuple[int, Monomial]:
    """Sort key: degree first, then lexicographic on the indices."""
    return (len(m), m)


def algebra_dimension(n: int) -> int:
    return sum(factorial(n) // factorial(n - k) for k in range(n + 1))


class ReducedPolynomial:
    """Immutable element of the reduced Magnus algebra of rank ``n``."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, int] = {}
        for mono, coeff in items:
            mono = tuple(mono)
            if any(not 1 <= v <= rank for v in mono):
                raise InvalidMultiIndexError(f"monomial {mono} out of range for rank {rank}")
            if len(set(mono)) != len(mono):
                continue
            c = clean.get(mono, 0) + int(coeff)
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self.rank = rank
        self._terms = clean
        self._hash = None

    @classmethod
    def one(cls, rank: int) -> ReducedPolynomial:
        return cls(rank, {(): 1})

    @classmethod
    def variable(cls, rank: int, i: int) -> ReducedPolynomial:
        return cls(rank, {(i,): 1})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    def coefficient(self, mono: Sequence[int]) -> int:
        return self._terms.get(tuple(mono), 0)

    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, ReducedPolynomial):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: ReducedPolynomial) -> ReducedPolynomial:
        _check_rank(self, other)
        return ReducedPolynomial(self.rank, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> ReducedPolynomial:
        return ReducedPolynomial(self.rank, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: ReducedPolynomial) -> ReducedPolynomial:
        return self + (-other)

    def __mul__(self, other: ReducedPolynomial) -> ReducedPolynomial:
        return poly_mul(self, other)

    def __repr__(self) -> str:
        return f"ReducedPolynomial({self.rank}, {format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def _check_rank(p: ReducedPolynomial, q: ReducedPolynomial) -> None:
    if p.rank != q.rank:
        raise RankMismatchError(f"ranks differ: {p.rank} != {q.rank}")


def poly_mul(p: ReducedPolynomial, q: ReducedPolynomial) -> ReducedPolynomial:
    _check_rank(p, q)
    out: dict[Monomial, int] = {}
    qitems = [(m, set(m), c) for m, c in q._terms.items()]
    for m1, c1 in p._terms.items():
        s1 = set(m1)
        for m2, s2, c2 in qitems:
            if s1.isdisjoint(s2):
                key = m1 + m2
                out[key] = out.get(key, 0) + c1 * c2
    return ReducedPolynomial(p.rank, out)


def _times_letter(terms: dict[Monomial, int], a: int) -> None:
    # in place: terms <- terms * (1 + sign(a) X_|a|)
    v = abs(a)
    sign = 1 if a > 0 else -1
    extra = [(m + (v,), sign * c) for m, c in terms.items() if v not in m]
    for m, c in extra:
        c = terms.get(m, 0) + c
        if c:
            terms[m] = c
        else:
            del terms[m]


def expand(w: FreeWord) -> ReducedPolynomial:
    """Reduced Magnus expansion of a free word."""
    terms: dict[Monomial, int] = {(): 1}
    for a in w.word:
        _times_letter(terms, a)
    return ReducedPolynomial(w.rank, terms)


def kill_index(p: ReducedPolynomial, i: int) -> ReducedPolynomial:
    """Drop every monomial containing X_i (the image of x_i -> 1)."""
    return ReducedPolynomial(p.rank, {m: c for m, c in p._terms.items() if i not in m})


def mu_coefficient(p: ReducedPolynomial, idx: Sequence[int]) -> int:
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        raise InvalidMultiIndexError(f"multi-index {idx} has repeated entries")
    if any(not 1 <= v <= p.rank for v in idx):
        raise InvalidMultiIndexError(f"multi-index {idx} out of range for rank {p.rank}")
    return p.coefficient(idx)


def relabel(p: ReducedPolynomial, mapping: Mapping[int, int], rank: int) -> ReducedPolynomial:
    """Rename variables; monomials containing an unmapped variable are dropped."""
    out = {}
    for m, c in p._terms.items():
        if all(v in mapping for v in m):
            out[tuple(mapping[v] for v in m)] = c
    return ReducedPolynomial(rank, out)


def format_polynomial(p: ReducedPolynomial) -> str:
    """Human-readable form, e.g. ``1 + X1X2 - X2X1``."""
    items = p.sorted_terms()
    if not items:
        return "0"
    parts = []
    for k, (m, c) in enumerate(items):
        body = "".join(f"X{v}" for v in m)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}{body}"
        if k == 0:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(("+ " if c > 0 else "- ") + text)
    return " ".join(parts)
