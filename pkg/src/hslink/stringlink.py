"""Homotopy string links and their complete invariant.

A string link is carried by a pure braid.  Its invariant is, for each strand
i, the reduced Magnus expansion of the longitude lambda_i (read off from the
Artin image x_i -> lambda_i x_i lambda_i^-1) with every monomial involving
X_i removed.  It is computed without forming the Artin images, see
:func:`conjugator_expansions`; :func:`literal_entries` follows the definition.
Two string links are link-homotopic exactly when these vectors agree;
their coefficients are Milnor's invariants with distinct indices, the
longitude strand being the last index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from . import braid as br
from .braid import BraidWord
from .errors import (
    DomainError,
    InvalidMultiIndexError,
    MalformedWordError,
    NotPureBraidError,
    RankMismatchError,
)
from .freewords import FreeWord, artin_image, extract_conjugator, kill_generator
from .magnus import ReducedPolynomial, expand, kill_index, monomial_key, mu_coefficient, relabel


@dataclass(frozen=True)
class StringLink:
    rep: BraidWord

    def __post_init__(self):
        br.require_pure(self.rep)

    @property
    def n(self) -> int:
        return self.rep.strands

    @classmethod
    def from_text(cls, text: str) -> StringLink:
        return cls(br.parse(text))

    def __str__(self) -> str:
        return br.format_braid(self.rep)


@dataclass(frozen=True)
class InvariantVector:
    n: int
    entries: tuple[ReducedPolynomial, ...]

    def __post_init__(self):
        if len(self.entries) != self.n:
            raise MalformedWordError(f"expected {self.n} entries, got {len(self.entries)}")
        for i, p in enumerate(self.entries, start=1):
            if p.rank != self.n:
                raise RankMismatchError(f"entry {i} has rank {p.rank}, expected {self.n}")
            if any(i in m for m in p.terms):
                raise MalformedWordError(f"entry {i} contains X{i}")

    def entry(self, i: int) -> ReducedPolynomial:
        return self.entries[i - 1]

    def coefficients(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """All nonzero (multi-index, value) pairs, the longitude strand last."""
        for i, p in enumerate(self.entries, start=1):
            for m, c in p.terms.items():
                if m:
                    yield m + (i,), c

    def forget(self, i: int) -> InvariantVector:
        """Invariant of the link with strand i deleted (strands above i renumbered)."""
        mapping = {v: v - (v > i) for v in range(1, self.n + 1) if v != i}
        entries = tuple(relabel(p, mapping, self.n - 1) for k, p in enumerate(self.entries, 1) if k != i)
        return InvariantVector(self.n - 1, entries)


def longitude(sigma: StringLink, i: int) -> FreeWord:
    return extract_conjugator(artin_image(sigma.rep, i), i)


def conjugator_expansions(rep: BraidWord) -> list[ReducedPolynomial]:
    """Expansions of conjugators c_i with rep(x_i) = c_i x_i c_i^-1, for pure ``rep``.

    Works entirely in the reduced algebra, so the cost is linear in the word
    length even when the Artin images themselves grow exponentially.  Letters
    are absorbed from the last one backwards: if the remaining suffix sends
    x_j to c_j x_p(j) c_j^-1, then prepending a letter whose substitution sends
    x_j to u x_p u^-1 gives conjugator suffix(u) c_p.  c_i can differ from the
    literal longitude by a power of x_i on the right, which vanishes once X_i
    is killed.
    """
    n = rep.strands
    one = ReducedPolynomial.one(n)
    conj = [one] * (n + 1)  # 1-based: expansion of c_j
    conj_inv = [one] * (n + 1)
    target = list(range(n + 1))

    def image(j: int, sign: int) -> tuple[ReducedPolynomial, ReducedPolynomial]:
        # expansion of suffix(x_j^sign) and of its inverse
        x = ReducedPolynomial(n, {(): 1, (target[j],): sign})
        x_inv = ReducedPolynomial(n, {(): 1, (target[j],): -sign})
        return conj[j] * x * conj_inv[j], conj[j] * x_inv * conj_inv[j]

    for k, s in reversed(rep.letters):
        if s > 0:
            # x_k -> x_k x_k+1 x_k^-1, x_k+1 -> x_k
            u, u_inv = image(k, 1)
            new_k = (u * conj[k + 1], conj_inv[k + 1] * u_inv, target[k + 1])
            new_k1 = (conj[k], conj_inv[k], target[k])
        else:
            # x_k -> x_k+1, x_k+1 -> x_k+1^-1 x_k x_k+1
            u, u_inv = image(k + 1, -1)
            new_k = (conj[k + 1], conj_inv[k + 1], target[k + 1])
            new_k1 = (u * conj[k], conj_inv[k] * u_inv, target[k])
        conj[k], conj_inv[k], target[k] = new_k
        conj[k + 1], conj_inv[k + 1], target[k + 1] = new_k1
    if target[1:] != list(range(1, n + 1)):
        raise NotPureBraidError(f"braid {br.format_braid(rep)} is not pure")
    return conj[1:]


def literal_entries(rep: BraidWord) -> list[ReducedPolynomial]:
    """The invariant straight from the definition: expand the literal longitude, kill X_i."""
    out = []
    for i in range(1, rep.strands + 1):
        lam = extract_conjugator(artin_image(rep, i), i)
        # killing x_i before expanding keeps the word short; same result as kill_index(expand(lam), i)
        out.append(expand(kill_generator(lam, i)))
    return out


@lru_cache(maxsize=4096)
def _invariants(n: int, letters: tuple) -> InvariantVector:
    conj = conjugator_expansions(BraidWord(n, letters))
    return InvariantVector(n, tuple(kill_index(c, i) for i, c in enumerate(conj, start=1)))


def invariants(sigma: StringLink) -> InvariantVector:
    # lru_cache is safe under concurrent use; results never depend on it
    return _invariants(sigma.n, sigma.rep.letters)


def _check_n(sigma: StringLink, tau: StringLink) -> None:
    if sigma.n != tau.n:
        raise RankMismatchError(f"component counts differ: {sigma.n} != {tau.n}")


def link_homotopy_equal(sigma: StringLink, tau: StringLink) -> bool:
    _check_n(sigma, tau)
    return invariants(sigma) == invariants(tau)


def first_difference(sigma: StringLink, tau: StringLink) -> tuple[tuple[int, ...], int, int] | None:
    """First differing coefficient in (degree, lexicographic) order of the multi-index."""
    _check_n(sigma, tau)
    a = dict(invariants(sigma).coefficients())
    b = dict(invariants(tau).coefficients())
    diffs = [k for k in set(a) | set(b) if a.get(k, 0) != b.get(k, 0)]
    if not diffs:
        return None
    k = min(diffs, key=monomial_key)
    return k, a.get(k, 0), b.get(k, 0)


def identity(n: int) -> StringLink:
    return StringLink(BraidWord.identity(n))


def stack(sigma: StringLink, tau: StringLink) -> StringLink:
    _check_n(sigma, tau)
    return StringLink(br.compose(sigma.rep, tau.rep))


def inverse(sigma: StringLink) -> StringLink:
    return StringLink(br.invert(sigma.rep))


def delta_i(sigma: StringLink, i: int) -> StringLink:
    if not 1 <= i <= sigma.n:
        raise MalformedWordError(f"strand {i} out of range for {sigma.n} components")
    return StringLink(br.delete_strand(sigma.rep, i))


def delta(sigma: StringLink) -> list[StringLink]:
    return [delta_i(sigma, i) for i in range(1, sigma.n + 1)]


def is_borromean(sigma: StringLink) -> bool:
    if sigma.n <= 2:
        return True
    return all(
        link_homotopy_equal(delta_i(sigma, i), identity(sigma.n - 1)) for i in range(1, sigma.n + 1)
    )


def coordinate_basis(n: int) -> list[tuple[int, ...]]:
    """Monomials X_w X_{n-1}, w a permutation of 1..n-2, read from entry n."""
    if n < 2:
        raise DomainError("Borromean coordinates need at least two components")
    return [w + (n - 1,) for w in itertools.permutations(range(1, n - 1))]


def borromean_coordinates(sigma: StringLink) -> tuple[int, ...]:
    """Coordinates of a Borromean link in BrH(n), a free abelian group of rank (n-2)!."""
    if not is_borromean(sigma):
        raise DomainError(f"{sigma} is not Borromean")
    top = invariants(sigma).entry(sigma.n)
    coords = tuple(top.coefficient(m) for m in coordinate_basis(sigma.n))
    assert len(coords) == factorial(sigma.n - 2)
    return coords


def mu(sigma: StringLink, idx: Sequence[int]) -> int:
    """Milnor invariant mu(i_1 ... i_k i): coefficient of X_{i_1}..X_{i_k} in entry i."""
    idx = tuple(idx)
    if len(idx) < 2:
        raise InvalidMultiIndexError("a Milnor invariant needs at least two indices")
    if len(set(idx)) != len(idx):
        raise InvalidMultiIndexError(f"multi-index {idx} has repeated entries")
    if any(not 1 <= v <= sigma.n for v in idx):
        raise InvalidMultiIndexError(f"multi-index {idx} out of range for {sigma.n} components")
    return mu_coefficient(invariants(sigma).entry(idx[-1]), idx[:-1])
