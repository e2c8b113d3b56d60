"""Braid words on n strands.

Letters are ``(k, sign)`` with ``sigma_k`` exchanging the strands at
positions k and k+1.  Words are read left to right, bottom (t = 0) to top
(t = 1).  Strands are labelled by their position at the bottom.

Text grammar::

    n=<int>: <letter> <letter> ...      # comment

where a letter is ``s<k>``, ``s<k>^-1``, ``A<i>,<j>`` or ``A<i>,<j>^-1``;
band tokens are expanded at parse time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import BraidSyntaxError, MalformedWordError, NotPureBraidError, RankMismatchError

Letter = tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise MalformedWordError(f"a braid needs at least one strand, got {self.strands}")
        for k, s in self.letters:
            if not 1 <= k <= self.strands - 1:
                raise MalformedWordError(f"sigma_{k} out of range for {self.strands} strands")
            if s not in (1, -1):
                raise MalformedWordError(f"sign {s!r} must be +1 or -1")

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def __invert__(self) -> BraidWord:
        return invert(self)

    def __str__(self) -> str:
        return format_braid(self)


_HEADER = re.compile(r"\s*n\s*=\s*(\d+)\s*:")
_TOKEN = re.compile(r"s(\d+)(\^-1)?$|A(\d+),(\d+)(\^-1)?$")


def parse(text: str) -> BraidWord:
    """Parse braid text.

    >>> parse("n=3: s1 s2^-1 s1").letters
    ((1, 1), (2, -1), (1, 1))
    """
    # strip comments but keep character offsets intact
    clean = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    head = _HEADER.match(clean)
    if head is None:
        pos = len(clean) - len(clean.lstrip())
        raise BraidSyntaxError("expected header 'n=<int>:'", pos)
    n = int(head.group(1))
    if n < 1:
        raise BraidSyntaxError("strand count must be positive", head.start(1))
    letters: list[Letter] = []
    for m in re.finditer(r"\S+", clean[head.end():]):
        pos = head.end() + m.start()
        tok = _TOKEN.match(m.group())
        if tok is None:
            raise BraidSyntaxError(f"unrecognised token {m.group()!r}", pos)
        if tok.group(1) is not None:
            k = int(tok.group(1))
            if not 1 <= k <= n - 1:
                raise BraidSyntaxError(f"s{k} out of range for {n} strands", pos)
            letters.append((k, -1 if tok.group(2) else 1))
        else:
            i, j = int(tok.group(3)), int(tok.group(4))
            if not 1 <= i < j <= n:
                raise BraidSyntaxError(f"A{i},{j} needs 1 <= i < j <= {n}", pos)
            band = a_ij(n, i, j)
            letters.extend(band.letters if not tok.group(5) else invert(band).letters)
    return BraidWord(n, tuple(letters))


def format_braid(b: BraidWord) -> str:
    body = " ".join(f"s{k}" if s > 0 else f"s{k}^-1" for k, s in b.letters)
    return f"n={b.strands}:" + (f" {body}" if body else "")


def underlying_permutation(b: BraidWord) -> tuple[int, ...]:
    """``perm[p - 1]`` is the top position of the strand that starts at position p."""
    order = list(range(1, b.strands + 1))  # order[pos-1] = strand at that position
    for k, _ in b.letters:
        order[k - 1], order[k] = order[k], order[k - 1]
    perm = [0] * b.strands
    for pos, strand in enumerate(order, start=1):
        perm[strand - 1] = pos
    return tuple(perm)


def is_pure(b: BraidWord) -> bool:
    return underlying_permutation(b) == tuple(range(1, b.strands + 1))


def require_pure(b: BraidWord) -> None:
    if not is_pure(b):
        raise NotPureBraidError(
            f"braid {format_braid(b)} is not pure: permutation {underlying_permutation(b)}"
        )


def a_ij(n: int, i: int, j: int) -> BraidWord:
    """Band generator A_ij = (s_{j-1} ... s_{i+1}) s_i^2 (s_{i+1}^-1 ... s_{j-1}^-1)."""
    if not 1 <= i < j <= n:
        raise MalformedWordError(f"A_{i},{j} needs 1 <= i < j <= {n}")
    down = [(k, 1) for k in range(j - 1, i, -1)]
    up = [(k, -1) for k in range(i + 1, j)]
    return BraidWord(n, tuple(down + [(i, 1), (i, 1)] + up))


def _check_strands(a: BraidWord, b: BraidWord) -> None:
    if a.strands != b.strands:
        raise RankMismatchError(f"strand counts differ: {a.strands} != {b.strands}")


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    """Stack ``a`` below ``b``: concatenation of letters."""
    _check_strands(a, b)
    return BraidWord(a.strands, a.letters + b.letters)


def compose_all(words: Iterable[BraidWord], n: int) -> BraidWord:
    letters: list[Letter] = []
    for w in words:
        if w.strands != n:
            raise RankMismatchError(f"strand counts differ: {w.strands} != {n}")
        letters.extend(w.letters)
    return BraidWord(n, tuple(letters))


def invert(b: BraidWord) -> BraidWord:
    return BraidWord(b.strands, tuple((k, -s) for k, s in reversed(b.letters)))


def power(b: BraidWord, e: int) -> BraidWord:
    base = b if e >= 0 else invert(b)
    return BraidWord(b.strands, base.letters * abs(e))


def commutator(a: BraidWord, b: BraidWord) -> BraidWord:
    """[a, b] = a b a^-1 b^-1."""
    return compose_all([a, b, invert(a), invert(b)], a.strands)


def crossing_strands(b: BraidWord) -> list[tuple[int, int]]:
    """For each letter, the (left, right) strand labels it exchanges."""
    order = list(range(1, b.strands + 1))
    out = []
    for k, _ in b.letters:
        out.append((order[k - 1], order[k]))
        order[k - 1], order[k] = order[k], order[k - 1]
    return out


def delete_strand(b: BraidWord, i: int) -> BraidWord:
    """Remove strand ``i`` from a pure braid; the result lives on n-1 strands."""
    if not 1 <= i <= b.strands:
        raise MalformedWordError(f"strand {i} out of range for {b.strands} strands")
    require_pure(b)
    if b.strands == 1:
        raise MalformedWordError("cannot delete the only strand")
    order = list(range(1, b.strands + 1))
    out: list[Letter] = []
    for k, s in b.letters:
        left, right = order[k - 1], order[k]
        if i not in (left, right):
            pos_i = order.index(i) + 1
            out.append((k - 1 if pos_i < k else k, s))
        order[k - 1], order[k] = right, left
    return BraidWord(b.strands - 1, tuple(out))


def crossing_linking(b: BraidWord, i: int, j: int) -> int:
    """Half the signed number of crossings between strands i and j."""
    if i == j:
        raise MalformedWordError("linking number needs two distinct strands")
    for v in (i, j):
        if not 1 <= v <= b.strands:
            raise MalformedWordError(f"strand {v} out of range for {b.strands} strands")
    require_pure(b)
    total = 0
    for (left, right), (_, s) in zip(crossing_strands(b), b.letters):
        if {left, right} == {i, j}:
            total += s
    assert total % 2 == 0
    return total // 2
