"""Words in the free group F(n) and the Artin action of braid generators.

A word is stored as a tuple of signed generator indices: ``3`` is x3 and
``-3`` is x3^-1.  Braid words act left to right, the first letter being
applied first, so the image of a generator under a braid is obtained by
feeding it through the letters in order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedWordError, NotPureBraidError, RankMismatchError


def _free_reduce(letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word on generators x1..x_rank."""

    rank: int
    word: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise MalformedWordError(f"negative rank {self.rank}")
        prev = 0
        for a in self.word:
            if not isinstance(a, int) or a == 0 or abs(a) > self.rank:
                raise MalformedWordError(f"letter {a!r} out of range for rank {self.rank}")
            if a == -prev:
                raise MalformedWordError(f"word {self.word} is not freely reduced")
            prev = a

    @classmethod
    def generator(cls, rank: int, i: int) -> FreeWord:
        return cls(rank, (i,))

    @classmethod
    def identity(cls, rank: int) -> FreeWord:
        return cls(rank, ())

    @property
    def letters(self) -> tuple[tuple[int, int], ...]:
        """The word as (generator index, sign) pairs."""
        return tuple((abs(a), 1 if a > 0 else -1) for a in self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: FreeWord) -> FreeWord:
        return multiply(self, other)

    def __invert__(self) -> FreeWord:
        return invert(self)

    def __str__(self) -> str:
        return format_word(self)

    def exponent_sum(self, i: int) -> int:
        return sum(1 if a == i else -1 if a == -i else 0 for a in self.word)


def reduce(letters: Iterable[tuple[int, int] | int], rank: int) -> FreeWord:
    """Freely reduce a raw letter sequence.

    Letters may be given as ``(index, sign)`` pairs or as signed integers.

    >>> reduce([(1, 1), (2, 1), (2, -1), (1, 1)], 2).letters
    ((1, 1), (1, 1))
    """
    raw = []
    for item in letters:
        if isinstance(item, tuple):
            i, s = item
            if s not in (1, -1):
                raise MalformedWordError(f"sign {s!r} must be +1 or -1")
            a = i * s
        else:
            a = item
        if not isinstance(a, int) or a == 0 or abs(a) > rank:
            raise MalformedWordError(f"letter {item!r} out of range for rank {rank}")
        raw.append(a)
    return FreeWord(rank, tuple(_free_reduce(raw)))


def multiply(a: FreeWord, b: FreeWord) -> FreeWord:
    if a.rank != b.rank:
        raise RankMismatchError(f"ranks differ: {a.rank} != {b.rank}")
    left = list(a.word)
    k = 0
    while k < len(b.word) and left and left[-1] == -b.word[k]:
        left.pop()
        k += 1
    return FreeWord(a.rank, tuple(left) + b.word[k:])


def invert(a: FreeWord) -> FreeWord:
    return FreeWord(a.rank, tuple(-x for x in reversed(a.word)))


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """[a, b] = a b a^-1 b^-1."""
    return multiply(multiply(a, b), multiply(invert(a), invert(b)))


def _substitution(k: int, sign: int) -> dict[int, tuple[int, ...]]:
    # images of x_k, x_{k+1} (and of their inverses); all other letters fixed
    if sign == 1:
        img = {k: (k, k + 1, -k), k + 1: (k,)}
    else:
        img = {k: (k + 1,), k + 1: (-(k + 1), k, k + 1)}
    for g in list(img):
        img[-g] = tuple(-x for x in reversed(img[g]))
    return img


def _apply_substitution(img: dict[int, tuple[int, ...]], word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in word:
        for b in img.get(a, (a,)):
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return tuple(out)


def artin_apply(k: int, sign: int, w: FreeWord) -> FreeWord:
    """Apply the Artin automorphism of sigma_k^sign to ``w``.

    sigma_k sends x_k to x_k x_{k+1} x_k^-1 and x_{k+1} to x_k; the inverse
    letter applies the inverse substitution.
    """
    if not 1 <= k <= w.rank - 1:
        raise MalformedWordError(f"generator sigma_{k} out of range for rank {w.rank}")
    if sign not in (1, -1):
        raise MalformedWordError(f"sign {sign!r} must be +1 or -1")
    return FreeWord(w.rank, _apply_substitution(_substitution(k, sign), w.word))


def artin_image(b, i: int) -> FreeWord:
    """Image of x_i under the braid word ``b`` (letters applied in reading order)."""
    n = b.strands
    if not 1 <= i <= n:
        raise MalformedWordError(f"generator x{i} out of range for {n} strands")
    word: tuple[int, ...] = (i,)
    for k, s in b.letters:
        word = _apply_substitution(_substitution(k, s), word)
    return FreeWord(n, word)


def extract_conjugator(w: FreeWord, i: int) -> FreeWord:
    """Return the literal prefix ``lam`` with ``w == lam x_i lam^-1``.

    Raises NotPureBraidError when ``w`` is not visibly such a conjugate.
    """
    m = len(w.word)
    if m % 2 == 0 or w.word[m // 2] != i:
        raise NotPureBraidError(f"{format_word(w)} is not a conjugate of x{i}")
    half = m // 2
    prefix = w.word[:half]
    suffix = w.word[half + 1:]
    if suffix != tuple(-x for x in reversed(prefix)):
        raise NotPureBraidError(f"{format_word(w)} is not a conjugate of x{i}")
    return FreeWord(w.rank, prefix)


def kill_generator(w: FreeWord, i: int) -> FreeWord:
    """Image of ``w`` under x_i -> 1."""
    return FreeWord(w.rank, tuple(_free_reduce(a for a in w.word if abs(a) != i)))


def format_word(w: FreeWord) -> str:
    """Render as ``x1 x2^-1``; the empty word is ``1``."""
    if not w.word:
        return "1"
    return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in w.word)


def parse_word(text: str, rank: int) -> FreeWord:
    """Inverse of :func:`format_word`."""
    text = text.strip()
    if text in ("", "1"):
        return FreeWord(rank, ())
    raw = []
    for tok in text.split():
        if not tok.startswith("x"):
            raise MalformedWordError(f"bad letter {tok!r}")
        body, _, exp = tok[1:].partition("^")
        if exp not in ("", "-1", "1") or not body.isdigit():
            raise MalformedWordError(f"bad letter {tok!r}")
        raw.append(int(body) * (-1 if exp == "-1" else 1))
    return reduce(raw, rank)
