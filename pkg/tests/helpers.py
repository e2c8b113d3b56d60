"""Random pure braids and isotopy-preserving rewrites of braid words."""

from __future__ import annotations

import random

from hslink import braid as br
from hslink.braid import BraidWord


def random_band_braid(rng: random.Random, n: int, max_gens: int = 12) -> BraidWord:
    """Product of up to ``max_gens`` band generators A_ij^{+-1}."""
    parts = []
    for _ in range(rng.randint(0, max_gens)):
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        g = br.a_ij(n, i, j)
        parts.append(g if rng.random() < 0.5 else br.invert(g))
    return br.compose_all(parts, n)


def random_sigma_pure(rng: random.Random, n: int, max_len: int = 12) -> BraidWord:
    """Random sigma word of length <= max_len, rejection-sampled to be pure."""
    while True:
        length = rng.randint(0, max_len)
        b = BraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(length)))
        if br.is_pure(b):
            return b


def random_pure(rng: random.Random, n: int, max_len: int = 12) -> BraidWord:
    if n == 1:
        return BraidWord(1)
    if rng.random() < 0.5:
        return random_sigma_pure(rng, n, max_len)
    return random_band_braid(rng, n, max_len)


def _triple(k, s, t):
    return [(k, s), (k + 1, t)]


def rewrite(rng: random.Random, b: BraidWord, max_len: int = 60) -> BraidWord:
    """Apply one randomly chosen isotopy move somewhere in ``b``.

    Moves: insert or delete a canceling pair, a braid relation (positive,
    negative or mixed form, either direction), or a far commutation.
    Falls back to inserting a canceling pair when the chosen move has no site.
    """
    n, w = b.strands, list(b.letters)
    moves = ["insert", "delete", "braid", "far"]
    if len(w) > max_len:
        moves = ["delete", "braid", "far"]
    rng.shuffle(moves)
    for move in moves:
        sites = []
        if move == "delete":
            sites = [p for p in range(len(w) - 1) if w[p][0] == w[p + 1][0] and w[p][1] == -w[p + 1][1]]
            if sites:
                p = rng.choice(sites)
                return BraidWord(n, tuple(w[:p] + w[p + 2:]))
        elif move == "far":
            sites = [p for p in range(len(w) - 1) if abs(w[p][0] - w[p + 1][0]) >= 2]
            if sites:
                p = rng.choice(sites)
                w[p], w[p + 1] = w[p + 1], w[p]
                return BraidWord(n, tuple(w))
        elif move == "braid":
            out = _braid_relation(rng, w)
            if out is not None:
                return BraidWord(n, tuple(out))
        elif move == "insert" and n >= 2:
            p = rng.randint(0, len(w))
            k, s = rng.randint(1, n - 1), rng.choice((1, -1))
            return BraidWord(n, tuple(w[:p] + [(k, s), (k, -s)] + w[p:]))
    if n < 2:
        return b
    p = rng.randint(0, len(w))
    return BraidWord(n, tuple(w[:p] + [(1, 1), (1, -1)] + w[p:]))


def _braid_relation(rng, w):
    # a b a = b a b with (a, b) = (s_k, s_k+1) and sign patterns
    # (+,+,+) <-> (+,+,+), (-,-,-) <-> (-,-,-),
    # s_k s_k+1 s_k^-1 <-> s_k+1^-1 s_k s_k+1 and its mirror
    sites = []
    for p in range(len(w) - 2):
        (a, s), (b, t), (c, u) = w[p], w[p + 1], w[p + 2]
        if a != c or abs(a - b) != 1:
            continue
        if s == t == u:
            sites.append((p, [(b, s), (a, s), (b, s)]))
        elif s == t == -u:
            # a^s b^s a^-s = b^-s a^s b^s
            sites.append((p, [(b, -s), (a, s), (b, s)]))
        elif -s == t == u:
            # a^-s b^s a^s = b^s a^s b^-s
            sites.append((p, [(b, t), (a, t), (b, -t)]))
    if not sites:
        return None
    p, repl = rng.choice(sites)
    return w[:p] + repl + w[p + 3:]
