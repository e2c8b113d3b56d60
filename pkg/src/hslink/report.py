"""Serializable invariant reports."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import braid as br
from . import stringlink as sl
from .freewords import format_word
from .magnus import ReducedPolynomial, format_polynomial

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class InvariantReport:
    n: int
    braid: str
    longitudes: tuple[str, ...]
    # per strand: ((monomial indices, coefficient), ...) in (degree, lex) order
    entries: tuple[tuple[tuple[tuple[int, ...], int], ...], ...]
    mu: tuple[tuple[tuple[int, ...], int], ...]
    borromean: bool
    coords: tuple[int, ...] | None = None
    schema_version: int = field(default=SCHEMA_VERSION)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["longitudes"] = list(self.longitudes)
        d["entries"] = [[{"monomial": list(m), "coefficient": c} for m, c in e] for e in self.entries]
        d["mu"] = [{"indices": list(k), "value": v} for k, v in self.mu]
        d["coords"] = None if self.coords is None else list(self.coords)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> InvariantReport:
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        return cls(
            n=int(d["n"]),
            braid=d["braid"],
            longitudes=tuple(d["longitudes"]),
            entries=tuple(
                tuple((tuple(t["monomial"]), int(t["coefficient"])) for t in e) for e in d["entries"]
            ),
            mu=tuple((tuple(m["indices"]), int(m["value"])) for m in d["mu"]),
            borromean=bool(d["borromean"]),
            coords=None if d["coords"] is None else tuple(d["coords"]),
            schema_version=d["schema_version"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> InvariantReport:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [self.braid]
        for i, lam in enumerate(self.longitudes, 1):
            lines.append(f"longitude {i}: {lam}")
        for i, e in enumerate(self.entries, 1):
            lines.append(f"entry {i}: {format_polynomial(ReducedPolynomial(self.n, e))}")
        for k, v in self.mu:
            lines.append(f"mu({','.join(map(str, k))}) = {v}")
        lines.append(f"borromean: {'true' if self.borromean else 'false'}")
        if self.coords is not None:
            lines.append(f"coords: ({', '.join(map(str, self.coords))})")
        return "\n".join(lines)


def default_mu_indices(n: int, max_len: int = 3) -> list[tuple[int, ...]]:
    """All distinct multi-indices of length 2..max_len, in (degree, lex) order."""
    out = []
    for k in range(2, min(n, max_len) + 1):
        out.extend(itertools.permutations(range(1, n + 1), k))
    return out


def build_report(sigma: sl.StringLink, mu_indices: Sequence[Sequence[int]] | None = None) -> InvariantReport:
    inv = sl.invariants(sigma)
    idx = default_mu_indices(sigma.n) if mu_indices is None else [tuple(m) for m in mu_indices]
    borro = sl.is_borromean(sigma)
    return InvariantReport(
        n=sigma.n,
        braid=br.format_braid(sigma.rep),
        longitudes=tuple(format_word(sl.longitude(sigma, i)) for i in range(1, sigma.n + 1)),
        entries=tuple(tuple(p.sorted_terms()) for p in inv.entries),
        mu=tuple((m, sl.mu(sigma, m)) for m in idx),
        borromean=borro,
        coords=sl.borromean_coordinates(sigma) if borro and sigma.n >= 2 else None,
    )

