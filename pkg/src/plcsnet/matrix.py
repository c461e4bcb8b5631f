"""Symmetric per-pair result container shared by the PLCS and UD stages."""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterator, Optional, Union

import numpy as np

from .errors import ContractError

CHANNELS = ("gamma", "beta", "ud")
DEGENERATE_TOKEN = "degenerate"


@dataclass(frozen=True)
class Degenerate:
    """Marker stored in place of a number when a pair cannot be evaluated."""

    reason: str

    def __str__(self) -> str:
        return DEGENERATE_TOKEN


Cell = Union[float, Degenerate]


@dataclass(frozen=True)
class PairResult:
    a: str
    b: str
    fit: Optional[object] = None  # FitResult or Degenerate
    ud: Optional[Cell] = None
    ud_variant: Optional[str] = None

    def value(self, channel: str) -> Optional[Cell]:
        if channel == "ud":
            return self.ud
        if channel not in ("gamma", "beta"):
            raise ContractError(f"unknown channel {channel!r}")
        if self.fit is None or isinstance(self.fit, Degenerate):
            return self.fit
        return getattr(self.fit, channel)


class PairMatrix:
    """Results for every unordered pair of a panel's entities.

    Pairs are keyed in entity order (first entity listed first); lookups
    accept either order. The diagonal is not stored.
    """

    def __init__(self, entities, results):
        self.entities = tuple(entities)
        if len(self.entities) < 2:
            raise ContractError("a pair matrix needs at least 2 entities")
        self._index = {e: i for i, e in enumerate(self.entities)}
        self._pairs: dict[tuple[str, str], PairResult] = {}
        for res in results:
            key = self._key(res.a, res.b)
            if key != (res.a, res.b):
                res = replace(res, a=key[0], b=key[1])
            self._pairs[key] = res
        expected = len(self.entities) * (len(self.entities) - 1) // 2
        if len(self._pairs) != expected:
            raise ContractError(
                f"pair matrix over {len(self.entities)} entities needs {expected} pairs, "
                f"got {len(self._pairs)}"
            )

    def _key(self, u: str, v: str) -> tuple[str, str]:
        if u == v:
            raise ContractError(f"diagonal cell ({u}, {v}) is not defined")
        try:
            iu, iv = self._index[u], self._index[v]
        except KeyError as exc:
            raise ContractError(f"unknown entity {exc.args[0]!r}") from None
        return (u, v) if iu < iv else (v, u)

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[PairResult]:
        for u, v in combinations(self.entities, 2):
            yield self._pairs[(u, v)]

    def pair(self, u: str, v: str) -> PairResult:
        return self._pairs[self._key(u, v)]

    def value(self, channel: str, u: str, v: str) -> Optional[Cell]:
        return self.pair(u, v).value(channel)

    def has_channel(self, channel: str) -> bool:
        return all(res.value(channel) is not None for res in self._pairs.values())

    def channels(self) -> list[str]:
        return [c for c in CHANNELS if self.has_channel(c)]

    def degenerate_pairs(self, channel: str) -> list[tuple[str, str]]:
        return [(r.a, r.b) for r in self if isinstance(r.value(channel), Degenerate)]

    def to_array(self, channel: str) -> np.ndarray:
        """Dense symmetric array; diagonal and degenerate cells are NaN."""
        n = len(self.entities)
        out = np.full((n, n), np.nan)
        for res in self:
            val = res.value(channel)
            if val is None:
                raise ContractError(f"channel {channel!r} is not populated")
            if isinstance(val, Degenerate):
                continue
            i, j = self._index[res.a], self._index[res.b]
            out[i, j] = out[j, i] = val
        return out

    def merge(self, other: "PairMatrix") -> "PairMatrix":
        """Combine channels of two matrices over the same entities."""
        if other.entities != self.entities:
            raise ContractError("cannot merge matrices over different entities")
        merged = []
        for mine in self:
            theirs = other.pair(mine.a, mine.b)
            merged.append(
                PairResult(
                    mine.a,
                    mine.b,
                    fit=theirs.fit if theirs.fit is not None else mine.fit,
                    ud=theirs.ud if theirs.ud is not None else mine.ud,
                    ud_variant=theirs.ud_variant or mine.ud_variant,
                )
            )
        return PairMatrix(self.entities, merged)
