"""Pearson correlation and ultrametric distance, the linear baseline.

Two normalizations are supported:

* ``MS``: ``sqrt(2 (1 - P))``, range [0, 2];
* ``AM``: ``sqrt((1 - P) / 2)``, range [0, 1]. Linearly correlated series
  sit at 0, anticorrelated at 1, uncorrelated at ``sqrt(2)/2``.

AM is the default. The two are locked together by ``MS == 2 * AM``.
"""

from __future__ import annotations

import enum
import math
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from .errors import ContractError, ZeroVarianceError
from .ingest import SeriesPanel
from .matrix import Degenerate, PairMatrix, PairResult

# radicand may dip below zero by rounding; more than this means a broken coefficient
RADICAND_SLACK = 1e-12


class UdVariant(str, enum.Enum):
    MS = "MS"
    AM = "AM"

    @classmethod
    def parse(cls, value: Union[str, "UdVariant"]) -> "UdVariant":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ContractError(f"unknown UD variant {value!r}; expected am or ms") from None


def _pearson_raw(a: np.ndarray, b: np.ndarray) -> float:
    # population (1/N) moments; the normalization cancels in the ratio
    da = a - a.mean()
    db = b - b.mean()
    va = float(da @ da) / a.size
    vb = float(db @ db) / b.size
    if va == 0.0 or vb == 0.0:
        raise ZeroVarianceError("constant series has zero variance")
    return (float(da @ db) / a.size) / math.sqrt(va * vb)


def _check_pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape:
        raise ContractError("series must be one-dimensional and of equal length")
    if a.size < 2:
        raise ContractError("Pearson correlation needs at least 2 points")
    return a, b


def pearson(a: Sequence[float], b: Sequence[float]) -> float:
    a, b = _check_pair(a, b)
    return min(1.0, max(-1.0, _pearson_raw(a, b)))


def ud_from_pearson(p: float, variant: Union[str, UdVariant] = UdVariant.AM) -> float:
    variant = UdVariant.parse(variant)
    radicand = 1.0 - p
    if radicand < 0.0:
        if radicand < -RADICAND_SLACK:
            raise ContractError(f"correlation {p!r} exceeds 1; Pearson computation is broken")
        radicand = 0.0
    if variant is UdVariant.MS:
        return math.sqrt(2.0 * radicand)
    return math.sqrt(radicand / 2.0)


def ud(a: Sequence[float], b: Sequence[float], variant: Union[str, UdVariant] = UdVariant.AM) -> float:
    a, b = _check_pair(a, b)
    raw = _pearson_raw(a, b)
    if raw > 1.0 + RADICAND_SLACK or raw < -1.0 - RADICAND_SLACK:
        raise ContractError(f"correlation {raw!r} outside [-1, 1]")
    return ud_from_pearson(min(1.0, max(-1.0, raw)), variant)


def ud_matrix(panel: SeriesPanel, variant: Union[str, UdVariant] = UdVariant.AM) -> PairMatrix:
    """UD for every unordered pair; constant-series pairs are marked degenerate."""
    variant = UdVariant.parse(variant)
    if len(panel.entities) < 2:
        raise ContractError("panel needs at least 2 entities")
    results = []
    for u, v in combinations(panel.entities, 2):
        try:
            value = ud(panel.series(u), panel.series(v), variant)
        except ZeroVarianceError as exc:
            value = Degenerate(str(exc))
        results.append(PairResult(u, v, ud=value, ud_variant=variant.value))
    return PairMatrix(panel.entities, results)
