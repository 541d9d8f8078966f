"""Relevance scoring and feature selection over a membership matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidParameterError
from .fuzzy import CategorySet, MembershipMatrix

TOP_K = "top_k"
THRESHOLD = "threshold"


@dataclass(frozen=True)
class RelevanceScores:
    """Per-feature scores and their ranking.

    ``ranking`` lists feature indices by descending score; equal scores keep
    ascending index order.
    """

    scores: np.ndarray
    ranking: np.ndarray

    def __len__(self):
        return len(self.scores)


@dataclass(frozen=True)
class Selection:
    mode: str
    indices: tuple[int, ...]
    k: int | None = None
    tau: float | None = None


def rank(scores) -> np.ndarray:
    scores = np.asarray(scores, dtype=np.float64)
    return np.argsort(-scores, kind="stable")


def relevance_scores(matrix: MembershipMatrix, cats: CategorySet) -> RelevanceScores:
    """R_i = sum_j w_j * u_ij, accumulated column by column.

    Column-wise accumulation keeps the summation order identical for every
    row, so identical rows always get bit-identical scores.
    """
    values = matrix.values if isinstance(matrix, MembershipMatrix) else np.asarray(matrix, dtype=np.float64)
    if values.ndim != 2 or values.shape[1] != len(cats):
        raise DimensionError(
            f"matrix has {values.shape[-1] if values.ndim else 0} columns, "
            f"expected {len(cats)}"
        )
    scores = np.zeros(values.shape[0], dtype=np.float64)
    for j, cat in enumerate(cats):
        scores += cat.weight * values[:, j]
    scores.setflags(write=False)
    ranking = rank(scores)
    ranking.setflags(write=False)
    return RelevanceScores(scores, ranking)


def select_top_k(scores: RelevanceScores, k: int) -> Selection:
    """Keep the k best-ranked features; k larger than n selects everything."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidParameterError(f"k must be a positive integer, got {k!r}")
    chosen = sorted(int(i) for i in scores.ranking[:k])
    return Selection(TOP_K, tuple(chosen), k=int(k))


def select_by_threshold(scores: RelevanceScores, tau: float) -> Selection:
    tau = float(tau)
    if not math.isfinite(tau):
        raise InvalidParameterError(f"tau must be finite, got {tau!r}")
    chosen = np.flatnonzero(np.asarray(scores.scores) >= tau)
    return Selection(THRESHOLD, tuple(int(i) for i in chosen), tau=tau)
