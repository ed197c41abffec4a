"""Scoring word-pair collections against human judgements."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.stats import rankdata

from .relatedness import MissingReason, RelatednessResult


class CollectionError(ValueError):
    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True)
class WordPair:
    word_a: str
    word_b: str
    human_score: float

    def __post_init__(self):
        if not (0.0 <= self.human_score <= 10.0):
            raise ValueError(f"human score {self.human_score} outside [0, 10]")


def load_collection(path: Union[str, os.PathLike]) -> list[WordPair]:
    """Read ``word_a<TAB>word_b<TAB>score`` lines after a header line.

    Blank lines are ignored.
    """
    pairs = []
    with open(path, encoding="utf-8", newline="") as fh:
        lines = fh.read().split("\n")
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise CollectionError(path, lineno, f"expected 3 tab-separated fields, got {len(fields)}")
        a, b, raw = (f.strip() for f in fields)
        try:
            score = float(raw)
        except ValueError:
            raise CollectionError(path, lineno, f"score {raw!r} is not a number") from None
        if not math.isfinite(score) or not 0.0 <= score <= 10.0:
            raise CollectionError(path, lineno, f"score {raw} outside [0, 10]")
        if not a or not b:
            raise CollectionError(path, lineno, "empty word")
        pairs.append(WordPair(a, b, score))
    return pairs


def _as_arrays(xs, ys):
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.ndim != 1 or x.shape != y.shape or len(x) < 3:
        return None
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        return None
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return None
    return x, y


def pearson(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Product-moment correlation; None for fewer than 3 points, unequal lengths or a constant input."""
    arrays = _as_arrays(xs, ys)
    if arrays is None:
        return None
    x, y = arrays
    xc = x - x.mean()
    yc = y - y.mean()
    r = float(np.dot(xc, yc) / math.sqrt(float(np.dot(xc, xc)) * float(np.dot(yc, yc))))
    return max(-1.0, min(1.0, r))


def spearman(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Rank correlation with tied values given their average rank."""
    arrays = _as_arrays(xs, ys)
    if arrays is None:
        return None
    x, y = arrays
    return pearson(rankdata(x, method="average"), rankdata(y, method="average"))


@dataclass
class EvaluationReport:
    n_total: int
    n_scored: int
    n_missing: int
    missing_breakdown: dict[str, int]
    spearman: Optional[float]
    pearson: Optional[float]
    per_pair: list[tuple[WordPair, RelatednessResult]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n_total": self.n_total,
            "n_scored": self.n_scored,
            "n_missing": self.n_missing,
            "missing_breakdown": dict(self.missing_breakdown),
            "spearman": self.spearman,
            "pearson": self.pearson,
            "per_pair": [_pair_record(p, r) for p, r in self.per_pair],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


def _pair_record(pair: WordPair, result: RelatednessResult) -> dict:
    return {
        "word_a": pair.word_a,
        "word_b": pair.word_b,
        "human_score": pair.human_score,
        "distance": None if math.isinf(result.distance) else result.distance,
        "score": result.score,
        "missing_reason": result.missing_reason.value,
        "set_a": list(result.set_a),
        "set_b": list(result.set_b),
    }


RelateFn = Callable[[str, str], RelatednessResult]


def evaluate(collection: Sequence[WordPair], relate: RelateFn, *, workers: int = 1) -> EvaluationReport:
    """Score every pair and correlate the results with the human scores.

    Spearman is computed against the negated distance and Pearson against the
    bounded score, both over the scored pairs only. ``workers > 1`` scores
    pairs on a thread pool; results keep collection order either way.
    """
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: relate(p.word_a, p.word_b), collection))
    else:
        results = [relate(p.word_a, p.word_b) for p in collection]

    breakdown = {r.value: 0 for r in MissingReason if r is not MissingReason.NONE}
    human, neg_dist, scores = [], [], []
    for pair, res in zip(collection, results):
        if res.missing:
            breakdown[res.missing_reason.value] += 1
        else:
            human.append(pair.human_score)
            neg_dist.append(-res.distance)
            scores.append(res.score)

    n_missing = sum(breakdown.values())
    return EvaluationReport(
        n_total=len(collection),
        n_scored=len(human),
        n_missing=n_missing,
        missing_breakdown=breakdown,
        spearman=spearman(human, neg_dist),
        pearson=pearson(human, scores),
        per_pair=list(zip(collection, results)),
    )
