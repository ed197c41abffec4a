"""Translation-bridged relatedness over a thesaurus graph.

Two source-language words are mapped to sets of graph-language words through
the dictionary's translations. Their distance is the longest of the shortest
paths between the two sets (pairs with no connecting path are left out), and
the score is ``1 / (1 + distance)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .graph import DistanceOracle, NodeAbsent, PathResult, ThesaurusGraph, multi_source_distances, shortest_path
from .store import Dictionary


class MissingReason(str, Enum):
    NONE = "none"
    NO_PAGE_A = "no_page_a"
    NO_PAGE_B = "no_page_b"
    NO_TRANSLATION_A = "no_translation_a"
    NO_TRANSLATION_B = "no_translation_b"
    SETS_NOT_IN_GRAPH = "sets_not_in_graph"
    UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class RelatednessResult:
    word_a: str
    word_b: str
    set_a: tuple = ()
    set_b: tuple = ()
    distance: float = math.inf
    score: Optional[float] = None
    missing_reason: MissingReason = MissingReason.NONE
    linking_paths: Optional[tuple] = None

    @property
    def missing(self) -> bool:
        return self.missing_reason is not MissingReason.NONE

    def to_record(self) -> str:
        """``key=value`` lines; sets are comma-joined, a missing score prints as ``missing``."""
        lines = [
            f"word_a={self.word_a}",
            f"word_b={self.word_b}",
            f"set_a={','.join(self.set_a)}",
            f"set_b={','.join(self.set_b)}",
            f"distance={format_number(self.distance)}",
            f"score={'missing' if self.score is None else format_number(self.score)}",
            f"missing_reason={self.missing_reason.value}",
        ]
        return "\n".join(lines) + "\n"


def format_number(x: float) -> str:
    if math.isinf(x):
        return "inf"
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def format_path(path: PathResult) -> str:
    return " -> ".join(path.nodes)


def to_score(distance: float) -> Optional[float]:
    if math.isinf(distance):
        return None
    if distance < 0 or math.isnan(distance):
        raise ValueError(f"distance must be nonnegative, got {distance}")
    return 1.0 / (1.0 + distance)


def _distances_from(graph, oracle, u):
    if oracle is not None:
        return oracle.distances_from(u)
    return multi_source_distances(graph, [u])


def path_max_len(graph: ThesaurusGraph, set_a: Iterable[str], set_b: Iterable[str],
                 oracle: Optional[DistanceOracle] = None) -> float:
    """Longest finite shortest-path length over ``set_a`` x ``set_b``.

    Returns ``inf`` only when no pair is connected. Both sets must be
    nonempty and contain graph nodes only.
    """
    set_a, set_b = sorted(set(set_a)), sorted(set(set_b))
    if not set_a or not set_b:
        raise ValueError("both vertex sets must be nonempty")
    for n in set_a + set_b:
        if n not in graph.nodes:
            raise NodeAbsent(n)
    # Search from the smaller set; the choice depends only on the sets, so
    # swapping the arguments runs the identical computation.
    if (len(set_b), set_b) < (len(set_a), set_a):
        set_a, set_b = set_b, set_a
    best = -math.inf
    for u in set_a:
        dist = _distances_from(graph, oracle, u)
        for v in set_b:
            d = dist.get(v)
            if d is not None and d > best:
                best = d
    return best if best > -math.inf else math.inf


def linking_words(graph: ThesaurusGraph, set_a: Iterable[str], set_b: Iterable[str]) -> list[PathResult]:
    paths = []
    for u in sorted(set(set_a)):
        for v in sorted(set(set_b)):
            p = shortest_path(graph, u, v)
            if p is not None:
                paths.append(p)
    return paths


def _bridge(dictionary: Dictionary, word: str, source: str, target: str) -> set[str]:
    if source == target:
        return {word}
    return dictionary.translations(word, source, target)


def relate(dictionary: Dictionary, graph: ThesaurusGraph, word_a: str, word_b: str,
           source_language: str, graph_language: Optional[str] = None, *,
           oracle: Optional[DistanceOracle] = None, with_paths: bool = False) -> RelatednessResult:
    """Relatedness of two source-language words through the graph language.

    A word "has a page" when the dictionary knows it in the source language,
    either as a headword or as a translation of some entry. Missing data is
    reported through ``missing_reason``; checks run in the order page,
    translation, graph membership, reachability, word A before word B.
    """
    graph_language = graph.language if graph_language is None else graph_language
    if graph_language != graph.language:
        raise ValueError(f"graph is over {graph.language!r}, not {graph_language!r}")

    def missing(reason, set_a=(), set_b=()):
        return RelatednessResult(word_a, word_b, tuple(sorted(set_a)), tuple(sorted(set_b)),
                                 missing_reason=reason)

    same = source_language == graph_language
    if not (same or dictionary.knows(word_a, source_language)):
        return missing(MissingReason.NO_PAGE_A)
    if not (same or dictionary.knows(word_b, source_language)):
        return missing(MissingReason.NO_PAGE_B)

    set_a = _bridge(dictionary, word_a, source_language, graph_language)
    set_b = _bridge(dictionary, word_b, source_language, graph_language)
    if not set_a:
        return missing(MissingReason.NO_TRANSLATION_A, set_a, set_b)
    if not set_b:
        return missing(MissingReason.NO_TRANSLATION_B, set_a, set_b)

    marked_a = {w for w in set_a if w in graph.nodes}
    marked_b = {w for w in set_b if w in graph.nodes}
    if not marked_a or not marked_b:
        return missing(MissingReason.SETS_NOT_IN_GRAPH, set_a, set_b)

    distance = path_max_len(graph, marked_a, marked_b, oracle)
    if math.isinf(distance):
        return missing(MissingReason.UNREACHABLE, set_a, set_b)

    paths = tuple(linking_words(graph, marked_a, marked_b)) if with_paths else None
    return RelatednessResult(word_a, word_b, tuple(sorted(set_a)), tuple(sorted(set_b)),
                             distance, to_score(distance), MissingReason.NONE, paths)
