"""Wiki-dictionary parsing, thesaurus graphs and translation-bridged relatedness."""

from importlib import resources

from .evaluation import EvaluationReport, WordPair, evaluate, load_collection, pearson, spearman
from .graph import (
    CapExceeded,
    DistanceOracle,
    NodeAbsent,
    PathResult,
    ThesaurusGraph,
    all_pairs_precompute,
    build_graph,
    connected_components,
    multi_source_distances,
    shortest_path,
)
from .parser import (
    Meaning,
    PageEntry,
    PartOfSpeech,
    RawPage,
    RelationType,
    parse_dump,
    parse_page,
    parse_relation_block,
    parse_translation_block,
    split_pages,
)
from .relatedness import MissingReason, RelatednessResult, linking_words, path_max_len, relate, to_score
from .store import Dictionary, StatsReport, StoreError, load, lookup, save, stats, translations

__version__ = "0.1.0"


def data_path(name: str):
    """Path of a bundled data file (``fixture_dump.txt``, ``fixture_pairs.tsv``)."""
    return resources.files(__name__).joinpath("data", name)
