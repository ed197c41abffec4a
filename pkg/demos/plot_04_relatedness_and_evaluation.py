"""
Relatedness through translations, and evaluation
================================================

English words are mapped onto Russian words through the dictionary's
translations. The distance between the two Russian sets is the longest of
their pairwise shortest paths. A small planted word-pair collection is then
scored against made-up human judgements.
"""

from wikisem import build_graph, data_path, evaluate, load_collection, parse_dump, relate
from wikisem.relatedness import format_path
from wikisem.store import Dictionary

dictionary = Dictionary(parse_dump(data_path("fixture_dump.txt").read_bytes()).entries)
graph = build_graph(dictionary, "ru")

r = relate(dictionary, graph, "journal", "diary", "en", "ru", with_paths=True)
print(r.to_record())
for p in r.linking_paths:
    print(format_path(p))

r = relate(dictionary, graph, "cat", "dog", "en", "ru", with_paths=True)
print(r.set_a, r.set_b, "distance", r.distance)
for p in r.linking_paths:
    print("  ", format_path(p))

collection = load_collection(data_path("fixture_pairs.tsv"))
report = evaluate(collection, lambda a, b: relate(dictionary, graph, a, b, "en", "ru"))
print(f"{report.n_scored}/{report.n_total} scored, spearman={report.spearman:.4f}, pearson={report.pearson:.4f}")
print("missing:", report.missing_breakdown)
for pair, res in report.per_pair:
    shown = res.missing_reason.value if res.missing else f"d={res.distance:g}"
    print(f"  {pair.word_a:>10s} {pair.word_b:<10s} {pair.human_score:5.2f}  {shown}")
