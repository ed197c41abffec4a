"""
Shortest paths in the thesaurus graph
=====================================

Build the Russian graph from the fixture and look at a few paths, the
component structure, and the all-pairs distance table.
"""

import numpy as np

from wikisem import all_pairs_precompute, build_graph, connected_components, data_path, parse_dump, shortest_path
from wikisem.store import Dictionary

dictionary = Dictionary(parse_dump(data_path("fixture_dump.txt").read_bytes()).entries)
graph = build_graph(dictionary, "ru")
print(graph)

for a, b in [("журнал", "газета"), ("дневник", "страница"), ("тигр", "собака"), ("тигр", "газета")]:
    p = shortest_path(graph, a, b)
    print(f"{a} .. {b}:", "unreachable" if p is None else f"{p.length:g}  " + " -> ".join(p.nodes))

components = connected_components(graph)
sizes = np.bincount(list(components.values()))
print("component sizes:", sorted(sizes.tolist(), reverse=True))

oracle = all_pairs_precompute(graph)
words = ["журнал", "дневник", "издание", "газета", "книга"]
table = np.array([[oracle(u, v) for v in words] for u in words])
print(words)
print(table)

# Non-uniform weights: make antonym links expensive.
heavy = build_graph(dictionary, "ru", {"antonym": 3.0})
print(shortest_path(heavy, "медленный", "скорый"))
