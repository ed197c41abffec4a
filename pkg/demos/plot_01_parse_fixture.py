"""
Parsing a page dump
===================

Split the bundled fixture dump into pages, parse each page into entries and
print the per-language counts.
"""

from wikisem import data_path, parse_dump, stats
from wikisem.store import Dictionary

raw = data_path("fixture_dump.txt").read_bytes()
parsed = parse_dump(raw)
print(len(parsed.entries), "entries,", len(parsed.warnings), "warnings")
for w in parsed.warnings:
    print("  warning:", w)

# The page "журнал" has two numbered meanings. The hypernym sits on
# meaning 1 and the synonym on meaning 2.
zhurnal = next(e for e in parsed.entries if e.headword == "журнал" and e.language == "ru")
for m in zhurnal.meanings:
    print(m.ordinal, m.gloss)
    print("   links:", m.links)
    print("   relations:", {rt.value: ws for rt, ws in m.relations.items()})
    print("   translations:", m.translations)

dictionary = Dictionary(parsed.entries)
print()
print(stats(dictionary).format_table())
