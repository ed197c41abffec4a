"""
Saving and reloading the store
==============================

The dictionary is written as five TSV tables and read back unchanged.
"""

import tempfile
from pathlib import Path

from wikisem import data_path, load, parse_dump, save, translations
from wikisem.store import Dictionary

dictionary = Dictionary(parse_dump(data_path("fixture_dump.txt").read_bytes()).entries)

with tempfile.TemporaryDirectory() as tmp:
    save(dictionary, tmp)
    for name in sorted(p.name for p in Path(tmp).iterdir()):
        rows = (Path(tmp) / name).read_text(encoding="utf-8").splitlines()
        print(f"{name:16s} {len(rows) - 1:3d} rows   {rows[0]}")
    reloaded = load(tmp)

print("round trip equal:", reloaded == dictionary)

# Translations are stored ru -> en but can be queried in either direction.
print("journal ->", translations(dictionary, "journal", "en", "ru"))
print("cat     ->", translations(dictionary, "cat", "en", "ru"))
print("журнал  ->", translations(dictionary, "журнал", "ru", "en"))
