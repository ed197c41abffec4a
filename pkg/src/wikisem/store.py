"""Relational TSV store for parsed dictionary entries.

A store directory holds five tables::

    page.tsv         page_id  title
    lang_pos.tsv     lang_pos_id  page_id  lang  pos
    meaning.tsv      meaning_id  lang_pos_id  ordinal  gloss  links
    relation.tsv     meaning_id  relation_type  target_headword
    translation.tsv  meaning_id  lang  target_headword

Fields escape tab, newline, carriage return and backslash as ``\\t``, ``\\n``,
``\\r``, ``\\\\``. The ``links`` column joins escaped link targets with ``|``
(a literal ``|`` inside a target is written ``\\|``).
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

from .parser import _POS_ORDER, _REL_ORDER, Meaning, PageEntry, PartOfSpeech, RelationType

PathLike = Union[str, os.PathLike]

TABLES = {
    "page.tsv": ("page_id", "title"),
    "lang_pos.tsv": ("lang_pos_id", "page_id", "lang", "pos"),
    "meaning.tsv": ("meaning_id", "lang_pos_id", "ordinal", "gloss", "links"),
    "relation.tsv": ("meaning_id", "relation_type", "target_headword"),
    "translation.tsv": ("meaning_id", "lang", "target_headword"),
}


class StoreError(Exception):
    """A store directory could not be read."""

    def __init__(self, path, line, message):
        where = f"{path}:{line}" if line else str(path)
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


def _entry_key(e: PageEntry):
    return (e.headword, e.language, _POS_ORDER[e.pos])


class Dictionary:
    """Parsed entries indexed by (headword, language), with a translation index.

    Entries are kept in canonical order (headword, language, part of speech;
    ties keep insertion order), which is also the order written by
    :func:`save`. Treat instances as immutable.
    """

    def __init__(self, entries: Iterable[PageEntry] = ()):
        self.entries = tuple(sorted(entries, key=_entry_key))
        self._by_key = defaultdict(list)
        # (src_lang, src_word, dst_lang) -> {dst_word}, filled in both directions
        self._translations = defaultdict(set)
        self._known = defaultdict(set)
        for e in self.entries:
            self._by_key[(e.headword, e.language)].append(e)
            self._known[e.language].add(e.headword)
            for m in e.meanings:
                for lang, words in m.translations.items():
                    for w in words:
                        self._translations[(e.language, e.headword, lang)].add(w)
                        self._translations[(lang, w, e.language)].add(e.headword)
                        self._known[lang].add(w)

    def __eq__(self, other):
        if not isinstance(other, Dictionary):
            return NotImplemented
        return self.entries == other.entries

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"Dictionary({len(self.entries)} entries)"

    def languages(self) -> list[str]:
        return sorted({e.language for e in self.entries})

    def knows(self, word: str, language: str) -> bool:
        """True when ``word`` has an entry in ``language`` or is the target of some translation into it."""
        return word in self._known.get(language, ())

    def lookup(self, headword: str, language: str) -> list[PageEntry]:
        return list(self._by_key.get((headword, language), ()))

    def translations(self, headword: str, source: str, target: str) -> set[str]:
        return set(self._translations.get((source, headword, target), ()))


def lookup(dictionary: Dictionary, headword: str, language: str) -> list[PageEntry]:
    return dictionary.lookup(headword, language)


def translations(dictionary: Dictionary, headword: str, source: str, target: str) -> set[str]:
    """Words in ``target`` language that translate ``headword``.

    Uses every meaning of every matching entry, in both stored directions:
    a ``target``-language entry listing ``headword`` under ``source`` counts
    the same as a ``source``-language entry listing the result under ``target``.
    """
    return dictionary.translations(headword, source, target)


@dataclass
class LanguageStats:
    entries: int = 0
    pos: dict[PartOfSpeech, int] = field(default_factory=lambda: dict.fromkeys(PartOfSpeech, 0))
    relations: dict[RelationType, int] = field(default_factory=lambda: dict.fromkeys(RelationType, 0))
    translations: int = 0

    @property
    def total_relations(self) -> int:
        return sum(self.relations.values())

    def __add__(self, other: "LanguageStats") -> "LanguageStats":
        return LanguageStats(
            self.entries + other.entries,
            {p: self.pos[p] + other.pos[p] for p in PartOfSpeech},
            {r: self.relations[r] + other.relations[r] for r in RelationType},
            self.translations + other.translations,
        )


@dataclass
class StatsReport:
    languages: dict[str, LanguageStats] = field(default_factory=dict)

    @property
    def total(self) -> LanguageStats:
        out = LanguageStats()
        for s in self.languages.values():
            out = out + s
        return out

    def __getitem__(self, language: str) -> LanguageStats:
        return self.languages.get(language, LanguageStats())

    def format_table(self) -> str:
        langs = sorted(self.languages)
        cols = ["total"] + langs
        stats = [self.total] + [self.languages[l] for l in langs]
        rows = [("entries", [s.entries for s in stats])]
        rows += [(p.value, [s.pos[p] for s in stats]) for p in PartOfSpeech]
        rows += [(r.value, [s.relations[r] for s in stats]) for r in RelationType]
        rows += [("relations", [s.total_relations for s in stats]), ("translations", [s.translations for s in stats])]
        lines = ["\t".join(["category"] + cols)]
        lines += ["\t".join([name] + [str(v) for v in vals]) for name, vals in rows]
        return "\n".join(lines)


def stats(dictionary: Dictionary) -> StatsReport:
    report = StatsReport()
    for e in dictionary.entries:
        s = report.languages.setdefault(e.language, LanguageStats())
        s.entries += 1
        s.pos[e.pos] += 1
        for m in e.meanings:
            for rt, words in m.relations.items():
                s.relations[rt] += len(words)
            s.translations += sum(len(ws) for ws in m.translations.values())
    report.languages = dict(sorted(report.languages.items()))
    return report


# --- escaping -----------------------------------------------------------------

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r", "|": "|"}


def escape(value: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in value)


def unescape(value: str) -> str:
    out = []
    it = iter(value)
    for c in it:
        if c == "\\":
            nxt = next(it, None)
            if nxt not in _UNESCAPES:
                raise ValueError(f"bad escape sequence \\{nxt or ''}")
            out.append(_UNESCAPES[nxt])
        else:
            out.append(c)
    return "".join(out)


def _encode_links(links: list[str]) -> str:
    return "|".join(escape(l).replace("|", "\\|") for l in links)


def _decode_links(value: str) -> list[str]:
    if not value:
        return []
    parts, cur = [], []
    it = iter(value)
    for c in it:
        if c == "\\":
            cur.append(c + (next(it, None) or ""))
        elif c == "|":
            parts.append(unescape("".join(cur)))
            cur = []
        else:
            cur.append(c)
    parts.append(unescape("".join(cur)))
    return parts


# --- save / load --------------------------------------------------------------


def save(dictionary: Dictionary, directory: PathLike) -> None:
    """Write the five tables to ``directory``, creating it if needed.

    Ids are assigned from the canonical entry order and rows are sorted by
    primary key, so equal dictionaries produce byte-identical files.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    rows = {name: [] for name in TABLES}
    page_ids: dict[str, int] = {}
    meaning_id = 0
    for lang_pos_id, e in enumerate(dictionary.entries, start=1):
        if e.headword not in page_ids:
            page_ids[e.headword] = len(page_ids) + 1
            rows["page.tsv"].append((page_ids[e.headword], e.headword))
        rows["lang_pos.tsv"].append((lang_pos_id, page_ids[e.headword], e.language, e.pos.value))
        for m in e.meanings:
            meaning_id += 1
            rows["meaning.tsv"].append((meaning_id, lang_pos_id, m.ordinal, m.gloss, _encode_links(m.links)))
            for rt, words in m.relations.items():
                rows["relation.tsv"] += [(meaning_id, rt.value, w) for w in words]
            for lang, words in m.translations.items():
                rows["translation.tsv"] += [(meaning_id, lang, w) for w in words]

    for name, header in TABLES.items():
        body = sorted(rows[name])
        path = directory / name
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("\t".join(header) + "\n")
                for row in body:
                    fh.write("\t".join(c if name == "meaning.tsv" and i == 4 else escape(str(c))
                                       for i, c in enumerate(row)) + "\n")
        except OSError as exc:
            raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc


def _read_table(directory: Path, name: str):
    path = directory / name
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise StoreError(path, None, "missing table") from None
    except UnicodeDecodeError as exc:
        raise StoreError(path, None, f"not UTF-8: {exc.reason}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    header = tuple(lines[0].split("\t")) if lines else ()
    if header != TABLES[name]:
        unknown = sorted(set(header) - set(TABLES[name]))
        what = f"unknown column(s) {unknown}" if unknown else f"expected header {TABLES[name]}"
        raise StoreError(path, 1, what)
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) != len(header):
            raise StoreError(path, lineno, f"expected {len(header)} fields, got {len(fields)}")
        yield path, lineno, fields


def _int(path, lineno, value):
    try:
        return int(value)
    except ValueError:
        raise StoreError(path, lineno, f"not an integer: {value!r}") from None


def load(directory: PathLike) -> Dictionary:
    """Read a store directory written by :func:`save`. Row order is irrelevant."""
    directory = Path(directory)
    if not directory.is_dir():
        raise StoreError(directory, None, "not a directory")

    def unique(table, path, lineno, key):
        if key in table:
            raise StoreError(path, lineno, f"duplicate id {key}")

    def text(path, lineno, value):
        try:
            return unescape(value)
        except ValueError as exc:
            raise StoreError(path, lineno, str(exc)) from None

    pages = {}
    for path, ln, (pid, title) in _read_table(directory, "page.tsv"):
        pid = _int(path, ln, pid)
        unique(pages, path, ln, pid)
        pages[pid] = text(path, ln, title)

    lang_pos = {}
    for path, ln, (lpid, pid, lang, pos) in _read_table(directory, "lang_pos.tsv"):
        lpid, pid = _int(path, ln, lpid), _int(path, ln, pid)
        unique(lang_pos, path, ln, lpid)
        if pid not in pages:
            raise StoreError(path, ln, f"page_id {pid} not in page.tsv")
        try:
            pos = PartOfSpeech(pos)
        except ValueError:
            raise StoreError(path, ln, f"unknown part of speech {pos!r}") from None
        lang_pos[lpid] = (pages[pid], text(path, ln, lang), pos)

    meanings = {}
    for path, ln, (mid, lpid, ordinal, gloss, links) in _read_table(directory, "meaning.tsv"):
        mid, lpid, ordinal = _int(path, ln, mid), _int(path, ln, lpid), _int(path, ln, ordinal)
        unique(meanings, path, ln, mid)
        if lpid not in lang_pos:
            raise StoreError(path, ln, f"lang_pos_id {lpid} not in lang_pos.tsv")
        try:
            link_list = _decode_links(links)
        except ValueError as exc:
            raise StoreError(path, ln, str(exc)) from None
        meanings[mid] = dict(lang_pos_id=lpid, ordinal=ordinal, gloss=text(path, ln, gloss),
                             links=link_list, relations=defaultdict(list), translations=defaultdict(list))

    for path, ln, (mid, rtype, target) in _read_table(directory, "relation.tsv"):
        mid = _int(path, ln, mid)
        if mid not in meanings:
            raise StoreError(path, ln, f"meaning_id {mid} not in meaning.tsv")
        try:
            rtype = RelationType(rtype)
        except ValueError:
            raise StoreError(path, ln, f"unknown relation type {rtype!r}") from None
        meanings[mid]["relations"][rtype].append(text(path, ln, target))

    for path, ln, (mid, lang, target) in _read_table(directory, "translation.tsv"):
        mid = _int(path, ln, mid)
        if mid not in meanings:
            raise StoreError(path, ln, f"meaning_id {mid} not in meaning.tsv")
        meanings[mid]["translations"][text(path, ln, lang)].append(text(path, ln, target))

    by_entry = defaultdict(list)
    for mid in sorted(meanings):
        m = meanings[mid]
        by_entry[m.pop("lang_pos_id")].append(m)

    entries = []
    for lpid in sorted(lang_pos):
        headword, lang, pos = lang_pos[lpid]
        ms = sorted(by_entry.get(lpid, []), key=lambda m: m["ordinal"])
        try:
            entries.append(PageEntry(headword, lang, pos, [Meaning(**m) for m in ms]))
        except ValueError as exc:
            raise StoreError(directory / "meaning.tsv", None, str(exc)) from None
    return Dictionary(entries)


__all__ = [
    "Dictionary", "LanguageStats", "StatsReport", "StoreError", "TABLES",
    "load", "lookup", "save", "stats", "translations", "escape", "unescape",
]
