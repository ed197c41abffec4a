"""Parser for a small, strict subset of wiki-dictionary markup.

Dump container::

    %%PAGE <title>
    <wikitext until the next %%PAGE line or end of stream>

Page wikitext::

    = ru =                      language section (``= {{-ru-}} =`` also accepted)
    == noun ==                  part-of-speech section
    # gloss with [[links]]      numbered definitions, one per line
    === synonyms ===            relation block (six relation types)
    1. [[word]], [[word]]       leading ``N.`` selects the meaning, default 1
    === translations ===
    1. en: [[word]], [[word]]   per-line language label

Everything else is ignored. Unknown block headings and unusable translation
lines are skipped and reported as warnings.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import BinaryIO, Iterator, NamedTuple, Optional, Union


class RelationType(str, Enum):
    SYNONYM = "synonym"
    ANTONYM = "antonym"
    HYPERNYM = "hypernym"
    HYPONYM = "hyponym"
    HOLONYM = "holonym"
    MERONYM = "meronym"


class PartOfSpeech(str, Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"
    UNKNOWN = "unknown"


POS_ALIASES = {
    "noun": PartOfSpeech.NOUN,
    "существительное": PartOfSpeech.NOUN,
    "verb": PartOfSpeech.VERB,
    "глагол": PartOfSpeech.VERB,
    "adjective": PartOfSpeech.ADJECTIVE,
    "прилагательное": PartOfSpeech.ADJECTIVE,
    "adverb": PartOfSpeech.ADVERB,
    "наречие": PartOfSpeech.ADVERB,
}

RELATION_ALIASES = {
    "synonyms": RelationType.SYNONYM,
    "синонимы": RelationType.SYNONYM,
    "antonyms": RelationType.ANTONYM,
    "антонимы": RelationType.ANTONYM,
    "hypernyms": RelationType.HYPERNYM,
    "hyperonyms": RelationType.HYPERNYM,
    "гиперонимы": RelationType.HYPERNYM,
    "hyponyms": RelationType.HYPONYM,
    "гипонимы": RelationType.HYPONYM,
    "holonyms": RelationType.HOLONYM,
    "холонимы": RelationType.HOLONYM,
    "meronyms": RelationType.MERONYM,
    "меронимы": RelationType.MERONYM,
}

TRANSLATION_HEADINGS = {"translations", "перевод"}

LANG_CODE = re.compile(r"^[a-z]{2,3}(?:-[a-z]{2,8})?$")

_HEADING = re.compile(r"^(={1,6})\s*(.*?)\s*\1\s*$")
_ORDINAL = re.compile(r"^\s*(\d+)\s*[.)]\s*")
_LINK = re.compile(r"\[\[([^\[\]]*)\]\]")
_TEMPLATE = re.compile(r"\{\{[^{}]*\}\}")


def _dedup(words):
    seen = set()
    out = []
    for w in words:
        if w and w not in seen:
            seen.add(w)
            out.append(w)
    return out


@dataclass
class Meaning:
    """One numbered definition of an entry.

    Relation and translation lists are stored deduplicated and sorted, and
    empty lists are dropped, so two meanings carrying the same facts compare
    equal regardless of the order the facts were found in.
    """

    ordinal: int
    gloss: str = ""
    links: list[str] = field(default_factory=list)
    relations: dict[RelationType, list[str]] = field(default_factory=dict)
    translations: dict[str, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        if self.ordinal < 1:
            raise ValueError(f"meaning ordinal must be >= 1, got {self.ordinal}")
        self.links = list(self.links)
        self.relations = {
            RelationType(rt): sorted(set(ws))
            for rt, ws in sorted(self.relations.items(), key=lambda kv: _REL_ORDER[RelationType(kv[0])])
            if ws
        }
        self.translations = {lang: sorted(set(ws)) for lang, ws in sorted(self.translations.items()) if ws}


_REL_ORDER = {rt: i for i, rt in enumerate(RelationType)}
_POS_ORDER = {pos: i for i, pos in enumerate(PartOfSpeech)}


@dataclass
class PageEntry:
    headword: str
    language: str
    pos: PartOfSpeech
    meanings: list[Meaning] = field(default_factory=list)

    def __post_init__(self):
        self.pos = PartOfSpeech(self.pos)
        for i, m in enumerate(self.meanings, start=1):
            if m.ordinal != i:
                raise ValueError(f"{self.headword!r}: meaning #{i} carries ordinal {m.ordinal}")

    def meaning(self, ordinal: int) -> Meaning:
        return self.meanings[ordinal - 1]


@dataclass(frozen=True)
class RawPage:
    title: str
    text: str

    def __post_init__(self):
        if not self.title or "\n" in self.title or "\r" in self.title:
            raise ValueError(f"invalid page title {self.title!r}")


class ParsedPage(NamedTuple):
    entries: list[PageEntry]
    warnings: list[str]


class DumpFormatError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class DumpEncodingError(ValueError):
    def __init__(self, offset: int, reason: str):
        super().__init__(f"invalid UTF-8 at byte offset {offset}: {reason}")
        self.offset = offset


_DELIM = b"%%PAGE"


def split_pages(stream: Union[BinaryIO, bytes]) -> Iterator[RawPage]:
    """Yield the pages of a dump in input order.

    ``stream`` is a binary file object or a ``bytes`` value. Pages are
    yielded lazily; errors are raised when the offending line is reached.
    """
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)

    offset = 0
    title = None
    body: list[str] = []
    for raw in stream:
        if raw.startswith(_DELIM):
            rest = raw[len(_DELIM):].rstrip(b"\r\n")
            if not rest.startswith(b" ") or not rest.strip():
                raise DumpFormatError("page delimiter without a title", offset)
            if title is not None:
                yield RawPage(title, "".join(body))
            title = _decode(rest[1:], offset + len(_DELIM) + 1).strip()
            body = []
        else:
            text = _decode(raw, offset)
            if title is None:
                if text.strip():
                    raise DumpFormatError("content before the first page delimiter", offset)
            else:
                body.append(text)
        offset += len(raw)
    if title is not None:
        yield RawPage(title, "".join(body))


def _decode(raw: bytes, offset: int) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DumpEncodingError(offset + exc.start, exc.reason) from None


def strip_markup(text: str) -> str:
    """Drop templates and unwrap ``[[target|shown]]`` links to their shown text."""
    text = _TEMPLATE.sub("", text)

    def shown(m):
        inner = m.group(1)
        return inner.split("|", 1)[1] if "|" in inner else inner

    text = _LINK.sub(shown, text)
    return re.sub(r"\s+", " ", text).strip()


def link_targets(text: str) -> list[str]:
    targets = []
    for inner in _LINK.findall(_TEMPLATE.sub("", text)):
        target = inner.split("|", 1)[0].split("#", 1)[0].strip()
        if target:
            targets.append(target)
    return targets


def _line_words(text: str) -> list[str]:
    links = link_targets(text)
    if links:
        return _dedup(links)
    plain = _TEMPLATE.sub("", text)
    return _dedup(w.strip(" \t'\"") for w in re.split(r"[,;]", plain) if w.strip(" \t-—'\""))


def _lines(text: str) -> list[str]:
    # str.splitlines() also breaks on U+2028, U+0085 etc.
    return text.replace("\r\n", "\n").split("\n")


def _split_ordinal(line: str) -> tuple[int, str]:
    m = _ORDINAL.match(line)
    if m and int(m.group(1)) >= 1:
        return int(m.group(1)), line[m.end():]
    return 1, line.lstrip("#*: ")


def parse_relation_block(block: str, relation: RelationType) -> dict[int, dict[RelationType, list[str]]]:
    """Parse the body of one relation section.

    >>> parse_relation_block("1. [[издание]]", RelationType.HYPERNYM)
    {1: {<RelationType.HYPERNYM: 'hypernym'>: ['издание']}}
    """
    relation = RelationType(relation)
    out: dict[int, dict[RelationType, list[str]]] = {}
    for line in _lines(block):
        if not line.strip():
            continue
        ordinal, rest = _split_ordinal(line)
        words = _line_words(rest)
        if not words:
            continue
        bucket = out.setdefault(ordinal, {}).setdefault(relation, [])
        bucket[:] = _dedup(bucket + words)
    return out


def parse_translation_block(block: str, warnings: Optional[list] = None) -> dict[int, dict[str, list[str]]]:
    """Parse ``N. lang: [[w]], [[w]]`` lines.

    Lines whose label is not a lowercase language code, or that lack a label,
    are skipped; a message is appended to ``warnings`` when it is given.
    """
    out: dict[int, dict[str, list[str]]] = {}
    for lineno, line in enumerate(_lines(block), start=1):
        if not line.strip():
            continue
        ordinal, rest = _split_ordinal(line)
        label, sep, words_text = rest.partition(":")
        lang = _TEMPLATE.sub(lambda m: m.group(0)[2:-2], label).strip()
        if not sep or not LANG_CODE.match(lang):
            if warnings is not None:
                warnings.append(f"translation line {lineno}: unknown language label {label.strip()!r}")
            continue
        words = _line_words(words_text)
        if not words:
            continue
        bucket = out.setdefault(ordinal, {}).setdefault(lang, [])
        bucket[:] = _dedup(bucket + words)
    return out


def _language_of(heading: str) -> Optional[str]:
    code = heading.strip()
    m = re.fullmatch(r"\{\{-?([^{}|]*?)-?\}\}", code)
    if m:
        code = m.group(1)
    code = code.strip().lower()
    return code if LANG_CODE.match(code) else None


@dataclass
class _Section:
    pos: PartOfSpeech
    definitions: list[str] = field(default_factory=list)
    blocks: list[tuple[str, list[str]]] = field(default_factory=list)


def parse_page(page: RawPage) -> ParsedPage:
    """Extract one entry per (language section, part-of-speech section)."""
    warnings: list[str] = []
    sections: list[tuple[str, _Section]] = []
    language = None
    current: Optional[_Section] = None
    block: Optional[list[str]] = None

    for line in _lines(page.text):
        m = _HEADING.match(line)
        if m:
            level, name = len(m.group(1)), m.group(2)
            block = None
            if level == 1:
                language = _language_of(name)
                current = None
                if language is None:
                    warnings.append(f"{page.title}: unrecognised language heading {name!r}")
            elif level == 2:
                if language is None:
                    current = None
                    continue
                current = _Section(POS_ALIASES.get(name.strip().lower(), PartOfSpeech.UNKNOWN))
                sections.append((language, current))
            elif current is not None:
                key = name.strip().lower()
                if key in RELATION_ALIASES or key in TRANSLATION_HEADINGS:
                    block = []
                    current.blocks.append((key, block))
                else:
                    warnings.append(f"{page.title}: skipped block {name!r}")
            continue
        if block is not None:
            block.append(line)
        elif current is not None and line.startswith("#") and not line.startswith(("#:", "#*")):
            current.definitions.append(line[1:])

    entries = [_build_entry(page.title, lang, sec, warnings) for lang, sec in sections]
    return ParsedPage(entries, warnings)


def _build_entry(headword: str, language: str, sec: _Section, warnings: list) -> PageEntry:
    glosses = [(strip_markup(d), _dedup(link_targets(d))) for d in sec.definitions]
    relations: dict[int, dict[RelationType, list[str]]] = {}
    translations: dict[int, dict[str, list[str]]] = {}

    for key, lines in sec.blocks:
        text = "\n".join(lines)
        if key in TRANSLATION_HEADINGS:
            block_warnings: list[str] = []
            parsed = parse_translation_block(text, block_warnings)
            warnings.extend(f"{headword}: {w}" for w in block_warnings)
            target = translations
        else:
            parsed = parse_relation_block(text, RELATION_ALIASES[key])
            target = relations
        for ordinal, per_key in parsed.items():
            if ordinal > max(len(glosses), 1):
                warnings.append(f"{headword}: meaning {ordinal} not defined, attached to meaning 1")
                ordinal = 1
            slot = target.setdefault(ordinal, {})
            for k, words in per_key.items():
                slot[k] = _dedup(slot.get(k, []) + words)

    n = max(len(glosses), 1 if (relations or translations) else 0)
    meanings = []
    for i in range(1, n + 1):
        gloss, links = glosses[i - 1] if i <= len(glosses) else ("", [])
        meanings.append(Meaning(i, gloss, links, relations.get(i, {}), translations.get(i, {})))
    return PageEntry(headword, language, sec.pos, meanings)


def parse_dump(stream: Union[BinaryIO, bytes]) -> ParsedPage:
    """Split and parse a whole dump; entries keep page order."""
    entries: list[PageEntry] = []
    warnings: list[str] = []
    for page in split_pages(stream):
        parsed = parse_page(page)
        entries.extend(parsed.entries)
        warnings.extend(parsed.warnings)
    return ParsedPage(entries, warnings)
