import random

import pytest
from hypothesis import given, strategies as st

from oracles import FIXTURE_MANIFEST
from wikisem.parser import (
    DumpEncodingError,
    DumpFormatError,
    PageEntry,
    PartOfSpeech,
    RawPage,
    RelationType,
    parse_page,
    parse_relation_block,
    parse_translation_block,
    split_pages,
    strip_markup,
)

ZHURNAL = """\
= ru =
== noun ==
# периодическое печатное [[издание]]
# [[тетрадь]] для записей
=== hypernyms ===
1. [[издание]]
=== synonyms ===
2. [[дневник]]
=== translations ===
1. en: [[journal]]
"""


def test_split_empty_stream():
    assert list(split_pages(b"")) == []


def test_split_single_page():
    pages = list(split_pages("%%PAGE журнал\n= ru =\n".encode()))
    assert pages == [RawPage("журнал", "= ru =\n")]


def test_split_two_pages_keeps_order_and_text():
    dump = "%%PAGE b\nline one\n\n%%PAGE a\nline two".encode()
    pages = list(split_pages(dump))
    assert [p.title for p in pages] == ["b", "a"]
    assert pages[0].text == "line one\n\n"
    assert pages[1].text == "line two"


def test_split_accepts_file_objects(tmp_path):
    path = tmp_path / "dump.txt"
    path.write_bytes("%%PAGE x\nabc\n".encode())
    with open(path, "rb") as fh:
        assert [p.title for p in split_pages(fh)] == ["x"]


def test_split_rejects_content_before_first_page():
    with pytest.raises(DumpFormatError) as exc:
        list(split_pages(b"\nstray\n%%PAGE x\n"))
    assert exc.value.offset == 1


@pytest.mark.parametrize("line", [b"%%PAGE\n", b"%%PAGE   \n", b"%%PAGEx\n"])
def test_split_rejects_delimiter_without_title(line):
    with pytest.raises(DumpFormatError) as exc:
        list(split_pages(b"%%PAGE ok\nbody\n" + line))
    assert exc.value.offset == len(b"%%PAGE ok\nbody\n")


def test_split_reports_invalid_utf8_offset():
    with pytest.raises(DumpEncodingError) as exc:
        list(split_pages(b"%%PAGE x\nab\xffcd\n"))
    assert exc.value.offset == len(b"%%PAGE x\nab")


def test_parse_zhurnal_page():
    parsed = parse_page(RawPage("журнал", ZHURNAL))
    assert parsed.warnings == []
    [entry] = parsed.entries
    assert (entry.headword, entry.language, entry.pos) == ("журнал", "ru", PartOfSpeech.NOUN)
    assert [m.ordinal for m in entry.meanings] == [1, 2]
    assert entry.meaning(1).relations == {RelationType.HYPERNYM: ["издание"]}
    assert entry.meaning(2).relations == {RelationType.SYNONYM: ["дневник"]}
    assert entry.meaning(1).translations == {"en": ["journal"]}
    assert entry.meaning(2).translations == {}


def test_gloss_strips_brackets_and_records_links():
    text = "= ru =\n== noun ==\n# самец [[кошка|кошки]], {{зоол.}} [[животное]]!\n"
    [entry] = parse_page(RawPage("кот", text)).entries
    m = entry.meaning(1)
    assert m.gloss == "самец кошки, животное!"
    assert m.links == ["кошка", "животное"]


def test_empty_page_gives_no_entries():
    assert parse_page(RawPage("x", "")).entries == []


def test_unknown_pos_heading_is_kept():
    [entry] = parse_page(RawPage("и т. д.", "= ru =\n== аббревиатура ==\n# и так далее\n")).entries
    assert entry.pos is PartOfSpeech.UNKNOWN


def test_russian_and_template_headings():
    text = "= {{-ru-}} =\n== глагол ==\n# бежать\n=== синонимы ===\n# [[мчаться]]\n"
    [entry] = parse_page(RawPage("бежать", text)).entries
    assert entry.language == "ru" and entry.pos is PartOfSpeech.VERB
    assert entry.meaning(1).relations == {RelationType.SYNONYM: ["мчаться"]}


def test_unknown_block_is_skipped_with_warning():
    text = "= ru =\n== noun ==\n# x\n=== этимология ===\n1. [[nope]]\n=== synonyms ===\n1. [[y]]\n"
    parsed = parse_page(RawPage("x", text))
    assert len(parsed.warnings) == 1
    assert parsed.entries[0].meaning(1).relations == {RelationType.SYNONYM: ["y"]}


def test_out_of_range_ordinal_attaches_to_first_meaning():
    text = "= ru =\n== noun ==\n# one\n=== antonyms ===\n5. [[z]]\n"
    parsed = parse_page(RawPage("x", text))
    assert parsed.entries[0].meaning(1).relations == {RelationType.ANTONYM: ["z"]}
    assert len(parsed.warnings) == 1


def test_relations_without_definitions_create_meaning_one():
    [entry] = parse_page(RawPage("x", "= ru =\n== noun ==\n=== synonyms ===\n[[y]]\n")).entries
    assert len(entry.meanings) == 1
    assert entry.meaning(1).gloss == ""


def test_two_languages_and_two_pos():
    text = "= ru =\n== noun ==\n# a\n== verb ==\n# b\n= uk =\n== noun ==\n# c\n"
    entries = parse_page(RawPage("стекло", text)).entries
    assert [(e.language, e.pos.value) for e in entries] == [("ru", "noun"), ("ru", "verb"), ("uk", "noun")]


def test_relation_block_numbered():
    assert parse_relation_block("1. [[издание]]", RelationType.HYPERNYM) == {1: {RelationType.HYPERNYM: ["издание"]}}


def test_relation_block_empty():
    assert parse_relation_block("", RelationType.SYNONYM) == {}


def test_relation_block_unnumbered_defaults_to_one():
    assert parse_relation_block("[[дневник]]", RelationType.SYNONYM) == {1: {RelationType.SYNONYM: ["дневник"]}}


def test_relation_block_strips_markup_and_plain_words():
    block = "2. [[a#ru|A]], {{помета}} [[b]]\n3) c, d; e\n4. -\n"
    assert parse_relation_block(block, RelationType.MERONYM) == {
        2: {RelationType.MERONYM: ["a", "b"]},
        3: {RelationType.MERONYM: ["c", "d", "e"]},
    }


def test_translation_block():
    assert parse_translation_block("1. en: [[journal]], [[magazine]]") == {1: {"en": ["journal", "magazine"]}}


def test_translation_block_unknown_label_warns():
    warnings = []
    out = parse_translation_block("1. Klingon: [[x]]\n1. de: [[Zeitung]]\nno label here", warnings)
    assert out == {1: {"de": ["Zeitung"]}}
    assert len(warnings) == 2


def test_translation_block_dedups():
    assert parse_translation_block("1. en: [[diary]], [[diary]]") == {1: {"en": ["diary"]}}


def test_translation_block_template_label():
    assert parse_translation_block("2. {{en}}: [[clause]]") == {2: {"en": ["clause"]}}


def test_strip_markup():
    assert strip_markup("a [[b|c]] {{t}} [[d]].") == "a c d."


def test_meaning_ordinals_are_validated():
    from wikisem.parser import Meaning
    with pytest.raises(ValueError):
        PageEntry("x", "ru", PartOfSpeech.NOUN, [Meaning(2)])
    with pytest.raises(ValueError):
        Meaning(0)


def test_fixture_counts_match_manifest(fixture_parsed, fixture_dump_bytes):
    assert len(list(split_pages(fixture_dump_bytes))) == FIXTURE_MANIFEST["pages"]
    assert len(fixture_parsed.entries) == FIXTURE_MANIFEST["entries"]
    assert len(fixture_parsed.warnings) == FIXTURE_MANIFEST["warnings"]


def test_fixture_numbering_invariant(fixture_parsed):
    for e in fixture_parsed.entries:
        assert [m.ordinal for m in e.meanings] == list(range(1, len(e.meanings) + 1))
        for m in e.meanings:
            for words in list(m.relations.values()) + list(m.translations.values()):
                assert len(words) == len(set(words))


def test_parse_is_deterministic_and_order_free(fixture_dump_bytes):
    pages = list(split_pages(fixture_dump_bytes))
    baseline = [parse_page(p) for p in pages]
    assert baseline == [parse_page(p) for p in pages]
    shuffled = pages[:]
    random.Random(7).shuffle(shuffled)
    key = lambda e: repr(e)
    flat = lambda results: sorted((e for r in results for e in r.entries), key=key)
    assert flat(baseline) == flat(parse_page(p) for p in shuffled)


_line = st.text(st.characters(blacklist_categories=("Cs",)), max_size=40)


@given(st.lists(_line, max_size=12))
def test_parse_never_raises_and_keeps_numbering(lines):
    parsed = parse_page(RawPage("t", "\n".join(lines)))
    for e in parsed.entries:
        ordinals = {m.ordinal for m in e.meanings}
        assert ordinals == set(range(1, len(e.meanings) + 1))
        for m in e.meanings:
            assert m.ordinal in ordinals
