import json
import os

import pytest
from hypothesis import given, strategies as st

from twofib.dsl import DSLError, KINDS, SCHEMA_VERSION, dump, load, parse_document, serialize
from twofib.fixtures import arrow, fixture_documents, sigma2

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(ROOT, "fixtures")
DOCS = fixture_documents()


@pytest.mark.parametrize("name", sorted(DOCS))
def test_roundtrip_is_canonical(name):
    obj, proj = DOCS[name]
    text = serialize(obj, proj)
    doc = parse_document(text)
    assert serialize(doc) == text
    assert doc.kind == obj.kind


@pytest.mark.parametrize("name", sorted(DOCS))
def test_fixture_files_are_current(name):
    obj, proj = DOCS[name]
    with open(os.path.join(FIXTURES, f"{name}.fw")) as fh:
        assert fh.read() == serialize(obj, proj)


def test_values_survive():
    S = sigma2()
    doc = parse_document(serialize(S))
    assert doc.value == S
    c = DOCS["el_u"]
    doc = parse_document(serialize(*c))
    assert doc.value.lift1 == c[0].lift1 and doc.value.lift2 == c[0].lift2


def test_records_are_sorted_json():
    for line in serialize(DOCS["diagram_alpha"][0]).splitlines():
        rec = json.loads(line)
        assert rec["schema_version"] == SCHEMA_VERSION and rec["kind"] in KINDS
        assert line == json.dumps(rec, sort_keys=True, separators=(",", ":"))


def test_dump_and_load(tmp_path):
    p = tmp_path / "a.fw"
    dump(arrow(), str(p))
    assert load(str(p)).value == arrow()


def _arrow_text():
    return serialize(arrow()).strip()


def _diagnose(text):
    with pytest.raises(DSLError) as info:
        parse_document(text)
    e = info.value
    return e.code, e.line, e.col, e.token


def test_duplicate_cell_id_diagnostic():
    t = _arrow_text().replace('["u","0","1"]', '["u","0","1"],["u","1","1"]')
    code, line, col, tok = _diagnose(t)
    assert (code, line, tok) == ("duplicate", 1, "u")
    assert t[col - 1:].startswith('"u","1","1"]')


def test_duplicate_object_diagnostic():
    t = _arrow_text().replace('"objects":["0","1"]', '"objects":["0","1","0"]')
    code, line, col, tok = _diagnose(t)
    assert (code, tok) == ("duplicate", "0")
    assert t[col - 2:col + 3] == ',"0"]'


def test_dangling_cell_diagnostic():
    t = _arrow_text().replace('["u","0","1"]', '["u","0","7"]')
    code, line, col, tok = _diagnose(t)
    assert (code, tok) == ("dangling", "7")
    assert t[col - 1:col + 2] == '"7"'


def test_dangling_reference_on_later_line():
    lines = serialize(*DOCS["el_u"]).splitlines()
    code, line, col, tok = _diagnose("\n".join(lines[-1:]))
    assert code == "dangling" and line == 1
    # without the second record, the first record that names it is reported
    missing = json.loads(lines[1])["name"]
    code, line, col, tok = _diagnose("\n".join([lines[0]] + lines[2:]))
    first_user = next(i for i, l in enumerate(lines[2:]) if json.dumps(missing) in l)
    assert (code, line, tok) == ("dangling", first_user + 2, missing)


def test_duplicate_record_name():
    t = _arrow_text()
    code, line, col, tok = _diagnose(t + "\n" + t)
    assert (code, line, tok) == ("duplicate", 2, "2")


@pytest.mark.parametrize("text,token", [
    ("", None),
    ("{bad json", "b"),
    ('[1, 2]', None),
    ('{"kind":"two_category"}', None),
])
def test_syntax_errors(text, token):
    code, line, col, tok = _diagnose(text)
    assert code == "syntax" and line == 1 and tok == token


def test_wrong_schema_version_and_kind():
    t = _arrow_text()
    assert _diagnose(t.replace('"schema_version":"1"', '"schema_version":"2"'))[3] == "2"
    assert _diagnose(t.replace('"kind":"two_category"', '"kind":"tricategory"'))[3] == "tricategory"


def test_blank_lines_keep_numbering():
    t = _arrow_text()
    code, line, _, _ = _diagnose("\n\n" + t + "\n\n" + t)
    assert line == 5


@given(st.text(max_size=200))
def test_arbitrary_text_only_raises_dsl_errors(text):
    try:
        parse_document(text)
    except DSLError as e:
        assert e.line >= 1 and e.col >= 1


@given(st.data())
def test_damaged_documents_only_raise_dsl_errors(data):
    text = serialize(*DOCS["el_u"])
    i = data.draw(st.integers(0, len(text) - 1))
    j = data.draw(st.integers(i, min(len(text), i + 8)))
    junk = data.draw(st.text(alphabet='[]{}",:0123456789abu|', max_size=4))
    try:
        parse_document(text[:i] + junk + text[j:])
    except DSLError as e:
        assert e.code in ("syntax", "dangling", "duplicate")
