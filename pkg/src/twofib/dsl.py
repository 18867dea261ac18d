"""Line-oriented JSON interchange format (.fw files).

Every line is one record with ``schema_version``, ``kind`` and ``name``.
Records refer to earlier records by name; the last record is the document.
Tables are arrays of string tuples, e.g. comp1 rows are ["g", "f", "gf"].
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .core import Bicategory, TwoCategory
from .fib_strict import Cleavage, Projection
from .maps import (AdjointData, Homomorphism, IndexedTwoDiagram, Modification,
                   Transformation, Trihomomorphism, TwoFunctor)

SCHEMA_VERSION = "1"
KINDS = ("two_category", "bicategory", "two_functor", "homomorphism", "transformation",
         "modification", "indexed_diagram", "trihomomorphism", "projection", "cleavage")


class DSLError(ValueError):
    """A diagnostic with a 1-based line and column and the offending token."""

    def __init__(self, message, line=0, col=0, token=None, code="syntax"):
        self.message, self.line, self.col, self.token, self.code = message, line, col, token, code
        where = f"line {line}, column {col}: " if line else ""
        tok = f" (at {token!r})" if token is not None else ""
        super().__init__(f"{where}{code}: {message}{tok}")


@dataclass
class Document:
    kind: str
    value: object
    records: dict = field(default_factory=dict)   # name -> object
    raw: dict = field(default_factory=dict)       # name -> parsed json
    order: list = field(default_factory=list)

    @property
    def main(self):
        return self.raw[self.order[-1]]

    def ref(self, key):
        """The object a field of the main record points to."""
        return self.records[self.main[key]]


# ------------------------------------------------------------------ parsing

class _Line:
    def __init__(self, text, lineno):
        self.text, self.lineno = text, lineno

    def locate(self, token, key=None, row=None, nth=0):
        """1-based column of token inside key's value, within the nth copy of row."""
        start = 0
        if key is not None:
            m = re.search(re.escape(json.dumps(key)) + r"\s*:", self.text)
            start = m.end() if m else 0
        if row is not None:
            pat = re.compile(r"\[\s*" + r"\s*,\s*".join(re.escape(json.dumps(t)) for t in row)
                             + r"\s*\]")
            for _ in range(nth + 1):
                m = pat.search(self.text, start)
                if not m:
                    break
                start = m.start() + 1
            start -= 1 if m else 0
        i = self.text.find(json.dumps(token), max(start, 0))
        return i + 1 if i >= 0 else 1

    def fail(self, message, token=None, code="syntax", key=None, row=None):
        col = 1 if token is None else self.locate(token, key, row)
        raise DSLError(message, self.lineno, col, token, code)


def _rows(ln, rec, key, width, optional=False):
    rows = rec.get(key)
    if rows is None:
        if optional:
            return []
        ln.fail(f"missing field {key!r}", key)
    if not isinstance(rows, list):
        ln.fail(f"field {key!r} must be an array", key)
    for r in rows:
        if (not isinstance(r, list) or len(r) != width
                or not all(isinstance(t, str) for t in r)):
            ln.fail(f"rows of {key!r} must be arrays of {width} strings", key)
    return rows


def _table(ln, rows, key, nkey, universes=()):
    """Rows to a dict keyed by the first nkey columns, rejecting repeats."""
    out = {}
    for i, r in enumerate(rows):
        for tok, uni in zip(r, universes):
            if uni is not None and tok not in uni:
                ln.fail(f"{key}: undeclared cell", tok, code="dangling", key=key, row=r)
        k = tuple(r[:nkey]) if nkey > 1 else r[0]
        if k in out:
            nth = sum(1 for q in rows[:i] if q == r)
            again = ln.locate(r[0], key, r, nth)
            raise DSLError(f"{key}: repeated entry", ln.lineno, again, r[0], "duplicate")
        out[k] = r[nkey] if len(r) == nkey + 1 else tuple(r[nkey:])
    return out


def _names(ln, rec, key, universes=()):
    rows = rec.get(key)
    if key == "objects":
        if not isinstance(rows, list) or not all(isinstance(t, str) for t in rows):
            ln.fail("objects must be an array of strings", key)
        seen = set()
        for t in rows:
            if t in seen:
                first = ln.locate(t, key)
                raise DSLError("duplicate cell name", ln.lineno,
                               ln.text.find(json.dumps(t), first) + 1, t, "duplicate")
            seen.add(t)
        return rows
    rows = _rows(ln, rec, key, 3)
    return _table(ln, rows, key, 1, universes)


def _parse_category(ln, rec):
    objs = _names(ln, rec, "objects")
    O = set(objs)
    one = _names(ln, rec, "one_cells", (None, O, O))
    two = _names(ln, rec, "two_cells", (None, set(one), set(one)))
    A, B = set(one), set(two)
    kw = dict(
        id1=_table(ln, _rows(ln, rec, "id1", 2), "id1", 1, (O, A)),
        id2=_table(ln, _rows(ln, rec, "id2", 2), "id2", 1, (A, B)),
        comp1=_table(ln, _rows(ln, rec, "comp1", 3), "comp1", 2, (A, A, A)),
        vcomp=_table(ln, _rows(ln, rec, "vcomp", 3), "vcomp", 2, (B, B, B)),
        hcomp=_table(ln, _rows(ln, rec, "hcomp", 3), "hcomp", 2, (B, B, B)),
        name=rec["name"])
    if rec["kind"] == "two_category":
        return TwoCategory(objs, one, two, **kw)
    kw.update(assoc=_table(ln, _rows(ln, rec, "assoc", 4), "assoc", 3, (A, A, A, B)),
              lunit=_table(ln, _rows(ln, rec, "lunit", 2), "lunit", 1, (A, B)),
              runit=_table(ln, _rows(ln, rec, "runit", 2), "runit", 1, (A, B)))
    return Bicategory(objs, one, two, **kw)


def _get(ln, rec, key, records, kinds):
    name = rec.get(key)
    if not isinstance(name, str):
        ln.fail(f"missing reference {key!r}", key)
    if name not in records:
        ln.fail(f"{key} refers to an undeclared record", name, code="dangling")
    obj = records[name]
    if _kind(obj) not in kinds:
        ln.fail(f"{key} must be one of {', '.join(kinds)}", name)
    return obj


def _cats(B):
    return set(B.objects), set(B.one_cells), set(B.two_cells)


def _parse_functor(ln, rec, records):
    cats = ("two_category", "bicategory")
    D = _get(ln, rec, "dom", records, cats)
    C = _get(ln, rec, "cod", records, cats)
    (o0, o1, o2), (c0, c1, c2) = _cats(D), _cats(C)
    obj = _table(ln, _rows(ln, rec, "obj", 2), "obj", 1, (o0, c0))
    one = _table(ln, _rows(ln, rec, "one", 2), "one", 1, (o1, c1))
    two = _table(ln, _rows(ln, rec, "two", 2), "two", 1, (o2, c2))
    if rec["kind"] == "two_functor":
        return TwoFunctor(D, C, obj, one, two, name=rec["name"])
    pc = _table(ln, _rows(ln, rec, "phi_comp", 3), "phi_comp", 2, (o1, o1, c2))
    pi = _table(ln, _rows(ln, rec, "phi_id", 2), "phi_id", 1, (o0, c2))
    return Homomorphism(D, C, obj, one, two, pc, pi, name=rec["name"])


FUNCTORS = ("two_functor", "homomorphism")


def _parse_transformation(ln, rec, records):
    s = _get(ln, rec, "source", records, FUNCTORS)
    t = _get(ln, rec, "target", records, FUNCTORS)
    c0 = _table(ln, _rows(ln, rec, "comp0", 2), "comp0", 1, (set(s.dom.objects), set(t.cod.one_cells)))
    c1 = _table(ln, _rows(ln, rec, "comp1", 2), "comp1", 1, (set(s.dom.one_cells), set(t.cod.two_cells)))
    return Transformation(s, t, c0, c1, name=rec["name"])


def _parse_modification(ln, rec, records):
    s = _get(ln, rec, "source", records, ("transformation",))
    t = _get(ln, rec, "target", records, ("transformation",))
    comp = _table(ln, _rows(ln, rec, "comp", 2), "comp", 1,
                  (set(s.source.dom.objects), set(s.target.cod.two_cells)))
    return Modification(s, t, comp, name=rec["name"])


def _refs(ln, rec, key, records, kinds, width, universe):
    out = {}
    for r in _rows(ln, rec, key, width):
        if r[-1] not in records:
            ln.fail(f"{key} refers to an undeclared record", r[-1], code="dangling")
        if _kind(records[r[-1]]) not in kinds:
            ln.fail(f"{key} entries must be {', '.join(kinds)}", r[-1])
        for tok in r[:-1]:
            if tok not in universe:
                ln.fail(f"{key}: undeclared cell", tok, code="dangling")
        k = tuple(r[:-1]) if width > 2 else r[0]
        if k in out:
            ln.fail(f"{key}: repeated entry", r[0], code="duplicate")
        out[k] = records[r[-1]]
    return out


def _parse_diagram(ln, rec, records):
    B = _get(ln, rec, "base", records, ("two_category", "bicategory"))
    on_obj = _refs(ln, rec, "on_obj", records, ("two_category", "bicategory"), 2, set(B.objects))
    on_1 = _refs(ln, rec, "on_1", records, FUNCTORS, 2, set(B.one_cells))
    on_2 = _refs(ln, rec, "on_2", records, ("transformation",), 2, set(B.two_cells))
    return B, on_obj, on_1, on_2


def _comps(ln, val, key):
    if (not isinstance(val, list) or not all(isinstance(r, list) and len(r) == 2
                                              and all(isinstance(t, str) for t in r) for r in val)):
        ln.fail(f"{key}: components must be [object, cell] pairs", key)
    return {x: c for x, c in val}


def _families(ln, rec, key, arity):
    out = {}
    rows = rec.get(key)
    if not isinstance(rows, list):
        ln.fail(f"missing field {key!r}", key)
    for r in rows:
        if not isinstance(r, list) or len(r) != arity + 1:
            ln.fail(f"{key}: rows are {arity} keys then a component list", key)
        k = tuple(r[:arity]) if arity > 1 else r[0]
        if k in out:
            ln.fail(f"{key}: repeated entry", r[0], code="duplicate")
        out[k] = _comps(ln, r[arity], key)
    return out


def _adjoints(ln, rec, key, arity):
    out = {}
    rows = rec.get(key)
    if not isinstance(rows, list):
        ln.fail(f"missing field {key!r}", key)
    for r in rows:
        if not isinstance(r, list) or len(r) != arity + 1 or not isinstance(r[arity], dict):
            ln.fail(f"{key}: rows are {arity} keys then an object", key)
        d = r[arity]
        k = tuple(r[:arity]) if arity > 1 else r[0]
        out[k] = AdjointData(*(_comps(ln, d.get(f), key) for f in ("inverse", "unit", "counit")))
    return out


def _parse_trihom(ln, rec, records):
    B, on_obj, on_1, on_2 = _parse_diagram(ln, rec, records)
    chi = _refs(ln, rec, "chi", records, ("transformation",), 3, set(B.one_cells))
    iota = _refs(ln, rec, "iota", records, ("transformation",), 2, set(B.objects))
    return Trihomomorphism(B, on_obj, on_1, on_2, chi, _adjoints(ln, rec, "chi_adj", 2),
                           iota, _adjoints(ln, rec, "iota_adj", 1),
                           _families(ln, rec, "chi2", 2), _families(ln, rec, "iota2", 1),
                           _families(ln, rec, "omega", 3), _families(ln, rec, "gamma", 1),
                           _families(ln, rec, "delta", 1), name=rec["name"])


def _parse_cleavage(ln, rec, records):
    p = _get(ln, rec, "projection", records, ("projection",))
    E, B = p.E, p.B
    l1 = _table(ln, _rows(ln, rec, "lift1", 3), "lift1", 2,
                (set(B.one_cells), set(E.objects), set(E.one_cells)))
    l2 = _table(ln, _rows(ln, rec, "lift2", 3), "lift2", 2,
                (set(B.two_cells), set(E.one_cells), set(E.two_cells)))
    return Cleavage(l1, l2, name=rec["name"])


def _kind(obj):
    if isinstance(obj, Transformation):
        return "transformation"
    if isinstance(obj, Modification):
        return "modification"
    return getattr(obj, "kind", None)


def parse_document(text):
    records, raw, order = {}, {}, []
    for i, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        ln = _Line(line, i)
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise DSLError(e.msg, i, e.colno, line[e.pos:e.pos + 1] or None) from None
        if not isinstance(rec, dict):
            ln.fail("a record must be a JSON object")
        if rec.get("schema_version") != SCHEMA_VERSION:
            ln.fail(f"schema_version must be {SCHEMA_VERSION!r}", rec.get("schema_version"))
        kind, name = rec.get("kind"), rec.get("name")
        if kind not in KINDS:
            ln.fail("unknown kind", kind)
        if not isinstance(name, str):
            ln.fail("missing record name", "name")
        if name in records:
            ln.fail("duplicate record name", name, code="duplicate")
        if kind in ("two_category", "bicategory"):
            obj = _parse_category(ln, rec)
        elif kind in FUNCTORS:
            obj = _parse_functor(ln, rec, records)
        elif kind == "transformation":
            obj = _parse_transformation(ln, rec, records)
        elif kind == "modification":
            obj = _parse_modification(ln, rec, records)
        elif kind == "indexed_diagram":
            obj = IndexedTwoDiagram(*_parse_diagram(ln, rec, records), name=name)
        elif kind == "trihomomorphism":
            obj = _parse_trihom(ln, rec, records)
        elif kind == "projection":
            obj = Projection(_get(ln, rec, "functor", records, FUNCTORS), name=name)
        else:
            obj = _parse_cleavage(ln, rec, records)
        records[name], raw[name] = obj, rec
        order.append(name)
    if not order:
        raise DSLError("empty document", 1, 1)
    return Document(raw[order[-1]]["kind"], records[order[-1]], records, raw, order)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


# ------------------------------------------------------------------ serializing

class _Writer:
    def __init__(self):
        self.lines = []
        self.names = {}     # id(obj) -> record name
        self.used = set()
        self.keep = []      # keep objects alive so ids stay unique

    def name_for(self, obj, base):
        base = base or _kind(obj)
        n, k = base, 1
        while n in self.used:
            k += 1
            n = f"{base}#{k}"
        self.used.add(n)
        return n

    def emit(self, obj):
        if id(obj) in self.names:
            return self.names[id(obj)]
        rec = self._record(obj)
        # an equal record already written is reused
        for line_rec, n in self._written():
            if line_rec == rec:
                self.names[id(obj)] = n
                self.keep.append(obj)
                return n
        n = self.name_for(obj, getattr(obj, "name", ""))
        self.names[id(obj)] = n
        self.keep.append(obj)
        rec = dict(rec, name=n, schema_version=SCHEMA_VERSION)
        self.lines.append(rec)
        return n

    def _written(self):
        for r in self.lines:
            body = {k: v for k, v in r.items() if k not in ("name", "schema_version")}
            yield body, r["name"]

    def _refs(self, d):
        out = []
        for k in sorted(d):
            out.append([*(k if isinstance(k, tuple) else (k,)), self.emit(d[k])])
        return out

    def _record(self, obj):
        kind = _kind(obj)
        if kind in ("two_category", "bicategory"):
            return _category_record(obj)
        if kind in FUNCTORS:
            rec = {"kind": kind, "dom": self.emit(obj.dom), "cod": self.emit(obj.cod),
                   "obj": _pairs(obj.obj), "one": _pairs(obj.one), "two": _pairs(obj.two)}
            if kind == "homomorphism":
                rec["phi_comp"] = _triples(obj.phi_comp)
                rec["phi_id"] = _pairs(obj.phi_id)
            return rec
        if kind == "transformation":
            return {"kind": kind, "source": self.emit(obj.source), "target": self.emit(obj.target),
                    "comp0": _pairs(obj.comp0), "comp1": _pairs(obj.comp1)}
        if kind == "modification":
            return {"kind": kind, "source": self.emit(obj.source), "target": self.emit(obj.target),
                    "comp": _pairs(obj.comp)}
        if kind in ("indexed_diagram", "trihomomorphism"):
            rec = {"kind": kind, "base": self.emit(obj.base),
                   "on_obj": self._refs(obj.on_obj), "on_1": self._refs(obj.on_1),
                   "on_2": self._refs(obj.on_2)}
            if kind == "trihomomorphism":
                rec["chi"] = self._refs(obj.chi)
                rec["iota"] = self._refs(obj.iota)
                rec["chi_adj"] = sorted([*k, _adj(v)] for k, v in obj.chi_adj.items())
                rec["iota_adj"] = sorted([k, _adj(v)] for k, v in obj.iota_adj.items())
                for key in ("chi2", "iota2", "omega", "gamma", "delta"):
                    fam = getattr(obj, key)
                    rec[key] = sorted([*(k if isinstance(k, tuple) else (k,)), _pairs(v)]
                                      for k, v in fam.items())
            return rec
        if kind == "projection":
            return {"kind": kind, "functor": self.emit(obj.P)}
        raise TypeError(f"cannot serialize {obj!r}")


def _pairs(d):
    return sorted([k, v] for k, v in d.items())


def _triples(d):
    return sorted([*k, v] for k, v in d.items())


def _adj(a):
    return {"counit": _pairs(a.counit), "inverse": _pairs(a.inverse), "unit": _pairs(a.unit)}


def _category_record(B):
    rec = {"kind": B.kind, "objects": sorted(B.objects),
           "one_cells": sorted([f, s, t] for f, (s, t) in B.one_cells.items()),
           "two_cells": sorted([a, s, t] for a, (s, t) in B.two_cells.items()),
           "id1": _pairs(B.id1), "id2": _pairs(B.id2), "comp1": _triples(B.comp1),
           "vcomp": _triples(B.vcomp), "hcomp": _triples(B.hcomp)}
    if B.kind == "bicategory":
        rec["assoc"] = _triples(B.assoc)
        rec["lunit"] = _pairs(B.lunit)
        rec["runit"] = _pairs(B.runit)
    return rec


def serialize(obj, cleavage_of=None):
    """Canonical text for obj and everything it refers to.

    A Cleavage needs its projection: pass it as ``cleavage_of``.  A Document
    is re-serialized from its main value.
    """
    if isinstance(obj, Document):
        if obj.kind == "cleavage":
            return serialize(obj.value, obj.ref("projection"))
        return serialize(obj.value)
    w = _Writer()
    if isinstance(obj, Cleavage):
        if cleavage_of is None:
            raise TypeError("a cleavage is serialized together with its projection")
        p = w.emit(cleavage_of)
        rec = {"kind": "cleavage", "projection": p,
               "lift1": _triples(obj.lift1), "lift2": _triples(obj.lift2)}
        n = w.name_for(obj, obj.name or "cleavage")
        w.lines.append(dict(rec, name=n, schema_version=SCHEMA_VERSION))
    else:
        w.emit(obj)
    return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in w.lines)


def dump(obj, path, cleavage_of=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(obj, cleavage_of))
