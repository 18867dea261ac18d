"""Finite 2-categories and bicategories given by composition tables.

Cells are plain strings.  A 1-cell table maps a name to ``(src, tgt)``
objects, a 2-cell table maps a name to ``(src, tgt)`` 1-cells.  Composition
is written right to left: ``comp1[(g, f)]`` is ``g.f`` with ``f`` applied
first, ``vcomp[(b, a)]`` is ``b.a`` with ``a`` first, and ``hcomp[(b, a)]``
is ``b*a`` where ``a`` sits on the left of the pasting.

Coherence directions are fixed once:

    assoc[(h, g, f)] : (h.g).f => h.(g.f)
    lunit[f]         : 1.f => f
    runit[f]         : f.1 => f
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

DEFAULT_LIMIT = 100


def _run_chunk(fn, chunk):
    return [fn(x) for x in chunk]


def pmap(fn, items, workers=None):
    """Map fn over items, optionally across processes; order is preserved.

    fn must be picklable (a module-level function or a partial of one).
    """
    items = list(items)
    if not workers or workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor
    from functools import partial
    n = min(workers, len(items))
    chunks = [items[i::n] for i in range(n)]
    with ProcessPoolExecutor(max_workers=n) as ex:
        parts = list(ex.map(partial(_run_chunk, fn), chunks))
    out = [None] * len(items)
    for i, part in enumerate(parts):
        out[i::n] = part
    return out


def tup(*parts):
    """Canonical name for a constructed cell."""
    return "(" + "|".join(parts) + ")"


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    malformed: bool = False

    def as_dict(self):
        d = {"law": self.law, "witness": list(self.witness)}
        if self.malformed:
            d["malformed"] = True
        return d


class LimitReached(Exception):
    pass


class Collector:
    """Accumulates violations in scan order and stops at the limit."""

    def __init__(self, limit=DEFAULT_LIMIT):
        self.limit = limit
        self.items = []
        self.truncated = False

    def add(self, law, *witness, malformed=False):
        self.items.append(Violation(law, tuple(str(w) for w in witness), malformed))
        if self.limit is not None and len(self.items) >= self.limit:
            self.truncated = True
            raise LimitReached

    def check(self, ok, law, *witness):
        if not ok:
            self.add(law, *witness)
        return ok

    def report(self):
        return ValidationReport(tuple(self.items), self.truncated)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()
    truncated: bool = False

    @property
    def passed(self):
        return not self.violations

    @property
    def malformed(self):
        return tuple(v for v in self.violations if v.malformed)

    def laws(self):
        return sorted({v.law for v in self.violations})

    def witnesses(self, law):
        return [v.witness for v in self.violations if v.law == law]

    def __bool__(self):
        return self.passed

    def merged(self, other, limit=DEFAULT_LIMIT):
        vs = self.violations + other.violations
        trunc = self.truncated or other.truncated
        if limit is not None and len(vs) > limit:
            vs, trunc = vs[:limit], True
        return ValidationReport(vs, trunc)

    def as_dict(self):
        return {"passed": self.passed, "truncated": self.truncated,
                "violations": [v.as_dict() for v in self.violations]}


def run_checks(limit, *steps):
    """Run check functions sharing one collector; stop on the limit."""
    col = Collector(limit)
    try:
        for step in steps:
            step(col)
    except LimitReached:
        pass
    return col.report()


class Bicategory:
    """A finite bicategory presented by total composition tables."""

    kind = "bicategory"

    def __init__(self, objects, one_cells, two_cells, id1, id2, comp1, vcomp,
                 hcomp, assoc=None, lunit=None, runit=None, inverse=None,
                 name=""):
        self.objects = tuple(objects)
        self.one_cells = dict(one_cells)
        self.two_cells = dict(two_cells)
        self.id1 = dict(id1)
        self.id2 = dict(id2)
        self.comp1 = dict(comp1)
        self.vcomp = dict(vcomp)
        self.hcomp = dict(hcomp)
        self._assoc = None if assoc is None else dict(assoc)
        self._lunit = None if lunit is None else dict(lunit)
        self._runit = None if runit is None else dict(runit)
        self.inverse = dict(inverse or {})
        self.name = name

    # coherence tables; a strict 2-category derives them as identities
    @property
    def assoc(self):
        return self._assoc or {}

    @property
    def lunit(self):
        return self._lunit or {}

    @property
    def runit(self):
        return self._runit or {}

    # boundaries
    def src1(self, f):
        return self.one_cells[f][0]

    def tgt1(self, f):
        return self.one_cells[f][1]

    def src2(self, a):
        return self.two_cells[a][0]

    def tgt2(self, a):
        return self.two_cells[a][1]

    # composition
    def c1(self, g, f):
        return self.comp1[(g, f)]

    def v(self, b, a):
        return self.vcomp[(b, a)]

    def h(self, b, a):
        return self.hcomp[(b, a)]

    def seq(self, *cells):
        """Vertical composite in diagrammatic order: first cell first."""
        out = cells[0]
        for c in cells[1:]:
            out = self.vcomp[(c, out)]
        return out

    def hseq(self, *cells):
        """Horizontal composite, written right to left like comp1."""
        out = cells[-1]
        for c in reversed(cells[:-1]):
            out = self.hcomp[(c, out)]
        return out

    def chain1(self, *fs):
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.comp1[(g, out)]
        return out

    def wl(self, g, a):
        """Whisker 2-cell a by 1-cell g on the left: g*a."""
        return self.hcomp[(self.id2[g], a)]

    def wr(self, a, f):
        """Whisker 2-cell a by 1-cell f on the right: a*f."""
        return self.hcomp[(a, self.id2[f])]

    def a(self, h, g, f):
        return self.assoc[(h, g, f)]

    def ainv(self, h, g, f):
        return self.inv(self.assoc[(h, g, f)])

    def l(self, f):
        return self.lunit[f]

    def r(self, f):
        return self.runit[f]

    # indexes
    @cached_property
    def hom(self):
        out = {(x, y): [] for x in self.objects for y in self.objects}
        for f in sorted(self.one_cells):
            s, t = self.one_cells[f]
            out.setdefault((s, t), []).append(f)
        return out

    @cached_property
    def cells(self):
        out = {}
        for a in sorted(self.two_cells):
            out.setdefault(self.two_cells[a], []).append(a)
        return out

    def cells2(self, f, g):
        return self.cells.get((f, g), [])

    @cached_property
    def out2(self):
        """2-cells grouped by source 1-cell."""
        out = {}
        for a in sorted(self.two_cells):
            out.setdefault(self.two_cells[a][0], []).append(a)
        return out

    @cached_property
    def hom2(self):
        """2-cells grouped by the pair of objects they live between."""
        out = {}
        for a in sorted(self.two_cells):
            f = self.two_cells[a][0]
            out.setdefault(self.one_cells[f], []).append(a)
        return out

    @cached_property
    def _inverses(self):
        out = {}
        for a in sorted(self.two_cells):
            f, g = self.two_cells[a]
            for b in self.cells2(g, f):
                if (self.vcomp.get((b, a)) == self.id2.get(f)
                        and self.vcomp.get((a, b)) == self.id2.get(g)):
                    out[a] = b
                    break
        return out

    def inv(self, a):
        if a in self.inverse:
            return self.inverse[a]
        return self._inverses.get(a)

    def is_iso(self, a):
        return a in self._inverses

    def isos(self, f, g):
        return [a for a in self.cells2(f, g) if self.is_iso(a)]

    def is_identity2(self, a):
        return self.id2.get(self.two_cells[a][0]) == a

    @cached_property
    def _equivalences(self):
        out = {}
        for f in sorted(self.one_cells):
            x, y = self.one_cells[f]
            for g in self.hom.get((y, x), []):
                if (self.isos(self.id1[x], self.comp1[(g, f)])
                        and self.isos(self.comp1[(f, g)], self.id1[y])):
                    out[f] = g
                    break
        return out

    def pseudo_inverse(self, f):
        return self._equivalences.get(f)

    def is_equivalence(self, f):
        return f in self._equivalences

    def is_invertible1(self, f):
        """1-cell with a strict inverse."""
        x, y = self.one_cells[f]
        return any(self.comp1[(g, f)] == self.id1[x] and self.comp1[(f, g)] == self.id1[y]
                   for g in self.hom.get((y, x), []))

    @property
    def is_strict(self):
        """Coherence cells are all identities."""
        return (all(self.id2.get(self.two_cells[c][0]) == c for c in self.assoc.values())
                and all(self.id2.get(self.two_cells[c][0]) == c for c in self.lunit.values())
                and all(self.id2.get(self.two_cells[c][0]) == c for c in self.runit.values()))

    def counts(self):
        return (len(self.objects), len(self.one_cells), len(self.two_cells))

    def tables(self):
        return (tuple(sorted(self.objects)), self.one_cells, self.two_cells,
                self.id1, self.id2, self.comp1, self.vcomp, self.hcomp,
                self.assoc, self.lunit, self.runit)

    def __eq__(self, other):
        if not isinstance(other, Bicategory):
            return NotImplemented
        return self.tables() == other.tables()

    def __hash__(self):
        return hash(self.counts())

    def __repr__(self):
        n0, n1, n2 = self.counts()
        return f"{type(self).__name__}({self.name!r}, {n0} objects, {n1} 1-cells, {n2} 2-cells)"

    def relabel(self, m0, m1, m2, name=None):
        """Rename cells through three injective maps."""
        g0, g1, g2 = m0.__getitem__, m1.__getitem__, m2.__getitem__
        kw = dict(
            objects=[g0(x) for x in self.objects],
            one_cells={g1(f): (g0(s), g0(t)) for f, (s, t) in self.one_cells.items()},
            two_cells={g2(a): (g1(s), g1(t)) for a, (s, t) in self.two_cells.items()},
            id1={g0(x): g1(f) for x, f in self.id1.items()},
            id2={g1(f): g2(a) for f, a in self.id2.items()},
            comp1={(g1(g), g1(f)): g1(c) for (g, f), c in self.comp1.items()},
            vcomp={(g2(b), g2(a)): g2(c) for (b, a), c in self.vcomp.items()},
            hcomp={(g2(b), g2(a)): g2(c) for (b, a), c in self.hcomp.items()},
            name=self.name if name is None else name,
        )
        if isinstance(self, TwoCategory):
            return TwoCategory(**kw)
        kw.update(
            assoc={tuple(map(g1, k)): g2(c) for k, c in self.assoc.items()},
            lunit={g1(f): g2(c) for f, c in self.lunit.items()},
            runit={g1(f): g2(c) for f, c in self.runit.items()},
            inverse={g2(a): g2(b) for a, b in self.inverse.items()},
        )
        return Bicategory(**kw)


class TwoCategory(Bicategory):
    """A finite strict 2-category; coherence cells are identities."""

    kind = "two_category"

    def __init__(self, objects, one_cells, two_cells, id1, id2, comp1, vcomp,
                 hcomp, name="", **_ignored):
        super().__init__(objects, one_cells, two_cells, id1, id2, comp1, vcomp,
                         hcomp, name=name)

    @cached_property
    def assoc(self):
        out = {}
        for h, g, f in enumerate_composable(self, 3, 1, dim=1):
            c = self.comp1.get((self.comp1.get((h, g)), f))
            if c in self.id2:
                out[(h, g, f)] = self.id2[c]
        return out

    @cached_property
    def lunit(self):
        return {f: self.id2[f] for f in self.one_cells if f in self.id2}

    @cached_property
    def runit(self):
        return {f: self.id2[f] for f in self.one_cells if f in self.id2}

    @property
    def is_strict(self):
        return True

    def as_bicategory(self):
        """Embed with identity coherence cells."""
        return Bicategory(self.objects, self.one_cells, self.two_cells, self.id1,
                          self.id2, self.comp1, self.vcomp, self.hcomp,
                          assoc=self.assoc, lunit=self.lunit, runit=self.runit,
                          name=self.name)


def strict_view(B):
    """A bicategory whose coherence cells are identities, as a TwoCategory."""
    if isinstance(B, TwoCategory):
        return B
    return TwoCategory(B.objects, B.one_cells, B.two_cells, B.id1, B.id2, B.comp1,
                       B.vcomp, B.hcomp, name=B.name)


def enumerate_composable(B, arity, level, dim=2):
    """Composable tuples, lexicographic in cell names.

    ``level`` is the boundary dimension being glued plus one: level 1 glues
    along objects (horizontal), level 2 along 1-cells (vertical).  ``dim``
    selects which cells are composed; the default is 2-cells.  Tuples are
    written right to left, so ``(g, f)`` means ``f`` then ``g``.
    """
    if arity not in (2, 3) or level not in (1, 2) or dim not in (1, 2):
        raise ValueError("arity must be 2|3, level 1|2, dim 1|2")
    if dim == 1:
        if level != 1:
            raise ValueError("1-cells only compose along objects")
        cells, src, tgt = B.one_cells, (lambda f: B.one_cells[f][0]), (lambda f: B.one_cells[f][1])
    elif level == 1:
        cells = B.two_cells

        def src(a):
            return B.one_cells[B.two_cells[a][0]][0]

        def tgt(a):
            return B.one_cells[B.two_cells[a][0]][1]
    else:
        cells, src, tgt = B.two_cells, (lambda a: B.two_cells[a][0]), (lambda a: B.two_cells[a][1])
    by_src = {}
    for c in sorted(cells):
        by_src.setdefault(src(c), []).append(c)
    out = []
    for last in sorted(cells):
        for first in sorted(cells):
            if tgt(first) != src(last):
                continue
            if arity == 2:
                out.append((last, first))
            else:
                for third in by_src.get(tgt(last), []):
                    out.append((third, last, first))
    out.sort()
    return out


# ---------------------------------------------------------------- validation

def _wellformed(B, col, coherent):
    objs = set()
    for x in B.objects:
        if x in objs:
            col.add("malformed.duplicate", x, malformed=True)
        objs.add(x)
    for f, (s, t) in sorted(B.one_cells.items()):
        for x in (s, t):
            if x not in objs:
                col.add("malformed.dangling", f, x, malformed=True)
    for a, (f, g) in sorted(B.two_cells.items()):
        for k in (f, g):
            if k not in B.one_cells:
                col.add("malformed.dangling", a, k, malformed=True)
        if f in B.one_cells and g in B.one_cells and B.one_cells[f] != B.one_cells[g]:
            col.add("malformed.not_parallel", a, malformed=True)
    if col.items:
        return False

    def total(table, keys, label):
        ok = True
        keys = set(keys)
        for k in sorted(keys):
            if k not in table:
                col.add("malformed.not_total", label, *(k if isinstance(k, tuple) else (k,)),
                        malformed=True)
                ok = False
        for k in sorted(set(table) - keys, key=str):
            col.add("malformed.extra_entry", label, *(k if isinstance(k, tuple) else (k,)),
                    malformed=True)
            ok = False
        return ok

    def values(table, label, universe):
        ok = True
        for k, c in sorted(table.items(), key=lambda kv: str(kv[0])):
            if c not in universe:
                col.add("malformed.dangling", label, c, malformed=True)
                ok = False
        return ok

    ok = total(B.id1, objs, "id1") & values(B.id1, "id1", B.one_cells)
    ok &= total(B.id2, B.one_cells, "id2") & values(B.id2, "id2", B.two_cells)
    ok &= total(B.comp1, enumerate_composable(B, 2, 1, dim=1), "comp1")
    ok &= values(B.comp1, "comp1", B.one_cells)
    ok &= total(B.vcomp, enumerate_composable(B, 2, 2), "vcomp")
    ok &= values(B.vcomp, "vcomp", B.two_cells)
    ok &= total(B.hcomp, enumerate_composable(B, 2, 1), "hcomp")
    ok &= values(B.hcomp, "hcomp", B.two_cells)
    if coherent and ok:
        ok &= total(B.assoc, enumerate_composable(B, 3, 1, dim=1), "assoc")
        ok &= values(B.assoc, "assoc", B.two_cells)
        ok &= total(B.lunit, B.one_cells, "lunit") & values(B.lunit, "lunit", B.two_cells)
        ok &= total(B.runit, B.one_cells, "runit") & values(B.runit, "runit", B.two_cells)
        ok &= values(B.inverse, "inverse", B.two_cells)
        for a in sorted(B.inverse):
            if a not in B.two_cells:
                col.add("malformed.dangling", "inverse", a, malformed=True)
                ok = False
    return ok


def _boundaries(B, col):
    one, two = B.one_cells, B.two_cells
    for x, f in sorted(B.id1.items()):
        col.check(one[f] == (x, x), "boundary.id1", x)
    for f, a in sorted(B.id2.items()):
        col.check(two[a] == (f, f), "boundary.id2", f)
    for (g, f), c in sorted(B.comp1.items()):
        col.check(one[c] == (one[f][0], one[g][1]), "boundary.comp1", g, f)
    for (b, a), c in sorted(B.vcomp.items()):
        col.check(two[c] == (two[a][0], two[b][1]), "boundary.vcomp", b, a)
    for (b, a), c in sorted(B.hcomp.items()):
        want = (B.comp1.get((two[b][0], two[a][0])), B.comp1.get((two[b][1], two[a][1])))
        col.check(two[c] == want, "boundary.hcomp", b, a)


def _category_laws(B, col):
    """Vertical composition is a category on each hom."""
    vc, id2 = B.vcomp, B.id2
    for a in sorted(B.two_cells):
        f, g = B.two_cells[a]
        col.check(vc.get((a, id2[f])) == a, "vcomp.unit_right", a, id2[f])
        col.check(vc.get((id2[g], a)) == a, "vcomp.unit_left", id2[g], a)
    for c, b, a in enumerate_composable(B, 3, 2):
        col.check(vc.get((vc.get((c, b)), a)) == vc.get((c, vc.get((b, a)))),
                  "vcomp.assoc", c, b, a)


def _functorial_hcomp(B, col):
    """hcomp is a functor: identities and interchange."""
    vc, hc, id2 = B.vcomp, B.hcomp, B.id2
    for g, f in enumerate_composable(B, 2, 1, dim=1):
        col.check(hc.get((id2[g], id2[f])) == id2.get(B.comp1[(g, f)]), "hcomp.identity", g, f)
    by_obj = {}
    for pair in enumerate_composable(B, 2, 2):
        a = pair[1]
        by_obj.setdefault(B.one_cells[B.two_cells[a][0]], []).append(pair)
    for (y, z), outer in sorted(by_obj.items()):
        for (x, y2), inner in sorted(by_obj.items()):
            if y2 != y:
                continue
            for b2, b1 in outer:
                for a2, a1 in inner:
                    lhs = hc.get((vc[(b2, b1)], vc[(a2, a1)]))
                    rhs = vc.get((hc.get((b2, a2)), hc.get((b1, a1))))
                    col.check(lhs == rhs, "hcomp.interchange", b2, b1, a2, a1)


def _strict_laws(B, col):
    c1, hc, id1, id2 = B.comp1, B.hcomp, B.id1, B.id2
    for f in sorted(B.one_cells):
        x, y = B.one_cells[f]
        col.check(c1.get((f, id1[x])) == f, "comp1.unit_right", f)
        col.check(c1.get((id1[y], f)) == f, "comp1.unit_left", f)
    for h, g, f in enumerate_composable(B, 3, 1, dim=1):
        col.check(c1.get((c1[(h, g)], f)) == c1.get((h, c1[(g, f)])), "comp1.assoc", h, g, f)
    for a in sorted(B.two_cells):
        x, y = B.one_cells[B.two_cells[a][0]]
        col.check(hc.get((a, id2[id1[x]])) == a, "hcomp.unit_right", a)
        col.check(hc.get((id2[id1[y]], a)) == a, "hcomp.unit_left", a)
    for c, b, a in enumerate_composable(B, 3, 1):
        left = hc.get((hc.get((c, b)), a))
        right = hc.get((c, hc.get((b, a))))
        col.check(left is not None and left == right, "hcomp.assoc", c, b, a)


def validate_two_category(T, limit=DEFAULT_LIMIT):
    """Every violated strict 2-category law, in enumeration order."""
    def structure(col):
        if not _wellformed(T, col, coherent=False):
            raise LimitReached
    col = Collector(limit)
    try:
        structure(col)
        _boundaries(T, col)
        _category_laws(T, col)
        _functorial_hcomp(T, col)
        _strict_laws(T, col)
    except LimitReached:
        pass
    return col.report()


def _coherence_laws(B, col):
    vc, hc, id2 = B.vcomp, B.hcomp, B.id2
    one, two = B.one_cells, B.two_cells
    # boundaries of coherence cells
    for (h, g, f), c in sorted(B.assoc.items()):
        want = (B.comp1[(B.comp1[(h, g)], f)], B.comp1[(h, B.comp1[(g, f)])])
        col.check(two[c] == want, "boundary.assoc", h, g, f)
    for f, c in sorted(B.lunit.items()):
        col.check(two[c] == (B.comp1[(B.id1[one[f][1]], f)], f), "boundary.lunit", f)
    for f, c in sorted(B.runit.items()):
        col.check(two[c] == (B.comp1[(f, B.id1[one[f][0]])], f), "boundary.runit", f)
    # declared inverses
    coherence = sorted(set(B.assoc.values()) | set(B.lunit.values()) | set(B.runit.values()))
    for c in coherence:
        d = B.inverse.get(c) if B.inverse else B.inv(c)
        if d is None:
            d = B.inv(c)
        ok = (d is not None and d in two
              and vc.get((d, c)) == id2[two[c][0]] and vc.get((c, d)) == id2[two[c][1]])
        col.check(ok, "coherence.inverse", c)
    for c, d in sorted(B.inverse.items()):
        ok = vc.get((d, c)) == id2[two[c][0]] and vc.get((c, d)) == id2[two[c][1]]
        col.check(ok, "inverse.declared", c, d)
    # naturality, one variable at a time
    c1 = B.comp1
    for h, g, f in enumerate_composable(B, 3, 1, dim=1):
        for al in B.out2.get(f, []):
            f2 = two[al][1]
            if (h, g, f2) not in B.assoc:
                continue
            lhs = vc.get((B.assoc[(h, g, f2)], hc.get((id2[c1[(h, g)]], al))))
            rhs = vc.get((hc.get((id2[h], hc.get((id2[g], al)))), B.assoc[(h, g, f)]))
            col.check(lhs == rhs, "assoc.natural_first", h, g, al)
        for be in B.out2.get(g, []):
            g2 = two[be][1]
            lhs = vc.get((B.assoc[(h, g2, f)], hc.get((hc.get((id2[h], be)), id2[f]))))
            rhs = vc.get((hc.get((id2[h], hc.get((be, id2[f])))), B.assoc[(h, g, f)]))
            col.check(lhs == rhs, "assoc.natural_middle", h, be, f)
        for ga in B.out2.get(h, []):
            h2 = two[ga][1]
            lhs = vc.get((B.assoc[(h2, g, f)], hc.get((hc.get((ga, id2[g])), id2[f]))))
            rhs = vc.get((hc.get((ga, id2[c1[(g, f)]])), B.assoc[(h, g, f)]))
            col.check(lhs == rhs, "assoc.natural_last", ga, g, f)
    for al in sorted(two):
        f, f2 = two[al]
        x, y = one[f]
        lhs = vc.get((B.lunit[f2], hc.get((id2[B.id1[y]], al))))
        col.check(lhs == vc.get((al, B.lunit[f])), "lunit.natural", al)
        lhs = vc.get((B.runit[f2], hc.get((al, id2[B.id1[x]]))))
        col.check(lhs == vc.get((al, B.runit[f])), "runit.natural", al)
    # pentagon and triangle
    for g, f in enumerate_composable(B, 2, 1, dim=1):
        y = one[f][1]
        i = B.id1[y]
        lhs = vc.get((hc.get((id2[g], B.lunit[f])), B.assoc[(g, i, f)]))
        col.check(lhs == hc.get((B.runit[g], id2[f])), "triangle", g, f)
    for k, h, g in enumerate_composable(B, 3, 1, dim=1):
        for f in sorted(B.one_cells):
            if one[f][1] != one[g][0]:
                continue
            a = B.assoc
            lhs = B.seq(hc[(a[(k, h, g)], id2[f])], a[(k, c1[(h, g)], f)],
                        hc[(id2[k], a[(h, g, f)])])
            rhs = B.seq(a[(c1[(k, h)], g, f)], a[(k, h, c1[(g, f)])])
            col.check(lhs == rhs, "pentagon", k, h, g, f)


def validate_bicategory(B, limit=DEFAULT_LIMIT):
    """Every violated bicategory axiom, in enumeration order."""
    col = Collector(limit)
    try:
        if not _wellformed(B, col, coherent=True):
            raise LimitReached
        _boundaries(B, col)
        _category_laws(B, col)
        _functorial_hcomp(B, col)
        if col.items:
            raise LimitReached
        _coherence_laws(B, col)
    except (LimitReached, KeyError):
        pass
    return col.report()


def validate(B, limit=DEFAULT_LIMIT):
    if isinstance(B, TwoCategory):
        return validate_two_category(B, limit)
    return validate_bicategory(B, limit)


# ---------------------------------------------------------------- duality

def dualize(B, mode):
    """op reverses 1-cells, co reverses 2-cells, coop reverses both."""
    if mode == "coop":
        return dualize(dualize(B, "co"), "op")
    if mode not in ("op", "co"):
        raise ValueError(f"unknown duality {mode!r}")
    strict = isinstance(B, TwoCategory)
    if mode == "op":
        kw = dict(
            one_cells={f: (t, s) for f, (s, t) in B.one_cells.items()},
            two_cells=dict(B.two_cells),
            comp1={(f, g): c for (g, f), c in B.comp1.items()},
            vcomp=dict(B.vcomp),
            hcomp={(a, b): c for (b, a), c in B.hcomp.items()},
        )
        if not strict:
            kw.update(assoc={(f, g, h): B.inv(c) for (h, g, f), c in B.assoc.items()},
                      lunit=dict(B.runit), runit=dict(B.lunit))
    else:
        kw = dict(
            one_cells=dict(B.one_cells),
            two_cells={a: (t, s) for a, (s, t) in B.two_cells.items()},
            comp1=dict(B.comp1),
            vcomp={(a, b): c for (b, a), c in B.vcomp.items()},
            hcomp=dict(B.hcomp),
        )
        if not strict:
            kw.update(assoc={k: B.inv(c) for k, c in B.assoc.items()},
                      lunit={f: B.inv(c) for f, c in B.lunit.items()},
                      runit={f: B.inv(c) for f, c in B.runit.items()})
    kw.update(objects=B.objects, id1=B.id1, id2=B.id2, name=B.name)
    if strict:
        return TwoCategory(**kw)
    kw["inverse"] = dict(B.inverse)
    return Bicategory(**kw)


# ---------------------------------------------------------------- building

def tabulate(objects, one_cells, two_cells, id1, id2, comp1, vcomp, hcomp,
             assoc=None, lunit=None, runit=None, name="", strict=None):
    """Build a category from cell sets and composition functions.

    The functions receive cell names and return cell names; they are only
    called on composable arguments.  Coherence functions are optional; when
    all three are omitted the result is a TwoCategory.
    """
    objects = sorted(objects)
    one_cells = dict(one_cells)
    two_cells = dict(two_cells)
    stub = Bicategory(objects, one_cells, two_cells, {}, {}, {}, {}, {})
    t_id1 = {x: id1(x) for x in objects}
    t_id2 = {f: id2(f) for f in sorted(one_cells)}
    t_c1 = {(g, f): comp1(g, f) for g, f in enumerate_composable(stub, 2, 1, dim=1)}
    t_vc = {(b, a): vcomp(b, a) for b, a in enumerate_composable(stub, 2, 2)}
    t_hc = {(b, a): hcomp(b, a) for b, a in enumerate_composable(stub, 2, 1)}
    if strict is None:
        strict = assoc is None and lunit is None and runit is None
    if strict:
        return TwoCategory(objects, one_cells, two_cells, t_id1, t_id2, t_c1, t_vc, t_hc, name=name)
    stub = Bicategory(objects, one_cells, two_cells, t_id1, t_id2, t_c1, t_vc, t_hc)
    t_a = {k: assoc(*k) for k in enumerate_composable(stub, 3, 1, dim=1)}
    t_l = {f: lunit(f) for f in sorted(one_cells)}
    t_r = {f: runit(f) for f in sorted(one_cells)}
    B = Bicategory(objects, one_cells, two_cells, t_id1, t_id2, t_c1, t_vc, t_hc,
                   t_a, t_l, t_r, name=name)
    B.inverse = {c: B.inv(c) for c in sorted(set(t_a.values()) | set(t_l.values()) | set(t_r.values()))
                 if B.inv(c) is not None}
    return B


def subcategory(B, objects, one_cells, two_cells, name=""):
    """Restrict B to the given cells; closure is the caller's concern."""
    objects = [x for x in B.objects if x in set(objects)]
    one = {f: B.one_cells[f] for f in one_cells}
    two = {a: B.two_cells[a] for a in two_cells}
    kw = dict(
        objects=objects, one_cells=one, two_cells=two,
        id1={x: B.id1[x] for x in objects},
        id2={f: B.id2[f] for f in one},
        comp1={k: c for k, c in B.comp1.items() if k[0] in one and k[1] in one},
        vcomp={k: c for k, c in B.vcomp.items() if k[0] in two and k[1] in two},
        hcomp={k: c for k, c in B.hcomp.items() if k[0] in two and k[1] in two},
        name=name or B.name,
    )
    if isinstance(B, TwoCategory):
        return TwoCategory(**kw)
    kw.update(
        assoc={k: c for k, c in B.assoc.items() if all(f in one for f in k)},
        lunit={f: B.lunit[f] for f in one}, runit={f: B.runit[f] for f in one},
        inverse={a: b for a, b in B.inverse.items() if a in two},
    )
    return Bicategory(**kw)


def product_category(A, B, name=""):
    """Cartesian product; cells are named (a|b)."""
    def pairs(xs, ys):
        return [(x, y) for x in sorted(xs) for y in sorted(ys)]
    objects = [tup(x, y) for x, y in pairs(A.objects, B.objects)]
    one = {tup(f, g): (tup(A.src1(f), B.src1(g)), tup(A.tgt1(f), B.tgt1(g)))
           for f, g in pairs(A.one_cells, B.one_cells)}
    two = {tup(a, b): (tup(A.src2(a), B.src2(b)), tup(A.tgt2(a), B.tgt2(b)))
           for a, b in pairs(A.two_cells, B.two_cells)}
    split = {}
    for x, y in pairs(A.objects, B.objects):
        split[tup(x, y)] = (x, y)
    for f, g in pairs(A.one_cells, B.one_cells):
        split[tup(f, g)] = (f, g)
    for a, b in pairs(A.two_cells, B.two_cells):
        split[tup(a, b)] = (a, b)

    def lift(fa, fb):
        def op(*cells):
            parts = [split[c] for c in cells]
            return tup(fa(*[p[0] for p in parts]), fb(*[p[1] for p in parts]))
        return op
    strict = isinstance(A, TwoCategory) and isinstance(B, TwoCategory)
    return tabulate(
        objects, one, two,
        lift(lambda x: A.id1[x], lambda y: B.id1[y]),
        lift(lambda f: A.id2[f], lambda g: B.id2[g]),
        lift(A.c1, B.c1), lift(A.v, B.v), lift(A.h, B.h),
        assoc=None if strict else lift(A.a, B.a),
        lunit=None if strict else lift(A.l, B.l),
        runit=None if strict else lift(A.r, B.r),
        name=name, strict=strict)


def iter_pairs(xs, ys):
    return product(sorted(xs), sorted(ys))
