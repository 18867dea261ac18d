"""Maps between finite bicategories and the diagram types built from them.

Conventions used throughout:

    phi_comp[(g, f)] : Fg.Ff => F(g.f)
    phi_id[x]        : 1_Fx => F(1_x)
    t.comp1[f]       : Gf.t_x => t_y.Ff         for t: F => G and f: x -> y

An IndexedTwoDiagram is contravariant on 1- and 2-cells: a 1-cell f: b -> b'
gives a 2-functor F(b') -> F(b) and a 2-cell al: f => g gives a strict
transformation Fg => Ff.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (DEFAULT_LIMIT, Collector, LimitReached, TwoCategory,
                   enumerate_composable, validate, validate_two_category)


class Homomorphism:
    """A homomorphism of bicategories with comparison cells phi."""

    kind = "homomorphism"

    def __init__(self, dom, cod, obj, one, two, phi_comp=None, phi_id=None, name=""):
        self.dom, self.cod = dom, cod
        self.obj, self.one, self.two = dict(obj), dict(one), dict(two)
        self._phi_comp = None if phi_comp is None else dict(phi_comp)
        self._phi_id = None if phi_id is None else dict(phi_id)
        self.name = name

    @property
    def phi_comp(self):
        if self._phi_comp is None:
            self._phi_comp = self._identity_phi_comp()
        return self._phi_comp

    @property
    def phi_id(self):
        if self._phi_id is None:
            self._phi_id = self._identity_phi_id()
        return self._phi_id

    def _identity_phi_comp(self):
        out = {}
        for g, f in enumerate_composable(self.dom, 2, 1, dim=1):
            c = self.cod.comp1.get((self.one.get(g), self.one.get(f)))
            if c is not None:
                out[(g, f)] = self.cod.id2.get(c)
        return out

    def _identity_phi_id(self):
        return {x: self.cod.id2.get(self.cod.id1.get(self.obj.get(x))) for x in self.dom.objects}

    def phi(self, g, f):
        return self.phi_comp[(g, f)]

    def phi0(self, x):
        return self.phi_id[x]

    @property
    def is_strict(self):
        return (all(self.cod.is_identity2(c) for c in self.phi_comp.values())
                and all(self.cod.is_identity2(c) for c in self.phi_id.values()))

    def as_two_functor(self):
        return TwoFunctor(self.dom, self.cod, self.obj, self.one, self.two, name=self.name)

    def as_homomorphism(self):
        return Homomorphism(self.dom, self.cod, self.obj, self.one, self.two,
                            self.phi_comp, self.phi_id, name=self.name)

    def maps(self):
        return (self.obj, self.one, self.two)

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.maps() == other.maps()
                and self.phi_comp == other.phi_comp and self.phi_id == other.phi_id)

    def __hash__(self):
        return hash((len(self.obj), len(self.one), len(self.two)))

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}: {self.dom.name!r} -> {self.cod.name!r})"


class TwoFunctor(Homomorphism):
    """A strict 2-functor: phi cells are identities."""

    kind = "two_functor"

    def __init__(self, dom, cod, obj, one, two, name="", **_ignored):
        super().__init__(dom, cod, obj, one, two, name=name)


def identity_functor(B):
    cls = TwoFunctor
    return cls(B, B, {x: x for x in B.objects}, {f: f for f in B.one_cells},
               {a: a for a in B.two_cells}, name=f"1_{B.name}")


def terminal_functor(B, T):
    """The unique map into a one-object, identity-only category T."""
    (pt,) = T.objects
    i = T.id1[pt]
    return TwoFunctor(B, T, {x: pt for x in B.objects}, {f: i for f in B.one_cells},
                      {a: T.id2[i] for a in B.two_cells}, name=f"!_{B.name}")


def compose(G, F, name=""):
    """G after F, with composite comparison cells."""
    if F.is_strict and G.is_strict and isinstance(F, TwoFunctor) and isinstance(G, TwoFunctor):
        return TwoFunctor(F.dom, G.cod, {x: G.obj[y] for x, y in F.obj.items()},
                          {f: G.one[g] for f, g in F.one.items()},
                          {a: G.two[b] for a, b in F.two.items()}, name=name)
    C = G.cod
    phi = {}
    for (g, f), c in F.phi_comp.items():
        phi[(g, f)] = C.v(G.two[c], G.phi_comp[(F.one[g], F.one[f])])
    phi0 = {x: C.v(G.two[F.phi_id[x]], G.phi_id[F.obj[x]]) for x in F.dom.objects}
    return Homomorphism(F.dom, C, {x: G.obj[y] for x, y in F.obj.items()},
                        {f: G.one[g] for f, g in F.one.items()},
                        {a: G.two[b] for a, b in F.two.items()}, phi, phi0, name=name)


# ------------------------------------------------------------- validation

def _maps_wellformed(F, col):
    A, B = F.dom, F.cod
    ok = True
    for label, table, src, dst in (("obj", F.obj, A.objects, B.objects),
                                   ("one", F.one, A.one_cells, B.one_cells),
                                   ("two", F.two, A.two_cells, B.two_cells)):
        dst = set(dst)
        for k in sorted(src):
            if k not in table:
                col.add("malformed.not_total", label, k, malformed=True)
                ok = False
            elif table[k] not in dst:
                col.add("malformed.dangling", label, k, table[k], malformed=True)
                ok = False
        for k in sorted(set(table) - set(src)):
            col.add("malformed.extra_entry", label, k, malformed=True)
            ok = False
    return ok


def _boundaries(F, col):
    A, B = F.dom, F.cod
    for f, (s, t) in sorted(A.one_cells.items()):
        col.check(B.one_cells[F.one[f]] == (F.obj[s], F.obj[t]), "boundary.one", f)
    for a, (s, t) in sorted(A.two_cells.items()):
        col.check(B.two_cells[F.two[a]] == (F.one[s], F.one[t]), "boundary.two", a)


def _local_functoriality(F, col):
    A, B = F.dom, F.cod
    for f in sorted(A.one_cells):
        col.check(F.two[A.id2[f]] == B.id2[F.one[f]], "preserve.id2", f)
    for b, a in enumerate_composable(A, 2, 2):
        col.check(F.two[A.v(b, a)] == B.v(F.two[b], F.two[a]), "preserve.vcomp", b, a)


def validate_two_functor(F, limit=DEFAULT_LIMIT):
    """Strict preservation of all structure, exhaustively."""
    A, B = F.dom, F.cod
    col = Collector(limit)
    try:
        if not _maps_wellformed(F, col):
            raise LimitReached
        _boundaries(F, col)
        if col.items:
            raise LimitReached
        for x in sorted(A.objects):
            col.check(F.one[A.id1[x]] == B.id1[F.obj[x]], "preserve.id1", x)
        for g, f in enumerate_composable(A, 2, 1, dim=1):
            col.check(F.one[A.c1(g, f)] == B.comp1.get((F.one[g], F.one[f])), "preserve.comp1", g, f)
        _local_functoriality(F, col)
        for b, a in enumerate_composable(A, 2, 1):
            col.check(F.two[A.h(b, a)] == B.hcomp.get((F.two[b], F.two[a])), "preserve.hcomp", b, a)
    except LimitReached:
        pass
    return col.report()


def validate_homomorphism(H, limit=DEFAULT_LIMIT):
    """Boundaries, local functoriality, invertible natural phi, coherence."""
    A, B = H.dom, H.cod
    col = Collector(limit)
    try:
        if not _maps_wellformed(H, col):
            raise LimitReached
        _boundaries(H, col)
        if col.items:
            raise LimitReached
        _local_functoriality(H, col)
        F0, F1, F2 = H.obj, H.one, H.two
        for g, f in enumerate_composable(A, 2, 1, dim=1):
            c = H.phi_comp.get((g, f))
            want = (B.comp1[(F1[g], F1[f])], F1[A.c1(g, f)])
            if c not in B.two_cells or B.two_cells[c] != want:
                col.add("phi.boundary", g, f)
                continue
            col.check(B.is_iso(c), "phi.invertible", g, f)
        for x in sorted(A.objects):
            c = H.phi_id.get(x)
            want = (B.id1[F0[x]], F1[A.id1[x]])
            if c not in B.two_cells or B.two_cells[c] != want:
                col.add("phi.boundary", x)
                continue
            col.check(B.is_iso(c), "phi.invertible", x)
        if col.items:
            raise LimitReached
        phi = H.phi_comp
        for b, a in enumerate_composable(A, 2, 1):
            g, f = A.src2(b), A.src2(a)
            g2, f2 = A.tgt2(b), A.tgt2(a)
            lhs = B.v(F2[A.h(b, a)], phi[(g, f)])
            rhs = B.v(phi[(g2, f2)], B.h(F2[b], F2[a]))
            col.check(lhs == rhs, "phi.natural", b, a)
        for h, g, f in enumerate_composable(A, 3, 1, dim=1):
            Fh, Fg, Ff = F1[h], F1[g], F1[f]
            lhs = B.seq(B.wr(phi[(h, g)], Ff), phi[(A.c1(h, g), f)], F2[A.a(h, g, f)])
            rhs = B.seq(B.a(Fh, Fg, Ff), B.wl(Fh, phi[(g, f)]), phi[(h, A.c1(g, f))])
            col.check(lhs == rhs, "phi.associativity", h, g, f)
        for f in sorted(A.one_cells):
            x, y = A.one_cells[f]
            Ff = F1[f]
            lhs = B.seq(B.wr(H.phi_id[y], Ff), phi[(A.id1[y], f)], F2[A.l(f)])
            col.check(lhs == B.l(Ff), "phi.left_unit", f)
            lhs = B.seq(B.wl(Ff, H.phi_id[x]), phi[(f, A.id1[x])], F2[A.r(f)])
            col.check(lhs == B.r(Ff), "phi.right_unit", f)
    except LimitReached:
        pass
    return col.report()


# ------------------------------------------------------- transformations

class Transformation:
    """A pseudo-natural transformation source => target."""

    def __init__(self, source, target, comp0, comp1=None, name=""):
        self.source, self.target = source, target
        self.comp0 = dict(comp0)
        if comp1 is None:
            D = target.cod
            comp1 = {}
            for f in source.dom.one_cells:
                x = source.dom.src1(f)
                c = D.comp1.get((target.one[f], self.comp0.get(x)))
                comp1[f] = D.id2.get(c)
        self.comp1 = dict(comp1)
        self.name = name

    @property
    def dom(self):
        return self.source.dom

    @property
    def cod(self):
        return self.source.cod

    @property
    def is_strict(self):
        return all(self.cod.is_identity2(c) for c in self.comp1.values())

    def __eq__(self, other):
        if not isinstance(other, Transformation):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.comp0 == other.comp0 and self.comp1 == other.comp1)

    def __hash__(self):
        return hash(tuple(sorted(self.comp0.items())))

    def __repr__(self):
        return f"Transformation({self.name!r})"


def identity_transformation(F):
    D = F.cod
    return Transformation(F, F, {x: D.id1[F.obj[x]] for x in F.dom.objects}, name=f"1_{F.name}")


def validate_transformation(t, limit=DEFAULT_LIMIT):
    F, G = t.source, t.target
    A, D = F.dom, F.cod
    col = Collector(limit)
    try:
        if G.dom is not A and G.dom != A or G.cod is not D and G.cod != D:
            col.add("malformed.boundary_mismatch", F.name, G.name, malformed=True)
            raise LimitReached
        for x in sorted(A.objects):
            c = t.comp0.get(x)
            if c not in D.one_cells or D.one_cells[c] != (F.obj[x], G.obj[x]):
                col.add("malformed.component", x, malformed=True)
        for f in sorted(A.one_cells):
            x, y = A.one_cells[f]
            c = t.comp1.get(f)
            want = (D.comp1.get((G.one[f], t.comp0.get(x))), D.comp1.get((t.comp0.get(y), F.one[f])))
            if c not in D.two_cells or D.two_cells[c] != want:
                col.add("malformed.component", f, malformed=True)
        if col.items:
            raise LimitReached
        for f in sorted(A.one_cells):
            col.check(D.is_iso(t.comp1[f]), "natural.invertible", f)
        for a in sorted(A.two_cells):
            f, f2 = A.two_cells[a]
            x, y = A.one_cells[f]
            lhs = D.v(t.comp1[f2], D.wr(G.two[a], t.comp0[x]))
            rhs = D.v(D.wl(t.comp0[y], F.two[a]), t.comp1[f])
            col.check(lhs == rhs, "natural.two_cell", a)
        for g, f in enumerate_composable(A, 2, 1, dim=1):
            x, y = A.one_cells[f]
            z = A.tgt1(g)
            sx, sy, sz = t.comp0[x], t.comp0[y], t.comp0[z]
            Gg, Gf, Fg, Ff = G.one[g], G.one[f], F.one[g], F.one[f]
            lhs = D.seq(D.a(Gg, Gf, sx), D.wl(Gg, t.comp1[f]), D.ainv(Gg, sy, Ff),
                        D.wr(t.comp1[g], Ff), D.a(sz, Fg, Ff), D.wl(sz, F.phi_comp[(g, f)]))
            rhs = D.seq(D.wr(G.phi_comp[(g, f)], sx), t.comp1[A.c1(g, f)])
            col.check(lhs == rhs, "natural.composition", g, f)
        for x in sorted(A.objects):
            sx = t.comp0[x]
            lhs = D.seq(D.wr(G.phi_id[x], sx), t.comp1[A.id1[x]])
            rhs = D.seq(D.l(sx), D.inv(D.r(sx)), D.wl(sx, F.phi_id[x]))
            col.check(lhs == rhs, "natural.identity", x)
    except LimitReached:
        pass
    return col.report()


class Modification:
    """A modification source => target between parallel transformations."""

    def __init__(self, source, target, comp, name=""):
        self.source, self.target = source, target
        self.comp = dict(comp)
        self.name = name

    def __eq__(self, other):
        if not isinstance(other, Modification):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.comp == other.comp

    def __hash__(self):
        return hash(tuple(sorted(self.comp.items())))


def identity_modification(t):
    D = t.cod
    return Modification(t, t, {x: D.id2[c] for x, c in t.comp0.items()})


def validate_modification(m, limit=DEFAULT_LIMIT):
    s, t = m.source, m.target
    F, G = s.source, s.target
    A, D = F.dom, F.cod
    col = Collector(limit)
    try:
        if not (t.source == F and t.target == G):
            col.add("malformed.boundary_mismatch", malformed=True)
            raise LimitReached
        for x in sorted(A.objects):
            c = m.comp.get(x)
            if c not in D.two_cells or D.two_cells[c] != (s.comp0[x], t.comp0[x]):
                col.add("malformed.component", x, malformed=True)
        if col.items:
            raise LimitReached
        for f in sorted(A.one_cells):
            x, y = A.one_cells[f]
            lhs = D.v(t.comp1[f], D.wl(G.one[f], m.comp[x]))
            rhs = D.v(D.wr(m.comp[y], F.one[f]), s.comp1[f])
            col.check(lhs == rhs, "modification.axiom", f)
    except LimitReached:
        pass
    return col.report()


# Algebra of transformations between 2-functors into a strict 2-category.

def vcomp_t(t2, t1, name=""):
    """t2 after t1, componentwise."""
    D = t1.cod
    A = t1.dom
    c0 = {x: D.c1(t2.comp0[x], t1.comp0[x]) for x in A.objects}
    c1 = {}
    for f in A.one_cells:
        x, y = A.one_cells[f]
        c1[f] = D.v(D.wl(t2.comp0[y], t1.comp1[f]), D.wr(t2.comp1[f], t1.comp0[x]))
    return Transformation(t1.source, t2.target, c0, c1, name=name)


def whisker_left(H, t, name=""):
    """H after t, for a 2-functor H out of the codomain of t."""
    c0 = {x: H.one[c] for x, c in t.comp0.items()}
    c1 = {f: H.two[c] for f, c in t.comp1.items()}
    return Transformation(compose(H, t.source), compose(H, t.target), c0, c1, name=name)


def whisker_right(t, K, name=""):
    """t after K, for a 2-functor K into the domain of t."""
    c0 = {x: t.comp0[K.obj[x]] for x in K.dom.objects}
    c1 = {f: t.comp1[K.one[f]] for f in K.dom.one_cells}
    return Transformation(compose(t.source, K), compose(t.target, K), c0, c1, name=name)


def hcomp_t(s, t, name=""):
    """s*t for s: S => S' and t: T => T' with S, S' after T, T'."""
    return vcomp_t(whisker_left(s.target, t), whisker_right(s, t.source), name=name)


def transformations_equal(s, t):
    return s.comp0 == t.comp0 and s.comp1 == t.comp1


def functors_equal(F, G):
    return F.maps() == G.maps()


# ------------------------------------------------------ indexed diagrams

class IndexedTwoDiagram:
    """A strict contravariant assignment B^coop -> 2Cat."""

    kind = "indexed_diagram"

    def __init__(self, base, on_obj, on_1, on_2, name=""):
        self.base = base
        self.on_obj = dict(on_obj)
        self.on_1 = dict(on_1)
        self.on_2 = dict(on_2)
        self.name = name

    def __eq__(self, other):
        if not isinstance(other, IndexedTwoDiagram):
            return NotImplemented
        return (self.base == other.base and self.on_obj == other.on_obj
                and all(functors_equal(self.on_1[f], other.on_1[f]) for f in self.on_1)
                and set(self.on_1) == set(other.on_1)
                and all(transformations_equal(self.on_2[a], other.on_2[a]) for a in self.on_2)
                and set(self.on_2) == set(other.on_2))

    __hash__ = None


def validate_indexed_diagram(D, limit=DEFAULT_LIMIT):
    B = D.base
    col = Collector(limit)
    try:
        rep = validate_two_category(B, limit)
        for v in rep.violations:
            col.add("base." + v.law, *v.witness, malformed=v.malformed)
        if col.items:
            raise LimitReached
        for b in sorted(B.objects):
            if b not in D.on_obj:
                col.add("malformed.missing_fibre", b, malformed=True)
                continue
            for v in validate_two_category(D.on_obj[b], limit).violations:
                col.add("fibre." + v.law, b, *v.witness, malformed=v.malformed)
        for f in sorted(B.one_cells):
            b, b2 = B.one_cells[f]
            F = D.on_1.get(f)
            if F is None or F.dom != D.on_obj[b2] or F.cod != D.on_obj[b]:
                col.add("malformed.reindexing", f, malformed=True)
                continue
            for v in validate_two_functor(F, limit).violations:
                col.add("reindexing." + v.law, f, *v.witness, malformed=v.malformed)
        for a in sorted(B.two_cells):
            f, g = B.two_cells[a]
            t = D.on_2.get(a)
            if t is None or not (functors_equal(t.source, D.on_1[g]) and functors_equal(t.target, D.on_1[f])):
                col.add("malformed.two_cell_action", a, malformed=True)
                continue
            col.check(t.is_strict, "two_cell_action.strict", a)
            for v in validate_transformation(t, limit).violations:
                col.add("two_cell_action." + v.law, a, *v.witness, malformed=v.malformed)
        if col.items:
            raise LimitReached
        for b in sorted(B.objects):
            col.check(functors_equal(D.on_1[B.id1[b]], identity_functor(D.on_obj[b])),
                      "functorial.identity", b)
        for g, f in enumerate_composable(B, 2, 1, dim=1):
            col.check(functors_equal(D.on_1[B.c1(g, f)], compose(D.on_1[f], D.on_1[g])),
                      "functorial.composition", g, f)
        for f in sorted(B.one_cells):
            col.check(transformations_equal(D.on_2[B.id2[f]], identity_transformation(D.on_1[f])),
                      "functorial.identity2", f)
        for b, a in enumerate_composable(B, 2, 2):
            col.check(transformations_equal(D.on_2[B.v(b, a)], vcomp_t(D.on_2[a], D.on_2[b])),
                      "functorial.vcomp", b, a)
        for b, a in enumerate_composable(B, 2, 1):
            col.check(transformations_equal(D.on_2[B.h(b, a)], hcomp_t(D.on_2[a], D.on_2[b])),
                      "functorial.hcomp", b, a)
    except LimitReached:
        pass
    return col.report()


@dataclass
class IndexedTransformation:
    """A 2-natural eta: D1 => D2, one 2-functor per base object."""
    source: IndexedTwoDiagram
    target: IndexedTwoDiagram
    comp: dict


@dataclass
class IndexedModification:
    """Gamma: eta => eps, one strict transformation per base object."""
    source: IndexedTransformation
    target: IndexedTransformation
    comp: dict


@dataclass
class IndexedPerturbation:
    """zeta: Gamma => Lambda, one modification per base object."""
    source: IndexedModification
    target: IndexedModification
    comp: dict


def validate_indexed_transformation(eta, limit=DEFAULT_LIMIT):
    D1, D2 = eta.source, eta.target
    B = D1.base
    col = Collector(limit)
    try:
        for b in sorted(B.objects):
            F = eta.comp.get(b)
            if F is None or F.dom != D1.on_obj[b] or F.cod != D2.on_obj[b]:
                col.add("malformed.component", b, malformed=True)
                continue
            for v in validate_two_functor(F, limit).violations:
                col.add("component." + v.law, b, *v.witness)
        if col.items:
            raise LimitReached
        for f in sorted(B.one_cells):
            b, b2 = B.one_cells[f]
            col.check(functors_equal(compose(D2.on_1[f], eta.comp[b2]), compose(eta.comp[b], D1.on_1[f])),
                      "natural.one_cell", f)
        for a in sorted(B.two_cells):
            f, g = B.two_cells[a]
            b, b2 = B.one_cells[f]
            lhs = whisker_right(D2.on_2[a], eta.comp[b2])
            rhs = whisker_left(eta.comp[b], D1.on_2[a])
            col.check(transformations_equal(lhs, rhs), "natural.two_cell", a)
    except LimitReached:
        pass
    return col.report()


def validate_indexed_modification(m, limit=DEFAULT_LIMIT):
    eta, eps = m.source, m.target
    D1, D2 = eta.source, eta.target
    B = D1.base
    col = Collector(limit)
    try:
        for b in sorted(B.objects):
            t = m.comp.get(b)
            if t is None or not (functors_equal(t.source, eta.comp[b]) and functors_equal(t.target, eps.comp[b])):
                col.add("malformed.component", b, malformed=True)
                continue
            col.check(t.is_strict, "component.strict", b)
            for v in validate_transformation(t, limit).violations:
                col.add("component." + v.law, b, *v.witness)
        if col.items:
            raise LimitReached
        for f in sorted(B.one_cells):
            b, b2 = B.one_cells[f]
            lhs = whisker_left(D2.on_1[f], m.comp[b2])
            rhs = whisker_right(m.comp[b], D1.on_1[f])
            col.check(transformations_equal(lhs, rhs), "modification.axiom", f)
    except LimitReached:
        pass
    return col.report()


def validate_indexed_perturbation(p, limit=DEFAULT_LIMIT):
    G, L = p.source, p.target
    D1, D2 = G.source.source, G.source.target
    B = D1.base
    col = Collector(limit)
    try:
        for b in sorted(B.objects):
            m = p.comp.get(b)
            if m is None or not (transformations_equal(m.source, G.comp[b])
                                 and transformations_equal(m.target, L.comp[b])):
                col.add("malformed.component", b, malformed=True)
                continue
            for v in validate_modification(m, limit).violations:
                col.add("component." + v.law, b, *v.witness)
        if col.items:
            raise LimitReached
        for f in sorted(B.one_cells):
            b, b2 = B.one_cells[f]
            F2, F1 = D2.on_1[f], D1.on_1[f]
            lhs = {x: F2.two[c] for x, c in p.comp[b2].comp.items()}
            rhs = {x: p.comp[b].comp[F1.obj[x]] for x in D1.on_obj[b2].objects}
            col.check(lhs == rhs, "perturbation.axiom", f)
    except LimitReached:
        pass
    return col.report()


# ------------------------------------------------------ trihomomorphisms

@dataclass
class AdjointData:
    """Componentwise adjoint equivalence data for a transformation t.

    inverse[x]: t*_x, unit[x]: 1 => t*_x.t_x, counit[x]: t_x.t*_x => 1.
    """
    inverse: dict
    unit: dict
    counit: dict


def identity_adjoint(t):
    D = t.cod
    return AdjointData({x: c for x, c in t.comp0.items()},
                       {x: D.id2[D.id1[D.src1(c)]] for x, c in t.comp0.items()},
                       {x: D.id2[D.id1[D.tgt1(c)]] for x, c in t.comp0.items()})


def find_adjoint(D, f):
    """Adjoint equivalence data (g, unit, counit) for f, or None."""
    x, y = D.one_cells[f]
    for g in D.hom.get((y, x), []):
        for eta in D.isos(D.id1[x], D.c1(g, f)):
            for eps in D.isos(D.c1(f, g), D.id1[y]):
                # strict codomain: no associators in the zig-zags
                z1 = D.v(D.wr(eps, f), D.wl(f, eta))
                z2 = D.v(D.wl(g, eps), D.wr(eta, g))
                if z1 == D.id2[f] and z2 == D.id2[g]:
                    return g, eta, eps
    return None


def check_adjoint(D, t, adj, col, law, *key):
    for x, f in sorted(t.comp0.items()):
        g = adj.inverse.get(x)
        eta, eps = adj.unit.get(x), adj.counit.get(x)
        xs, ys = D.one_cells[f]
        ok = (g in D.one_cells and D.one_cells[g] == (ys, xs)
              and eta in D.two_cells and D.two_cells[eta] == (D.id1[xs], D.c1(g, f))
              and eps in D.two_cells and D.two_cells[eps] == (D.c1(f, g), D.id1[ys]))
        if not ok:
            col.add(law + ".malformed", *key, x)
            continue
        col.check(D.is_iso(eta) and D.is_iso(eps), law + ".invertible", *key, x)
        col.check(D.v(D.wr(eps, f), D.wl(f, eta)) == D.id2[f], law + ".triangle_left", *key, x)
        col.check(D.v(D.wl(g, eps), D.wr(eta, g)) == D.id2[g], law + ".triangle_right", *key, x)


class Trihomomorphism:
    """Data of a trihomomorphism B^coop -> Bicat with strict fibres.

    Fibres are strict 2-categories, reindexings are 2-functors, and the local
    functors B(a,b) -> Hom(Fb, Fa) are strict.  The weak structure lives in

        chi[(g, f)]     : Ff.Fg => F(g.f)           (pseudo-natural)
        iota[a]         : 1 => F(1_a)               (pseudo-natural)
        chi2[(be, al)]  : chi_jf.(Fal*Fbe) => F(be*al).chi_kg
        iota2[a]        : iota_a => iota_a
        omega[(h,g,f)]  : chi_(hg)f.Ff(chi_hg) => Fa.chi_h(gf).chi_gf Fh
        gamma[f]        : chi_(1,f).Ff(iota) => F(l_f)
        delta[f]        : chi_(f,1).iota Ff => F(r_f)

    where chi2, iota2, omega, gamma, delta hold per-object 2-cell components.
    """

    kind = "trihomomorphism"

    def __init__(self, base, on_obj, on_1, on_2, chi, chi_adj, iota, iota_adj,
                 chi2, iota2, omega, gamma, delta, name=""):
        self.base = base
        self.on_obj, self.on_1, self.on_2 = dict(on_obj), dict(on_1), dict(on_2)
        self.chi, self.chi_adj = dict(chi), dict(chi_adj)
        self.iota, self.iota_adj = dict(iota), dict(iota_adj)
        self.chi2, self.iota2 = dict(chi2), dict(iota2)
        self.omega, self.gamma, self.delta = dict(omega), dict(gamma), dict(delta)
        self.name = name

    def chi_cell(self, g, f, x):
        return self.chi[(g, f)].comp0[x]

    def iota_cell(self, a, x):
        return self.iota[a].comp0[x]

    # the transformations that the modification families relate
    def chi2_source(self, be, al):
        B = self.base
        j, f = B.src2(be), B.src2(al)
        return vcomp_t(self.chi[(j, f)], hcomp_t(self.on_2[al], self.on_2[be]))

    def chi2_target(self, be, al):
        B = self.base
        k, g = B.tgt2(be), B.tgt2(al)
        return vcomp_t(self.on_2[B.h(be, al)], self.chi[(k, g)])

    def omega_source(self, h, g, f):
        B = self.base
        return vcomp_t(self.chi[(B.c1(h, g), f)], whisker_left(self.on_1[f], self.chi[(h, g)]))

    def omega_target(self, h, g, f):
        B = self.base
        t = vcomp_t(self.chi[(h, B.c1(g, f))], whisker_right(self.chi[(g, f)], self.on_1[h]))
        return vcomp_t(self.on_2[B.a(h, g, f)], t)

    def gamma_source(self, f):
        B = self.base
        y = B.tgt1(f)
        return vcomp_t(self.chi[(B.id1[y], f)], whisker_left(self.on_1[f], self.iota[y]))

    def gamma_target(self, f):
        return self.on_2[self.base.l(f)]

    def delta_source(self, f):
        B = self.base
        x = B.src1(f)
        return vcomp_t(self.chi[(f, B.id1[x])], whisker_right(self.iota[x], self.on_1[f]))

    def delta_target(self, f):
        return self.on_2[self.base.r(f)]

    def modification_families(self):
        """(label, key, source, target, components) for every family."""
        B = self.base
        out = []
        for be, al in enumerate_composable(B, 2, 1):
            out.append(("chi2", (be, al), self.chi2_source(be, al), self.chi2_target(be, al),
                        self.chi2.get((be, al))))
        for a in sorted(B.objects):
            out.append(("iota2", (a,), self.iota[a], vcomp_t(self.on_2[B.id2[B.id1[a]]], self.iota[a]),
                        self.iota2.get(a)))
        for h, g, f in enumerate_composable(B, 3, 1, dim=1):
            out.append(("omega", (h, g, f), self.omega_source(h, g, f), self.omega_target(h, g, f),
                        self.omega.get((h, g, f))))
        for f in sorted(B.one_cells):
            out.append(("gamma", (f,), self.gamma_source(f), self.gamma_target(f), self.gamma.get(f)))
            out.append(("delta", (f,), self.delta_source(f), self.delta_target(f), self.delta.get(f)))
        return out


def validate_trihomomorphism(F, limit=DEFAULT_LIMIT):
    """Local axioms only; the global ones surface through weak ∫F."""
    B = F.base
    col = Collector(limit)
    try:
        for v in validate(B, limit).violations:
            col.add("base." + v.law, *v.witness, malformed=v.malformed)
        if col.items:
            raise LimitReached
        for b in sorted(B.objects):
            X = F.on_obj.get(b)
            if not isinstance(X, TwoCategory):
                col.add("malformed.fibre", b, malformed=True)
                continue
            for v in validate_two_category(X, limit).violations:
                col.add("fibre." + v.law, b, *v.witness, malformed=v.malformed)
        for f in sorted(B.one_cells):
            b, b2 = B.one_cells[f]
            G = F.on_1.get(f)
            if G is None or G.dom != F.on_obj[b2] or G.cod != F.on_obj[b]:
                col.add("malformed.reindexing", f, malformed=True)
                continue
            for v in validate_two_functor(G, limit).violations:
                col.add("reindexing." + v.law, f, *v.witness)
        for a in sorted(B.two_cells):
            f, g = B.two_cells[a]
            t = F.on_2.get(a)
            if t is None or not (functors_equal(t.source, F.on_1[g]) and functors_equal(t.target, F.on_1[f])):
                col.add("malformed.two_cell_action", a, malformed=True)
                continue
            for v in validate_transformation(t, limit).violations:
                col.add("two_cell_action." + v.law, a, *v.witness)
        if col.items:
            raise LimitReached
        # strict local functors
        for f in sorted(B.one_cells):
            col.check(transformations_equal(F.on_2[B.id2[f]], identity_transformation(F.on_1[f])),
                      "local.identity", f)
        for be, al in enumerate_composable(B, 2, 2):
            col.check(transformations_equal(F.on_2[B.v(be, al)], vcomp_t(F.on_2[al], F.on_2[be])),
                      "local.vcomp", be, al)
        # chi and iota are pseudo-natural adjoint equivalences
        for g, f in enumerate_composable(B, 2, 1, dim=1):
            t = F.chi.get((g, f))
            X = F.on_obj[B.src1(f)]
            want_s, want_t = compose(F.on_1[f], F.on_1[g]), F.on_1[B.c1(g, f)]
            if t is None or not (functors_equal(t.source, want_s) and functors_equal(t.target, want_t)):
                col.add("chi.malformed", g, f)
                continue
            for v in validate_transformation(t, limit).violations:
                col.add("chi." + v.law, g, f, *v.witness)
            check_adjoint(X, t, F.chi_adj[(g, f)], col, "chi.adjoint", g, f)
        for a in sorted(B.objects):
            t = F.iota.get(a)
            X = F.on_obj[a]
            if t is None or not (functors_equal(t.source, identity_functor(X))
                                 and functors_equal(t.target, F.on_1[B.id1[a]])):
                col.add("iota.malformed", a)
                continue
            for v in validate_transformation(t, limit).violations:
                col.add("iota." + v.law, a, *v.witness)
            check_adjoint(X, t, F.iota_adj[a], col, "iota.adjoint", a)
        if col.items:
            raise LimitReached
        # invertible modifications
        for label, key, s, t, comp in F.modification_families():
            X = s.cod
            if comp is None:
                col.add(label + ".missing", *key)
                continue
            m = Modification(s, t, comp)
            for v in validate_modification(m, limit).violations:
                col.add(label + "." + v.law, *key, *v.witness)
            for x in sorted(comp):
                if comp[x] in X.two_cells:
                    col.check(X.is_iso(comp[x]), label + ".invertible", *key, x)
        # functoriality of chi2 in the pair of base 2-cells
        for be, al in enumerate_composable(B, 2, 1):
            if B.is_identity2(be) and B.is_identity2(al):
                X = F.on_obj[B.src1(B.src2(al))]
                ok = all(X.is_identity2(c) for c in F.chi2[(be, al)].values())
                col.check(ok, "chi2.identity", be, al)
        for (be2, be1) in enumerate_composable(B, 2, 2):
            for (al2, al1) in enumerate_composable(B, 2, 2):
                if B.tgt1(B.src2(al1)) != B.src1(B.src2(be1)):
                    continue
                X = F.on_obj[B.src1(B.src2(al1))]
                outer = F.on_2[B.h(be1, al1)]
                inner = hcomp_t(F.on_2[al2], F.on_2[be2])
                got = F.chi2[(B.v(be2, be1), B.v(al2, al1))]
                for x in sorted(got):
                    want = X.v(X.wl(outer.comp0[x], F.chi2[(be2, al2)][x]),
                               X.wr(F.chi2[(be1, al1)][x], inner.comp0[x]))
                    if got[x] != want:
                        col.add("chi2.vertical", be2, be1, al2, al1, x)
                        break
    except LimitReached:
        pass
    return col.report()


def embed_diagram(D):
    """A strict indexed diagram as a trihomomorphism with identity data."""
    B = D.base
    chi, chi_adj, chi2 = {}, {}, {}
    for g, f in enumerate_composable(B, 2, 1, dim=1):
        X = D.on_obj[B.src1(f)]
        src = compose(D.on_1[f], D.on_1[g])
        t = Transformation(src, D.on_1[B.c1(g, f)], {x: X.id1[src.obj[x]] for x in src.dom.objects})
        chi[(g, f)] = t
        chi_adj[(g, f)] = identity_adjoint(t)
    iota, iota_adj, iota2 = {}, {}, {}
    for a in B.objects:
        X = D.on_obj[a]
        t = Transformation(identity_functor(X), D.on_1[B.id1[a]], {x: X.id1[x] for x in X.objects})
        iota[a], iota_adj[a] = t, identity_adjoint(t)
        iota2[a] = {x: X.id2[X.id1[x]] for x in X.objects}

    for be, al in enumerate_composable(B, 2, 1):
        X = D.on_obj[B.src1(B.src2(al))]
        t = D.on_2[B.h(be, al)]
        chi2[(be, al)] = {z: X.id2[c] for z, c in t.comp0.items()}
    omega, gamma, delta = {}, {}, {}
    for h, g, f in enumerate_composable(B, 3, 1, dim=1):
        X = D.on_obj[B.src1(f)]
        Z = D.on_obj[B.tgt1(h)]
        G = D.on_1[B.c1(B.c1(h, g), f)]
        omega[(h, g, f)] = {z: X.id2[X.id1[G.obj[z]]] for z in Z.objects}
    for f in B.one_cells:
        X = D.on_obj[B.src1(f)]
        Y = D.on_obj[B.tgt1(f)]
        G = D.on_1[f]
        gamma[f] = {y: X.id2[X.id1[G.obj[y]]] for y in Y.objects}
        delta[f] = dict(gamma[f])
    return Trihomomorphism(B, D.on_obj, D.on_1, D.on_2, chi, chi_adj, iota, iota_adj,
                           chi2, iota2, omega, gamma, delta, name=D.name)
