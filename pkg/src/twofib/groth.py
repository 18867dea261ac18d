"""The strict Grothendieck construction, its pseudo-inverse and the round trip.

Cell names of the total 2-category:

    objects   (x|xb)                 xb an object of F(x)
    1-cells   (f|fb|yb)              fb: xb -> Ff(yb) in F(x)
    2-cells   (al|alb|gb|yb)         alb: fb => F(al)_yb . gb in F(x)

so every cell records enough data to recover its boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import DEFAULT_LIMIT, Collector, LimitReached, subcategory, tabulate, tup
from .fib_strict import (Cleavage, Projection, as_projection, check_cartesian_functor,
                         check_cleavage, preserves_chosen)
from .maps import (IndexedTwoDiagram, Transformation, TwoFunctor, compose,
                   validate_two_functor)


@dataclass
class Construction:
    """A total category with its projection, cleavage and name decoding."""
    total: object
    projection: Projection
    cleavage: Cleavage
    parts: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.total, self.projection, self.cleavage))


class NotSplitError(ValueError):
    """A cleavage failed one of the split equations."""

    def __init__(self, flag, witness):
        super().__init__(f"cleavage is not split: {flag} at {witness}")
        self.flag, self.witness = flag, tuple(witness)


def grothendieck_strict(D, name=None):
    """Total 2-category, projection and canonical cleavage of a diagram."""
    B = D.base
    X = D.on_obj
    parts = {}
    objects = []
    for x in sorted(B.objects):
        for xb in sorted(X[x].objects):
            n = tup(x, xb)
            objects.append(n)
            parts[n] = (x, xb)
    one = {}
    for f in sorted(B.one_cells):
        x, y = B.one_cells[f]
        Ff = D.on_1[f]
        for yb in sorted(X[y].objects):
            for fb, (s, t) in sorted(X[x].one_cells.items()):
                if t == Ff.obj[yb]:
                    n = tup(f, fb, yb)
                    one[n] = (tup(x, s), tup(y, yb))
                    parts[n] = (f, fb, yb)
    two = {}
    for al in sorted(B.two_cells):
        f, g = B.two_cells[al]
        x, y = B.one_cells[f]
        Fal = D.on_2[al]
        Ff, Fg = D.on_1[f], D.on_1[g]
        Xx = X[x]
        for yb in sorted(X[y].objects):
            comp = Fal.comp0[yb]
            for gb, (s, t) in sorted(Xx.one_cells.items()):
                if t != Fg.obj[yb]:
                    continue
                tgt = Xx.c1(comp, gb)
                for ab, (fb, tb) in sorted(Xx.two_cells.items()):
                    if tb == tgt:
                        n = tup(al, ab, gb, yb)
                        two[n] = (tup(f, fb, yb), tup(g, gb, yb))
                        parts[n] = (al, ab, gb, yb)

    def id1(o):
        x, xb = parts[o]
        return tup(B.id1[x], X[x].id1[xb], xb)

    def id2(c):
        f, fb, yb = parts[c]
        x = B.src1(f)
        return tup(B.id2[f], X[x].id2[fb], fb, yb)

    def comp1(c2, c1):
        g, gb, zb = parts[c2]
        f, fb, _ = parts[c1]
        x = B.src1(f)
        return tup(B.c1(g, f), X[x].c1(D.on_1[f].one[gb], fb), zb)

    def vcomp(c2, c1):
        ga, gab, hb, yb = parts[c2]
        al, ab, _, _ = parts[c1]
        x = B.src1(B.src2(al))
        Xx = X[x]
        comp = D.on_2[al].comp0[yb]
        return tup(B.v(ga, al), Xx.v(Xx.wl(comp, gab), ab), hb, yb)

    def hcomp(c2, c1):
        be, bb, kb, zb = parts[c2]
        al, ab, gb, yb = parts[c1]
        f, g = B.two_cells[al]
        x = B.src1(f)
        Xx = X[x]
        Ff, Fg = D.on_1[f], D.on_1[g]
        return tup(B.h(be, al), Xx.h(Ff.two[bb], ab), Xx.c1(Fg.one[kb], gb), zb)

    E = tabulate(objects, one, two, id1, id2, comp1, vcomp, hcomp,
                 name=name or f"el({D.name})")
    P = TwoFunctor(E, B, {o: parts[o][0] for o in E.objects},
                   {c: parts[c][0] for c in E.one_cells},
                   {c: parts[c][0] for c in E.two_cells}, name=f"P_{D.name}")
    lift1, lift2 = {}, {}
    for f in sorted(B.one_cells):
        x, y = B.one_cells[f]
        Ff = D.on_1[f]
        for yb in sorted(X[y].objects):
            lift1[(f, tup(y, yb))] = tup(f, X[x].id1[Ff.obj[yb]], yb)
    for c in sorted(E.one_cells):
        g, gb, yb = parts[c]
        x = B.src1(g)
        for al in sorted(B.two_cells):
            if B.tgt2(al) != g:
                continue
            Xx = X[x]
            lift2[(al, c)] = tup(al, Xx.id2[Xx.c1(D.on_2[al].comp0[yb], gb)], gb, yb)
    proj = Projection(P, name=P.name)
    return Construction(E, proj, Cleavage(lift1, lift2, name=f"canonical_{D.name}"), parts)


# ---------------------------------------------------------------- inverse

def fibre_strict(proj, b, name=None):
    """Sub-2-category of cells over b, 1_b and 1_(1_b)."""
    E, B, P = proj.E, proj.B, proj.P
    i = B.id1[b]
    ii = B.id2[i]
    objs = [e for e in E.objects if P.obj[e] == b]
    one = [f for f in sorted(E.one_cells) if P.one[f] == i]
    two = [a for a in sorted(E.two_cells) if P.two[a] == ii]
    return subcategory(E, objs, one, two, name=name or f"{E.name}_{b}")


def _require_split(proj, C):
    rep = check_cleavage(proj, C)
    for flag in ("total", "cartesian", "split_identities", "split_1cells",
                 "locally_split", "horizontally_split"):
        if not rep.flags[flag]:
            raise NotSplitError(flag, rep.witnesses[flag][0])


def _unique(cands, what):
    if len(cands) != 1:
        raise ValueError(f"{what}: expected a unique solution, found {len(cands)}")
    return cands[0]


def reindexing_strict(proj, C, f, fibres):
    """f*: E_b' -> E_b defined by unique lifts through the chosen 1-cells."""
    E, B = proj.E, proj.B
    b, b2 = B.one_cells[f]
    src, dst = fibres[b2], fibres[b]
    L = C.lift1
    obj = {e: E.src1(L[(f, e)]) for e in src.objects}
    one = {}
    for k, (e, e2) in src.one_cells.items():
        top = E.c1(k, L[(f, e)])
        one[k] = _unique([h for h in dst.hom.get((obj[e], obj[e2]), []) if E.c1(L[(f, e2)], h) == top],
                         f"reindex {f} on {k}")
    two = {}
    for a, (k, h) in src.two_cells.items():
        e = src.src1(k)
        top = E.wr(a, L[(f, e)])
        e2 = src.tgt1(k)
        two[a] = _unique([c for c in dst.cells2(one[k], one[h]) if E.wl(L[(f, e2)], c) == top],
                         f"reindex {f} on {a}")
    return TwoFunctor(src, dst, obj, one, two, name=f"{f}*")


def invert_strict(proj, C, name=None):
    """The indexed diagram of fibres and reindexings of a split 2-fibration."""
    proj = as_projection(proj)
    _require_split(proj, C)
    E, B = proj.E, proj.B
    fibres = {b: fibre_strict(proj, b) for b in sorted(B.objects)}
    on_1 = {f: reindexing_strict(proj, C, f, fibres) for f in sorted(B.one_cells)}
    on_2 = {}
    for s in sorted(B.two_cells):
        f, g = B.two_cells[s]
        b, b2 = B.one_cells[f]
        Fb = fibres[b]
        comp0 = {}
        for e in fibres[b2].objects:
            d = E.src2(C.lift2[(s, C.lift1[(g, e)])])
            lf = C.lift1[(f, e)]
            src, dst = on_1[g].obj[e], on_1[f].obj[e]
            comp0[e] = _unique([h for h in Fb.hom.get((src, dst), []) if E.c1(lf, h) == d],
                               f"component of {s}* at {e}")
        on_2[s] = Transformation(on_1[g], on_1[f], comp0, name=f"{s}*")
    return IndexedTwoDiagram(B, fibres, on_1, on_2, name=name or f"F_{proj.name}")


@dataclass
class RoundTrip:
    H: TwoFunctor
    report: object
    construction: Construction

    def __iter__(self):
        return iter((self.H, self.report))


def roundtrip_iso_strict(proj, C, limit=DEFAULT_LIMIT):
    """H: el(F_P) -> E, checked to be a split cartesian isomorphism over B."""
    proj = as_projection(proj)
    D = invert_strict(proj, C)
    G = grothendieck_strict(D)
    E, B, P = proj.E, proj.B, proj.P
    T, parts = G.total, G.parts
    L1, L2 = C.lift1, C.lift2
    obj = {o: parts[o][1] for o in T.objects}
    one = {}
    for c in T.one_cells:
        f, fb, yb = parts[c]
        one[c] = E.c1(L1[(f, yb)], fb)
    two = {}
    for c in T.two_cells:
        al, ab, gb, yb = parts[c]
        f, g = B.two_cells[al]
        lg = L1[(g, yb)]
        two[c] = E.v(E.wr(L2[(al, lg)], gb), E.wl(L1[(f, yb)], ab))
    H = TwoFunctor(T, E, obj, one, two, name=f"H_{proj.name}")
    col = Collector(limit)
    try:
        for v in validate_two_functor(H, limit).violations:
            col.add("H." + v.law, *v.witness, malformed=v.malformed)
        if col.items:
            raise LimitReached
        PH = compose(P, H)
        pi = G.projection.P
        for label, a, b in (("obj", PH.obj, pi.obj), ("one", PH.one, pi.one), ("two", PH.two, pi.two)):
            for k in sorted(b):
                col.check(a[k] == b[k], "over_base", label, k)
        for label, m, universe in (("obj", obj, E.objects), ("one", one, E.one_cells),
                                   ("two", two, E.two_cells)):
            image = {}
            for k in sorted(m):
                image.setdefault(m[k], []).append(k)
            for k, ks in sorted(image.items()):
                col.check(len(ks) == 1, "injective", label, *ks)
            for k in sorted(universe):
                col.check(k in image, "surjective", label, k)
        for v in check_cartesian_functor(G.projection, proj, H, cleavage=G.cleavage, limit=limit).violations:
            col.add("cartesian." + v.law, *v.witness)
        for v in preserves_chosen(H, G.projection, G.cleavage, proj, C, limit).violations:
            col.add(v.law, *v.witness)
    except LimitReached:
        pass
    return RoundTrip(H, col.report(), G)


# ---------------------------------------------------------------- cells

def grothendieck_map(D1, D2, cell, G1=None, G2=None):
    """The action on an indexed transformation, modification or perturbation.

    Returns a TwoFunctor, a Transformation or a dict of 2-cell components
    (one per object of the first total category) respectively.
    """
    from .maps import IndexedModification, IndexedPerturbation, IndexedTransformation
    G1 = G1 or grothendieck_strict(D1)
    G2 = G2 or grothendieck_strict(D2)
    if isinstance(cell, IndexedTransformation):
        return _map_transformation(D1, D2, cell, G1, G2)
    if isinstance(cell, IndexedModification):
        return _map_modification(D1, D2, cell, G1, G2)
    if isinstance(cell, IndexedPerturbation):
        return _map_perturbation(D1, D2, cell, G1, G2)
    raise TypeError(f"not an indexed cell: {cell!r}")


def _map_transformation(D1, D2, eta, G1, G2):
    if eta.source != D1 or eta.target != D2:
        raise ValueError("transformation boundary does not match the diagrams")
    p = G1.parts
    obj, one, two = {}, {}, {}
    for o in G1.total.objects:
        x, xb = p[o]
        obj[o] = tup(x, eta.comp[x].obj[xb])
    for c in G1.total.one_cells:
        f, fb, yb = p[c]
        x, y = D1.base.one_cells[f]
        one[c] = tup(f, eta.comp[x].one[fb], eta.comp[y].obj[yb])
    for c in G1.total.two_cells:
        al, ab, gb, yb = p[c]
        x, y = D1.base.one_cells[D1.base.src2(al)]
        ex = eta.comp[x]
        two[c] = tup(al, ex.two[ab], ex.one[gb], eta.comp[y].obj[yb])
    return TwoFunctor(G1.total, G2.total, obj, one, two, name=f"el({D1.name}->{D2.name})")


def _map_modification(D1, D2, m, G1, G2):
    Fs = _map_transformation(D1, D2, m.source, G1, G2)
    Ft = _map_transformation(D1, D2, m.target, G1, G2)
    p = G1.parts
    B = D1.base
    comp0 = {}
    for o in G1.total.objects:
        x, xb = p[o]
        comp0[o] = tup(B.id1[x], m.comp[x].comp0[xb], m.target.comp[x].obj[xb])
    return Transformation(Fs, Ft, comp0, name="el(Gamma)")


def _map_perturbation(D1, D2, z, G1, G2):
    p = G1.parts
    B = D1.base
    out = {}
    for o in G1.total.objects:
        x, xb = p[o]
        lam = z.target.comp[x].comp0[xb]
        out[o] = tup(B.id2[B.id1[x]], z.comp[x].comp[xb], lam, z.target.target.comp[x].obj[xb])
    return out


def is_vertical_transformation(t, Q):
    """Q.t is the identity transformation on the base."""
    B = Q.cod
    ok0 = all(Q.one[c] == B.id1[Q.obj[t.source.obj[x]]] for x, c in t.comp0.items())
    ok1 = all(Q.two[c] == B.id2[Q.one[t.target.one[f]]] or B.is_identity2(Q.two[c])
              for f, c in t.comp1.items())
    return ok0 and ok1
