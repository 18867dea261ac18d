"""The Grothendieck construction of a trihomomorphism.

Cells are named as in the strict construction; the difference is that
composition goes through chi and iota, and the coherence cells of the total
bicategory are pasted from omega, gamma, delta and the pseudo-naturality
cells of chi and iota.
"""
from __future__ import annotations

from .core import DEFAULT_LIMIT, Collector, LimitReached, tabulate, tup, validate_bicategory
from .fib_strict import Cleavage, Projection
from .groth import Construction
from .maps import Homomorphism, validate_trihomomorphism


def weak_grothendieck(F, name=None):
    """Total bicategory, strict projection and canonical cleavage of F."""
    B = F.base
    X = F.on_obj
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
        Ff = F.on_1[f]
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
        Fal, Fg = F.on_2[al], F.on_1[g]
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

    def chi(g, f, zb):
        return F.chi[(g, f)].comp0[zb]

    def id1(o):
        x, xb = parts[o]
        return tup(B.id1[x], F.iota[x].comp0[xb], xb)

    def id2(c):
        f, fb, yb = parts[c]
        x = B.src1(f)
        return tup(B.id2[f], X[x].id2[fb], fb, yb)

    def comp1(c2, c1):
        g, gb, zb = parts[c2]
        f, fb, _ = parts[c1]
        Xx = X[B.src1(f)]
        return tup(B.c1(g, f), Xx.chain1(chi(g, f, zb), F.on_1[f].one[gb], fb), zb)

    def vcomp(c2, c1):
        ga, gab, hb, yb = parts[c2]
        al, ab, _, _ = parts[c1]
        Xx = X[B.src1(B.src2(al))]
        return tup(B.v(ga, al), Xx.v(Xx.wl(F.on_2[al].comp0[yb], gab), ab), hb, yb)

    def hcomp(c2, c1):
        be, bb, kb, zb = parts[c2]
        al, ab, gb, yb = parts[c1]
        j, k = B.two_cells[be]
        f, g = B.two_cells[al]
        Xx = X[B.src1(f)]
        Ff, Fg = F.on_1[f], F.on_1[g]
        Fal, Fbe = F.on_2[al], F.on_2[be]
        c_jf = chi(j, f, zb)
        tail = Xx.c1(Fg.one[kb], gb)
        step1 = Xx.hseq(Xx.id2[c_jf], Ff.two[bb], ab)
        step2 = Xx.hseq(Xx.id2[Xx.c1(c_jf, Ff.one[Fbe.comp0[zb]])], Fal.comp1[kb], Xx.id2[gb])
        step3 = Xx.wr(F.chi2[(be, al)][zb], tail)
        return tup(B.h(be, al), Xx.seq(step1, step2, step3), Xx.c1(chi(k, g, zb), tail), zb)

    def assoc(c3, c2, c1):
        h, hb, zb = parts[c3]
        g, gb, yb = parts[c2]
        f, fb, _ = parts[c1]
        Xx = X[B.src1(f)]
        Ff = F.on_1[f]
        a = B.a(h, g, f)
        tail = Xx.c1(Ff.one[gb], fb)
        step1 = Xx.wr(F.omega[(h, g, f)][zb], Xx.c1(Ff.one[F.on_1[g].one[hb]], tail))
        nat = Xx.inv(F.chi[(g, f)].comp1[hb])
        front = Xx.c1(F.on_2[a].comp0[zb], chi(h, B.c1(g, f), zb))
        step2 = Xx.hseq(Xx.id2[front], nat, Xx.id2[tail])
        gf_part = Xx.chain1(chi(g, f, yb), Ff.one[gb], fb)
        return tup(a, Xx.seq(step1, step2), Xx.chain1(chi(h, B.c1(g, f), zb),
                                                      F.on_1[B.c1(g, f)].one[hb], gf_part), zb)

    def lunit(c):
        f, fb, yb = parts[c]
        Xx = X[B.src1(f)]
        return tup(B.l(f), Xx.wr(F.gamma[f][yb], fb), fb, yb)

    def runit(c):
        f, fb, yb = parts[c]
        x = B.src1(f)
        Xx = X[x]
        step1 = Xx.wl(chi(f, B.id1[x], yb), F.iota[x].comp1[fb])
        step2 = Xx.wr(F.delta[f][yb], fb)
        return tup(B.r(f), Xx.seq(step1, step2), fb, yb)

    E = tabulate(objects, one, two, id1, id2, comp1, vcomp, hcomp,
                 assoc=assoc, lunit=lunit, runit=runit,
                 name=name or f"el({F.name})", strict=False)
    P = Homomorphism(E, B, {o: parts[o][0] for o in E.objects},
                     {c: parts[c][0] for c in E.one_cells},
                     {c: parts[c][0] for c in E.two_cells}, name=f"P_{F.name}")
    lift1, lift2 = {}, {}
    for f in sorted(B.one_cells):
        x, y = B.one_cells[f]
        Ff = F.on_1[f]
        for yb in sorted(X[y].objects):
            lift1[(f, tup(y, yb))] = tup(f, X[x].id1[Ff.obj[yb]], yb)
    for c in sorted(E.one_cells):
        g, gb, yb = parts[c]
        Xx = X[B.src1(g)]
        for al in sorted(B.two_cells):
            if B.tgt2(al) == g:
                lift2[(al, c)] = tup(al, Xx.id2[Xx.c1(F.on_2[al].comp0[yb], gb)], gb, yb)
    return Construction(E, Projection(P, name=P.name),
                        Cleavage(lift1, lift2, name=f"canonical_{F.name}"), parts)


def check_weak_grothendieck(F, limit=DEFAULT_LIMIT):
    """Validate F locally, then the total bicategory and its projection."""
    col = Collector(limit)
    try:
        for v in validate_trihomomorphism(F, limit).violations:
            col.add("F." + v.law, *v.witness, malformed=v.malformed)
        if col.items:
            return col.report()
        c = weak_grothendieck(F)
        for v in validate_bicategory(c.total, limit).violations:
            col.add("total." + v.law, *v.witness, malformed=v.malformed)
    except LimitReached:
        pass
    return col.report()
