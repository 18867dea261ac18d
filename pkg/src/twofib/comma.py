"""Comma constructions and composite fibrations.

The oplax comma <F|G> of F: C -> D and G: B -> D has

    objects   (x|x'|t)                 t: Fx -> Gx'
    1-cells   (f|f'|tf|tx|ty)          tf: ty.Ff => Gf'.tx
    2-cells   (al|al'|tf|tg|tx|ty)     (Gal'*tx).tf = tg.(ty*Fal)

and its projections d0, d1 onto C and B preserve everything on the nose.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import (DEFAULT_LIMIT, Collector, LimitReached, TwoCategory,
                   strict_view, subcategory, tabulate, tup)
from .fib_strict import (Cleavage, Projection, as_projection, cartesian_cells, check_cleavage,
                         check_two_fibration, default_cleavage)
from .fib_weak import check_fibration_weak
from .maps import Homomorphism, TwoFunctor, compose


class CommaError(ValueError):
    pass


def point(B, x):
    """The homomorphism 1 -> B picking out x."""
    from .fixtures import terminal
    i = B.id1[x]
    if B.is_strict:
        return TwoFunctor(terminal(), B, {"*": x}, {"id": i}, {"id": B.id2[i]}, name=f"pt_{x}")
    return Homomorphism(terminal(), B, {"*": x}, {"id": i}, {"id": B.id2[i]},
                        {("id", "id"): B.l(i)}, {"*": B.id2[i]}, name=f"pt_{x}")


@dataclass
class Comma:
    total: object
    d0: Homomorphism
    d1: Homomorphism
    F: Homomorphism
    G: Homomorphism
    tau0: dict
    tau1: dict
    parts: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.total, self.d0, self.d1, (self.tau0, self.tau1)))

    # chosen lifts for d0
    def lift1(self, f, o):
        """(f|1|s_f1) into o = (y|y'|s) along f: x -> y."""
        D, G = self.F.cod, self.G
        y, y2, s = self.parts[o]
        tx = D.c1(s, self.F.one[f])
        tf = D.seq(D.inv(D.l(tx)), D.wr(G.phi0(y2), tx))
        return tup(f, self.G.dom.id1[y2], tf, tx, s)

    def lift2(self, al, k):
        """(al|1) into k = (g|g'|tg) along al: f => g."""
        D = self.F.cod
        g, g2, tg, tx, ty = self.parts[k]
        tf = D.v(tg, D.wl(ty, self.F.two[al]))
        return tup(al, self.G.dom.id2[g2], tf, tg, tx, ty)

    def d0_cleavage(self):
        E, C = self.total, self.F.dom
        lift1, lift2 = {}, {}
        for o in E.objects:
            y = self.parts[o][0]
            for f in sorted(C.one_cells):
                if C.tgt1(f) == y:
                    lift1[(f, o)] = self.lift1(f, o)
        for k in sorted(E.one_cells):
            g = self.parts[k][0]
            for al in sorted(C.two_cells):
                if C.tgt2(al) == g:
                    lift2[(al, k)] = self.lift2(al, k)
        return Cleavage(lift1, lift2, name="d0_lifts")

    # chosen opcartesian 2-cell lifts for d1
    def oplift2(self, k, al2):
        """(1|al') out of k = (f|f'|tf) along al': f' => g'."""
        D, G = self.F.cod, self.G
        f, f2, tf, tx, ty = self.parts[k]
        tg = D.v(D.wr(G.two[al2], tx), tf)
        return tup(self.F.dom.id2[f], al2, tf, tg, tx, ty)


def oplax_comma(F, G, name=None):
    if F.cod != G.cod:
        raise CommaError(f"codomains differ: {F.cod.name} and {G.cod.name}")
    C, B, D = F.dom, G.dom, F.cod
    parts = {}
    objects = []
    for x in sorted(C.objects):
        for x2 in sorted(B.objects):
            for t in D.hom.get((F.obj[x], G.obj[x2]), []):
                n = tup(x, x2, t)
                objects.append(n)
                parts[n] = (x, x2, t)
    by_pair = {}
    for o in objects:
        x, x2, _ = parts[o]
        by_pair.setdefault((x, x2), []).append(o)
    one = {}
    for f in sorted(C.one_cells):
        x, y = C.one_cells[f]
        for f2 in sorted(B.one_cells):
            x2, y2 = B.one_cells[f2]
            for ox in by_pair.get((x, x2), []):
                tx = parts[ox][2]
                for oy in by_pair.get((y, y2), []):
                    ty = parts[oy][2]
                    for tf in D.cells2(D.c1(ty, F.one[f]), D.c1(G.one[f2], tx)):
                        n = tup(f, f2, tf, tx, ty)
                        one[n] = (ox, oy)
                        parts[n] = (f, f2, tf, tx, ty)
    par = {}
    for n in one:
        f, f2, tf, tx, ty = parts[n]
        par.setdefault((C.src1(f), C.tgt1(f), B.src1(f2), B.tgt1(f2), tx, ty), []).append(n)
    two = {}
    for key, ns in sorted(par.items()):
        tx, ty = key[4], key[5]
        for m in ns:
            f, f2, tf = parts[m][:3]
            for n in ns:
                g, g2, tg = parts[n][:3]
                for al in C.cells2(f, g):
                    rhs = D.v(tg, D.wl(ty, F.two[al]))
                    for al2 in B.cells2(f2, g2):
                        if D.v(D.wr(G.two[al2], tx), tf) == rhs:
                            c = tup(al, al2, tf, tg, tx, ty)
                            two[c] = (m, n)
                            parts[c] = (al, al2, tf, tg, tx, ty)

    def id1(o):
        x, x2, t = parts[o]
        tf = D.seq(D.wl(t, D.inv(F.phi0(x))), D.r(t), D.inv(D.l(t)), D.wr(G.phi0(x2), t))
        return tup(C.id1[x], B.id1[x2], tf, t, t)

    def id2(n):
        f, f2, tf, tx, ty = parts[n]
        return tup(C.id2[f], B.id2[f2], tf, tf, tx, ty)

    def tau_comp(n2, n1):
        g, g2, tg, ty, tz = parts[n2]
        f, f2, tf, tx, _ = parts[n1]
        Ff, Fg, Gf, Gg = F.one[f], F.one[g], G.one[f2], G.one[g2]
        return D.seq(D.wl(tz, D.inv(F.phi(g, f))), D.inv(D.a(tz, Fg, Ff)), D.wr(tg, Ff),
                     D.a(Gg, ty, Ff), D.wl(Gg, tf), D.inv(D.a(Gg, Gf, tx)),
                     D.wr(G.phi(g2, f2), tx))

    def comp1(n2, n1):
        g, g2, _, _, tz = parts[n2]
        f, f2, _, tx, _ = parts[n1]
        return tup(C.c1(g, f), B.c1(g2, f2), tau_comp(n2, n1), tx, tz)

    def vcomp(c2, c1):
        be, be2, _, th, tx, ty = parts[c2]
        al, al2, tf, _, _, _ = parts[c1]
        return tup(C.v(be, al), B.v(be2, al2), tf, th, tx, ty)

    def hcomp(c2, c1):
        be, be2 = parts[c2][:2]
        al, al2 = parts[c1][:2]
        m2, n2 = two[c2]
        m1, n1 = two[c1]
        return tup(C.h(be, al), B.h(be2, al2), tau_comp(m2, m1), tau_comp(n2, n1),
                   parts[c1][4], parts[c2][5])

    def assoc(h, g, f):
        s = comp1(comp1(h, g), f)
        t = comp1(h, comp1(g, f))
        ph, pg, pf = parts[h], parts[g], parts[f]
        return tup(C.a(ph[0], pg[0], pf[0]), B.a(ph[1], pg[1], pf[1]),
                   parts[s][2], parts[t][2], pf[3], ph[4])

    def lunit(f):
        pf = parts[f]
        y, y2 = C.tgt1(pf[0]), B.tgt1(pf[1])
        oy = tup(y, y2, pf[4])
        return tup(C.l(pf[0]), B.l(pf[1]), tau_comp(id1(oy), f), pf[2], pf[3], pf[4])

    def runit(f):
        pf = parts[f]
        x, x2 = C.src1(pf[0]), B.src1(pf[1])
        ox = tup(x, x2, pf[3])
        return tup(C.r(pf[0]), B.r(pf[1]), tau_comp(f, id1(ox)), pf[2], pf[3], pf[4])

    strict = C.is_strict and B.is_strict and D.is_strict and F.is_strict and G.is_strict
    kw = {} if strict else dict(assoc=assoc, lunit=lunit, runit=runit)
    E = tabulate(objects, one, two, id1, id2, comp1, vcomp, hcomp,
                 name=name or f"<{F.name}|{G.name}>", strict=strict, **kw)
    d0 = _projection(E, C, parts, 0, strict, "d0")
    d1 = _projection(E, B, parts, 1, strict, "d1")
    tau0 = {o: parts[o][2] for o in E.objects}
    tau1 = {n: parts[n][2] for n in E.one_cells}
    return Comma(E, d0, d1, F, G, tau0, tau1, parts)


def _projection(E, X, parts, i, strict, name):
    obj = {o: parts[o][i] for o in E.objects}
    one = {n: parts[n][i] for n in E.one_cells}
    two = {c: parts[c][i] for c in E.two_cells}
    if strict:
        return TwoFunctor(E, X, obj, one, two, name=name)
    return Homomorphism(E, X, obj, one, two, name=name)


def check_projections_strict(cm, limit=DEFAULT_LIMIT):
    """d0 and d1 commute with every composition table on the nose."""
    E = cm.total
    col = Collector(limit)
    try:
        for d in (cm.d0, cm.d1):
            X = d.cod
            for x in E.objects:
                col.check(d.one[E.id1[x]] == X.id1[d.obj[x]], f"{d.name}.id1", x)
            for f in sorted(E.one_cells):
                col.check(d.two[E.id2[f]] == X.id2[d.one[f]], f"{d.name}.id2", f)
            for (g, f), gf in sorted(E.comp1.items()):
                col.check(d.one[gf] == X.c1(d.one[g], d.one[f]), f"{d.name}.comp1", g, f)
            for (b, a), ba in sorted(E.vcomp.items()):
                col.check(d.two[ba] == X.v(d.two[b], d.two[a]), f"{d.name}.vcomp", b, a)
            for (b, a), ba in sorted(E.hcomp.items()):
                col.check(d.two[ba] == X.h(d.two[b], d.two[a]), f"{d.name}.hcomp", b, a)
            if not E.is_strict:
                for k, c in sorted(E.assoc.items()):
                    col.check(d.two[c] == X.a(*(d.one[f] for f in k)), f"{d.name}.assoc", *k)
                for f in sorted(E.one_cells):
                    col.check(d.two[E.l(f)] == X.l(d.one[f]), f"{d.name}.lunit", f)
                    col.check(d.two[E.r(f)] == X.r(d.one[f]), f"{d.name}.runit", f)
    except LimitReached:
        pass
    return col.report()


def check_d0_fibration(cm, limit=DEFAULT_LIMIT, parallel=None):
    """Weak fibration flags for d0 plus checks on the explicit lifts."""
    proj = as_projection(cm.d0)
    E = cm.total
    C = cm.d0_cleavage()
    rep = check_fibration_weak(proj, C, limit, parallel)
    c1, c2 = cartesian_cells(proj, weak=True)
    bad = [k for k, v in sorted(C.lift1.items()) if v not in c1]
    bad += [k for k, v in sorted(C.lift2.items()) if v not in c2]
    rep.extras["chosen_cartesian"] = not bad
    rep.witnesses["chosen_cartesian"] = bad[:limit]
    # (al|1_g')*(be|1_k') = (al*be|1_g'k')
    Cd, Bd = cm.F.dom, cm.G.dom
    hc = []
    for (be, k2), L2 in sorted(C.lift2.items()):
        for (al, k1), L1 in sorted(C.lift2.items()):
            if E.tgt1(k1) != E.src1(k2):
                continue
            got = cm.parts[E.h(L2, L1)][:2]
            want = (Cd.h(be, al), Bd.id2[Bd.c1(cm.parts[k2][1], cm.parts[k1][1])])
            if got != want:
                hc.append((be, k2, al, k1))
    rep.extras["chosen_hcomp"] = not hc
    rep.witnesses["chosen_hcomp"] = hc[:limit]
    return rep


def _default_local_lifts(cm):
    E = cm.total
    out = {}
    for c in sorted(E.two_cells):
        m, n = E.two_cells[c]
        al, al2 = cm.parts[c][:2]
        out[c] = (cm.lift2(al, n), cm.oplift2(m, al2))
    return out


def check_two_sided_local(cm, lifts=None, limit=DEFAULT_LIMIT):
    """Each 2-cell splits as a d0-cartesian lift after a d1-opcartesian one."""
    E = cm.total
    Cd, Bd = cm.F.dom, cm.G.dom
    lifts = _default_local_lifts(cm) if lifts is None else lifts
    col = Collector(limit)
    try:
        for c in sorted(E.two_cells):
            cart, op = lifts[c]
            if cart not in E.two_cells or op not in E.two_cells:
                col.add("lift.missing", c)
                continue
            col.check(Bd.is_identity2(cm.d1.two[cart]), "eq1.d1_cartesian_identity", c, cart)
            col.check(Cd.is_identity2(cm.d0.two[op]), "eq2.d0_opcartesian_identity", c, op)
            ok = E.tgt2(op) == E.src2(cart) and E.v(cart, op) == c
            col.check(ok, "eq3.decomposition", c)
        # 1-cell level: d1 of the chosen lift is an identity and every 1-cell
        # factors through it up to an invertible 2-cell
        for o in E.objects:
            y = cm.parts[o][0]
            for f in sorted(Cd.one_cells):
                if Cd.tgt1(f) != y:
                    continue
                L = cm.lift1(f, o)
                col.check(cm.d1.one[L] == Bd.id1[cm.parts[o][1]], "one.d1_lift_identity", f, o)
        for n in sorted(E.one_cells):
            f, f2, tf, tx, ty = cm.parts[n]
            oy = E.tgt1(n)
            L = cm.lift1(f, oy)
            i = Cd.id1[Cd.src1(f)]
            found = any(E.isos(E.c1(L, u), n) for u in E.hom.get((E.src1(n), E.src1(L)), [])
                        if cm.d0.one[u] == i)
            col.check(found, "one.decomposition", n)
    except LimitReached:
        pass
    return col.report()


def free_fibration(H, name=None):
    """d0: B/H -> B, the oplax comma of the identity with H."""
    from .maps import identity_functor as _id
    B = H.cod
    I = _id(B) if B.is_strict else Homomorphism(B, B, {x: x for x in B.objects},
                                                {f: f for f in B.one_cells},
                                                {a: a for a in B.two_cells}, name="1")
    return oplax_comma(I, H, name=name or f"{B.name}/{H.name}")


# ------------------------------------------------------------ pullback variants

def _restrict(d, E2):
    keep = (lambda m, cells: {k: m[k] for k in cells})
    cls = TwoFunctor if isinstance(d, TwoFunctor) else Homomorphism
    if cls is TwoFunctor:
        return TwoFunctor(E2, d.cod, keep(d.obj, E2.objects), keep(d.one, E2.one_cells),
                          keep(d.two, E2.two_cells), name=d.name)
    return Homomorphism(E2, d.cod, keep(d.obj, E2.objects), keep(d.one, E2.one_cells),
                        keep(d.two, E2.two_cells), name=d.name)


@dataclass
class Pullback:
    total: object
    P: Homomorphism
    F: Homomorphism
    comma: Comma
    variant: str

    def __iter__(self):
        return iter((self.total, self.P, self.F))


def comma_pullback(P, F, variant="equiv", name=None):
    """Sub-bicategory of <F|P> cut out by the variant's conditions on tau.

    equiv: tau_x an equivalence, tau_f invertible
    iso:   tau_x invertible, tau_f an identity
    strict: tau_x and tau_f identities
    """
    P = as_projection(P).P
    if variant not in ("equiv", "iso", "strict"):
        raise CommaError(f"unknown variant {variant}")
    D = P.cod
    if variant != "equiv" and not (D.is_strict and F.dom.is_strict and P.dom.is_strict
                                   and F.is_strict and P.is_strict):
        raise CommaError(f"the {variant} variant needs strict 2-functors between 2-categories")
    cm = oplax_comma(F, P)
    E = cm.total
    if variant == "equiv":
        ok0 = D.is_equivalence
        ok1 = D.is_iso
    elif variant == "iso":
        ok0 = D.is_invertible1
        ok1 = D.is_identity2
    else:
        ok0 = (lambda t: t in set(D.id1.values()))
        ok1 = D.is_identity2
    objs = [o for o in E.objects if ok0(cm.parts[o][2])]
    keep = set(objs)
    one = [n for n in sorted(E.one_cells)
           if E.src1(n) in keep and E.tgt1(n) in keep and ok1(cm.parts[n][2])]
    keep1 = set(one)
    two = [c for c in sorted(E.two_cells) if E.src2(c) in keep1 and E.tgt2(c) in keep1]
    label = name or f"{F.name}x{variant}{P.name}"
    E2 = subcategory(E, objs, one, two, name=label)
    if variant != "equiv" and not isinstance(E2, TwoCategory):
        E2 = strict_view(E2)
    return Pullback(E2, _restrict(cm.d0, E2), _restrict(cm.d1, E2), cm, variant)


def ordinary_pullback(F, P, name=None):
    """Pairs of cells with equal images, named as the strict comma names them."""
    A, E, B = F.dom, P.dom, P.cod
    parts = {}

    def ends(f):
        return B.id1[F.obj[A.src1(f)]], B.id1[F.obj[A.tgt1(f)]]

    def obj(a, e):
        n = tup(a, e, B.id1[F.obj[a]])
        parts[n] = (a, e)
        return n

    def cell1(f, g):
        n = tup(f, g, B.id2[F.one[f]], *ends(f))
        parts[n] = (f, g)
        return n

    def cell2(al, be):
        f, g = A.two_cells[al]
        n = tup(al, be, B.id2[F.one[f]], B.id2[F.one[g]], *ends(f))
        parts[n] = (al, be)
        return n

    objs = [obj(a, e) for a in sorted(A.objects) for e in sorted(E.objects)
            if F.obj[a] == P.obj[e]]
    one = {cell1(f, g): (obj(A.src1(f), E.src1(g)), obj(A.tgt1(f), E.tgt1(g)))
           for f in sorted(A.one_cells) for g in sorted(E.one_cells) if F.one[f] == P.one[g]}
    two = {cell2(al, be): (cell1(*A.two_cells[al][:1], *E.two_cells[be][:1]),
                           cell1(A.tgt2(al), E.tgt2(be)))
           for al in sorted(A.two_cells) for be in sorted(E.two_cells) if F.two[al] == P.two[be]}

    def lift(opA, opE, mk):
        def op(n2, n1):
            (a2, e2), (a1, e1) = parts[n2], parts[n1]
            return mk(opA(a2, a1), opE(e2, e1))
        return op

    return tabulate(objs, one, two,
                    lambda o: cell1(A.id1[parts[o][0]], E.id1[parts[o][1]]),
                    lambda n: cell2(A.id2[parts[n][0]], E.id2[parts[n][1]]),
                    lift(A.c1, E.c1, cell1), lift(A.v, E.v, cell2), lift(A.h, E.h, cell2),
                    name=name or f"{F.name}x{P.name}")


def check_cartesian_map(Pp, P, Fp, weak=True, limit=DEFAULT_LIMIT):
    """Fp sends Pp-cartesian cells to P-cartesian ones and reflects them."""
    Pp, P = as_projection(Pp), as_projection(P)
    a1, a2 = cartesian_cells(Pp, weak)
    b1, b2 = cartesian_cells(P, weak)
    col = Collector(limit)
    try:
        for f in sorted(Pp.E.one_cells):
            col.check((f in a1) <= (Fp.one[f] in b1), "preserve.cart1", f)
            col.check((Fp.one[f] in b1) <= (f in a1), "reflect.cart1", f)
        for a in sorted(Pp.E.two_cells):
            col.check((a in a2) <= (Fp.two[a] in b2), "preserve.cart2", a)
            col.check((Fp.two[a] in b2) <= (a in a2), "reflect.cart2", a)
    except LimitReached:
        pass
    return col.report()


# ------------------------------------------------------------ composites

@dataclass
class Composite:
    projection: Projection
    cleavage: Cleavage
    report: object
    cleavage_report: object


def compose_fibrations(P, Q, CP=None, CQ=None, weak=None, limit=DEFAULT_LIMIT, parallel=None):
    """PQ with double lifts: lift along Q of the lift along P."""
    p, q = as_projection(P), as_projection(Q)
    if p.E != q.B:
        raise CommaError("Q must land in the domain of P")
    if weak is None:
        weak = not (p.P.is_strict and q.P.is_strict and p.E.is_strict and q.E.is_strict and p.B.is_strict)
    check = check_fibration_weak if weak else check_two_fibration
    for name, r in (("P", check(p, CP, limit, parallel)), ("Q", check(q, CQ, limit, parallel))):
        if not r.is_fibration:
            raise CommaError(f"{name} is not a fibration")
    CP = CP or default_cleavage(p, weak)
    CQ = CQ or default_cleavage(q, weak)
    Q_ = q.P
    PQ = compose(p.P, Q_, name=f"{p.name}{q.name}")
    lift1 = {}
    for (f, d), h in sorted(CP.lift1.items()):
        for e in q.E.objects:
            if Q_.obj[e] == d:
                lift1[(f, e)] = CQ.lift1[(h, e)]
    lift2 = {}
    for (al, d), a in sorted(CP.lift2.items()):
        for g in q.E.one_cells:
            if Q_.one[g] == d:
                lift2[(al, g)] = CQ.lift2[(a, g)]
    pq = Projection(PQ)
    C = Cleavage(lift1, lift2, name="double_lifts")
    return Composite(pq, C, check(pq, C, limit, parallel), check_cleavage(pq, C, weak, limit))
