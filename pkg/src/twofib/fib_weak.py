"""Cartesian cells and fibrations of bicategories, and what is built from them.

Weak cartesianness is decided elementwise: every candidate lift (all
1-cells with the right boundary, all invertible 2-cells) is tried.  For
condition (2) the lexicographically first lift of each (h, alpha) is used.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import DEFAULT_LIMIT, Collector, LimitReached, tabulate, enumerate_composable, validate_bicategory
from .fib_strict import (YES, Verdict, as_projection,
                         cartesian_cells, check_cartesian_functor, check_fibration_flags,
                         chosen_hcomp_closed, default_cleavage)
from .maps import Homomorphism, validate_homomorphism


# ------------------------------------------------------------ cartesian 1-cells

def _lifts(proj, f, z):
    """First lift (h^, al^, be^) of every (g, h, al) at source object z."""
    E, B, P = proj.E, proj.B, proj.P
    x, y = E.one_cells[f]
    Pf = P.one[f]
    pz, px = P.obj[z], P.obj[x]
    out = {}
    for g in E.hom.get((z, y), []):
        for h in B.hom.get((pz, px), []):
            for al in B.isos(B.c1(Pf, h), P.one[g]):
                found = None
                for hh in E.hom.get((z, x), []):
                    phi = P.phi(f, hh)
                    for bb in B.isos(P.one[hh], h):
                        want = B.v(al, B.wl(Pf, bb))
                        for aa in E.isos(E.c1(f, hh), g):
                            if B.v(P.two[aa], phi) == want:
                                found = (hh, aa, bb)
                                break
                        if found:
                            break
                    if found:
                        break
                out[(g, h, al)] = found
    return out


def weak_lift_data(proj, f):
    """(witness or None, lifts, lifted 2-cells) for a 1-cell f.

    lifted maps (sigma, key, key2, delta) to the list of solutions delta^.
    """
    proj = as_projection(proj)
    E, B, P = proj.E, proj.B, proj.P
    x, y = E.one_cells[f]
    Pf = P.one[f]
    all_lifts, lifted = {}, {}
    for z in sorted(E.objects):
        lifts = _lifts(proj, f, z)
        for key, v in sorted(lifts.items()):
            if v is None:
                return ("lift1",) + key, all_lifts, lifted
        all_lifts.update(lifts)
        by_g = {}
        for key in sorted(lifts):
            by_g.setdefault(key[0], []).append(key)
        for s in E.hom2.get((z, y), []):
            g, g2 = E.two_cells[s]
            Ps = P.two[s]
            for k1 in by_g.get(g, []):
                _, h, al = k1
                hh, aa, bb = lifts[k1]
                top = E.v(s, aa)
                for k2 in by_g.get(g2, []):
                    _, h2, al2 = k2
                    hh2, aa2, bb2 = lifts[k2]
                    for d in B.cells2(h, h2):
                        if B.v(al2, B.wl(Pf, d)) != B.v(Ps, al):
                            continue
                        sols = [dd for dd in E.cells2(hh, hh2)
                                if E.v(aa2, E.wl(f, dd)) == top
                                and B.v(d, bb) == B.v(bb2, P.two[dd])]
                        lifted[(s, k1, k2, d)] = sols
                        if len(sols) != 1:
                            return ("lift2", s, h, al, h2, al2, d, len(sols)), all_lifts, lifted
    return None, all_lifts, lifted


def is_cartesian_1cell_weak(proj, f):
    w, _, _ = weak_lift_data(proj, f)
    return YES if w is None else Verdict(False, w)


def _cart1_weak_ok(proj, f):
    return bool(is_cartesian_1cell_weak(proj, f))


def is_cartesian_2cell_weak(proj, al):
    from .fib_strict import is_cartesian_2cell
    return is_cartesian_2cell(proj, al)


def check_fibration_weak(proj, cleavage=None, limit=DEFAULT_LIMIT, parallel=None):
    proj = as_projection(proj)
    rep = check_fibration_flags(proj, True, limit, parallel)
    C = cleavage or default_cleavage(proj, True, parallel)
    rep.extras["hcomp_closed_chosen"] = chosen_hcomp_closed(proj, C, weak=True).ok
    return rep


def weak_closure_report(proj, limit=DEFAULT_LIMIT):
    """Exhaustive check of the closure properties of weak cartesian cells."""
    proj = as_projection(proj)
    E, B, P = proj.E, proj.B, proj.P
    c1, c2 = cartesian_cells(proj, weak=True)
    col = Collector(limit)
    try:
        for f in sorted(E.one_cells):
            if E.is_equivalence(f):
                col.check(f in c1, "cart1.equivalence", f)
        for a in sorted(E.two_cells):
            f, g = E.two_cells[a]
            if f != g and E.is_iso(a):
                col.check((f in c1) == (g in c1), "cart1.iso_closed", f, g)
        for g, f in enumerate_composable(E, 2, 1, dim=1):
            gf = E.c1(g, f)
            if f in c1 and g in c1:
                col.check(gf in c1, "cart1.compose", g, f)
            if g in c1 and gf in c1:
                col.check(f in c1, "cart1.cancel", g, f)
        for f in sorted(c1):
            if B.is_equivalence(P.one[f]):
                col.check(E.is_equivalence(f), "cart1.equivalence_detect", f)
            # lifted 2-cells between isos are isos
            _, _, lifted = weak_lift_data(proj, f)
            for (s, k1, k2, d), sols in sorted(lifted.items()):
                if E.is_iso(s) and B.is_iso(d):
                    col.check(len(sols) == 1 and E.is_iso(sols[0]), "cart1.iso_lift", f, s, d)
            # cartesian lifts of the same 1-cell agree up to an equivalence
            y = E.tgt1(f)
            for f2 in proj.over1.get(P.one[f], []):
                if f2 in c1 and E.tgt1(f2) == y:
                    ok = any(E.is_equivalence(h) and E.isos(E.c1(f, h), f2)
                             for h in E.hom.get((E.src1(f2), E.src1(f)), []))
                    col.check(ok, "cart1.unique_equivalence", f, f2)
        for be, al in enumerate_composable(E, 2, 2):
            ba = E.v(be, al)
            if be in c2 and al in c2:
                col.check(ba in c2, "cart2.compose", be, al)
            if be in c2 and ba in c2:
                col.check(al in c2, "cart2.cancel", be, al)
        for a in sorted(c2):
            if B.is_iso(P.two[a]):
                col.check(E.is_iso(a), "cart2.iso_detect", a)
    except LimitReached:
        pass
    return col.report()


# ------------------------------------------------------------ equivalence lifting

def check_equivalence_lifting(proj, limit=DEFAULT_LIMIT):
    """Equivalences lift on the nose to equivalences, isos to isos."""
    proj = as_projection(proj)
    E, B, P = proj.E, proj.B, proj.P
    col = Collector(limit)
    try:
        for e in sorted(E.objects):
            pe = P.obj[e]
            for f in sorted(B.one_cells):
                if B.tgt1(f) != pe or not B.is_equivalence(f):
                    continue
                ok = any(E.tgt1(h) == e and E.is_equivalence(h) for h in proj.over1.get(f, []))
                col.check(ok, "lift.equivalence", f, e)
        for h in sorted(E.one_cells):
            ph = P.one[h]
            for al in sorted(B.two_cells):
                if B.tgt2(al) != ph or not B.is_iso(al):
                    continue
                ok = any(E.tgt2(a) == h and E.is_iso(a) for a in proj.over2.get(al, []))
                col.check(ok, "lift.iso", al, h)
    except LimitReached:
        pass
    return col.report()


def is_bigroupoid(B):
    return (all(B.is_equivalence(f) for f in B.one_cells)
            and all(B.is_iso(a) for a in B.two_cells))


# ------------------------------------------------------------ strictification

class NotLocallyFibred(ValueError):
    pass


@dataclass
class Strictification:
    E2: object
    P2: Homomorphism
    S: Homomorphism
    report: object

    def __iter__(self):
        return iter((self.P2, self.S))


def _unique_cell(cands, what):
    if len(cands) != 1:
        raise ValueError(f"{what}: {len(cands)} candidates")
    return cands[0]


def strictify(proj, cleavage=None, limit=DEFAULT_LIMIT):
    """Replace composition by domains of lifts of phi so P preserves it strictly."""
    proj = as_projection(proj)
    E, B, P = proj.E, proj.B, proj.P
    flags = check_fibration_flags(proj, weak=True, limit=limit)
    if not flags.flags["locally_fibred"]:
        raise NotLocallyFibred(flags.witnesses["locally_fibred"][0])
    C = cleavage or default_cleavage(proj, weak=True)
    L2 = C.lift2
    ell = {(g, f): L2[(P.phi(g, f), E.c1(g, f))] for g, f in enumerate_composable(E, 2, 1, dim=1)}
    ell0 = {x: L2[(P.phi0(x), E.id1[x])] for x in E.objects}
    comp = {k: E.src2(c) for k, c in ell.items()}
    unit = {x: E.src2(c) for x, c in ell0.items()}

    def inv(c):
        d = E.inv(c)
        if d is None:
            raise ValueError(f"lift {c} is not invertible")
        return d

    def hcomp(be, al):
        g, g2 = E.two_cells[be]
        f, f2 = E.two_cells[al]
        over = B.h(P.two[be], P.two[al])
        rhs = E.v(E.h(be, al), ell[(g, f)])
        return _unique_cell([t for t in E.cells2(comp[(g, f)], comp[(g2, f2)])
                             if P.two[t] == over and E.v(ell[(g2, f2)], t) == rhs],
                            f"strictified composite of {be}, {al}")

    def assoc(h, g, f):
        hg, gf = comp[(h, g)], comp[(g, f)]
        return E.seq(ell[(hg, f)], E.wr(ell[(h, g)], f), E.a(h, g, f),
                     inv(E.wl(h, ell[(g, f)])), inv(ell[(h, gf)]))

    def lunit(f):
        y = E.tgt1(f)
        return E.seq(ell[(unit[y], f)], E.wr(ell0[y], f), E.l(f))

    def runit(f):
        x = E.src1(f)
        return E.seq(ell[(f, unit[x])], E.wl(f, ell0[x]), E.r(f))

    E2 = tabulate(E.objects, E.one_cells, E.two_cells,
                  lambda x: unit[x], lambda f: E.id2[f],
                  lambda g, f: comp[(g, f)], E.v, hcomp,
                  assoc=assoc, lunit=lunit, runit=runit,
                  name=f"{E.name}'", strict=False)
    P2 = Homomorphism(E2, B, P.obj, P.one, P.two, name=f"{P.name}'")
    S = Homomorphism(E, E2, {x: x for x in E.objects}, {f: f for f in E.one_cells},
                     {a: a for a in E.two_cells},
                     {(g, f): ell[(g, f)] for (g, f) in ell},
                     {x: ell0[x] for x in E.objects}, name="S")
    col = Collector(limit)
    try:
        for v in validate_bicategory(E2, limit).violations:
            col.add("E'." + v.law, *v.witness)
        for v in validate_homomorphism(P2, limit).violations:
            col.add("P'." + v.law, *v.witness)
        col.check(P2.is_strict, "P'.strict")
        for v in validate_homomorphism(S, limit).violations:
            col.add("S." + v.law, *v.witness)
        from .maps import compose
        PS = compose(P2, S)
        col.check(PS.maps() == P.maps() and PS.phi_comp == P.phi_comp and PS.phi_id == P.phi_id,
                  "P'S=P")
        if flags.is_fibration:
            p2 = as_projection(P2)
            r = check_fibration_weak(p2, limit=limit)
            col.check(r.is_fibration, "P'.fibration")
            for v in check_cartesian_functor(proj, p2, S, weak=True, limit=limit).violations:
                col.add("S.cartesian." + v.law, *v.witness)
    except LimitReached:
        pass
    return Strictification(E2, P2, S, col.report())


# ------------------------------------------------------------ fibres

class FibreError(ValueError):
    pass


@dataclass
class Fibre:
    """A fibre bicategory with the lifts used to build it."""
    bicategory: object
    base_object: str
    comp_lift: dict
    unit_lift: dict


def _over_identity(proj, b, c, what):
    B = proj.B
    if proj.P.two[c] != B.id2[B.id1[b]]:
        raise FibreError(f"{what} {c} does not lie over the identity")
    return c


def fibre_bicategory(proj, C, b, name=None):
    """Cells over b, 1_b and 1_(1_b); composition through lifts of phi.r^-1."""
    proj = as_projection(proj)
    E, B, P = proj.E, proj.B, proj.P
    i, ii = B.id1[b], B.id2[B.id1[b]]
    objs = [e for e in sorted(E.objects) if P.obj[e] == b]
    one = {f: E.one_cells[f] for f in sorted(E.one_cells) if P.one[f] == i}
    two = {a: E.two_cells[a] for a in sorted(E.two_cells) if P.two[a] == ii and E.src2(a) in one}
    rinv = B.inv(B.r(i))
    kappa = {}
    for g, f in enumerate_composable(E, 2, 1, dim=1):
        if g in one and f in one:
            kappa[(g, f)] = C.lift2[(B.v(P.phi(g, f), rinv), E.c1(g, f))]
    iota = {e: C.lift2[(P.phi0(e), E.id1[e])] for e in objs}
    comp = {k: E.src2(c) for k, c in kappa.items()}
    unit = {e: E.src2(c) for e, c in iota.items()}
    for k, c in list(comp.items()) + list(unit.items()):
        if c not in one:
            raise FibreError(f"composite for {k} leaves the fibre")

    def inv(c):
        d = E.inv(c)
        if d is None:
            raise FibreError(f"{c} is not invertible")
        return d

    def hcomp(be, al):
        g, g2 = E.two_cells[be]
        f, f2 = E.two_cells[al]
        c = E.seq(kappa[(g, f)], E.h(be, al), inv(kappa[(g2, f2)]))
        return _over_identity(proj, b, c, "composite")

    def assoc(h, g, f):
        k1 = E.seq(kappa[(comp[(h, g)], f)], E.wr(kappa[(h, g)], f), E.a(h, g, f))
        k2 = E.seq(kappa[(h, comp[(g, f)])], E.wl(h, kappa[(g, f)]))
        return _over_identity(proj, b, E.v(inv(k2), k1), "associator")

    def lunit(f):
        y = E.tgt1(f)
        c = E.seq(kappa[(unit[y], f)], E.wr(iota[y], f), E.l(f))
        return _over_identity(proj, b, c, "left unitor")

    def runit(f):
        x = E.src1(f)
        c = E.seq(kappa[(f, unit[x])], E.wl(f, iota[x]), E.r(f))
        return _over_identity(proj, b, c, "right unitor")

    F = tabulate(objs, one, two, lambda e: unit[e], lambda f: E.id2[f],
                 lambda g, f: comp[(g, f)], E.v, hcomp,
                 assoc=assoc, lunit=lunit, runit=runit,
                 name=name or f"{E.name}_{b}", strict=False)
    return Fibre(F, b, kappa, iota)


def _fibre(proj, C, b, fibres):
    if b not in fibres:
        fibres[b] = fibre_bicategory(proj, C, b)
    return fibres[b]


# ------------------------------------------------------------ reindexing

@dataclass
class Reindexing:
    hom: Homomorphism
    kappa: dict
    report: object


def _canonical_square(proj, c2, hh, u, c):
    """The base iso P(c2.hh) => P(u.c) for a square over f and identities."""
    B, P = proj.B, proj.P
    f = P.one[c]
    return B.seq(B.inv(P.phi(c2, hh)), B.r(f), B.inv(B.l(f)), P.phi(u, c))


def _lift_square(proj, c, c2, u, dst):
    """First (hh, kappa) with kappa: c2.hh => u.c over the canonical iso."""
    E = proj.E
    x, x2 = E.src1(c), E.src1(c2)
    for hh in dst.hom.get((x, x2), []):
        want = _canonical_square(proj, c2, hh, u, c)
        for k in E.isos(E.c1(c2, hh), E.c1(u, c)):
            if proj.P.two[k] == want:
                return hh, k
    return None


def reindex(proj, C, f, fibres=None, limit=DEFAULT_LIMIT):
    """f*: fibre(b') -> fibre(b) as a homomorphism, with its comparison cells."""
    proj = as_projection(proj)
    E, B = proj.E, proj.B
    fibres = {} if fibres is None else fibres
    b, b2 = B.one_cells[f]
    src = _fibre(proj, C, b2, fibres)
    dst = _fibre(proj, C, b, fibres)
    S, D = src.bicategory, dst.bicategory
    L = {e: C.lift1[(f, e)] for e in S.objects}
    obj = {e: E.src1(L[e]) for e in S.objects}
    one, kappa = {}, {}
    for u in sorted(S.one_cells):
        e, e2 = S.one_cells[u]
        found = _lift_square(proj, L[e], L[e2], u, D)
        if found is None:
            raise FibreError(f"no lift of {u} along {L[e2]}")
        one[u], kappa[u] = found
    two = {}
    for t in sorted(S.two_cells):
        u, v = S.two_cells[t]
        e, e2 = S.one_cells[u]
        rhs = E.v(E.wr(t, L[e]), kappa[u])
        two[t] = _unique_cell([d for d in D.cells2(one[u], one[v])
                               if E.v(kappa[v], E.wl(L[e2], d)) == rhs], f"{f}* on {t}")

    def inv(c):
        return E.inv(c)

    phi = {}
    for v, u in enumerate_composable(S, 2, 1, dim=1):
        e, e1 = S.one_cells[u]
        e2 = S.tgt1(v)
        c, c1, c2 = L[e], L[e1], L[e2]
        vu = S.c1(v, u)
        vh, uh = one[v], one[u]
        # c2.(v^ *^ u^) => (v *^ u).c through the lifts and the squares
        path = E.seq(E.wl(c2, dst.comp_lift[(vh, uh)]),
                     inv(E.a(c2, vh, uh)), E.wr(kappa[v], uh), E.a(v, c1, uh),
                     E.wl(v, kappa[u]), inv(E.a(v, u, c)),
                     E.wr(inv(src.comp_lift[(v, u)]), c))
        phi[(v, u)] = _unique_cell([d for d in D.cells2(D.c1(vh, uh), one[vu])
                                    if E.v(kappa[vu], E.wl(c2, d)) == path],
                                   f"{f}* composition comparison at {v}, {u}")
    phi0 = {}
    for e in S.objects:
        c = L[e]
        x = obj[e]
        path = E.seq(E.wl(c, dst.unit_lift[x]), E.r(c), inv(E.l(c)), E.wr(inv(src.unit_lift[e]), c))
        one_e = S.id1[e]
        phi0[e] = _unique_cell([d for d in D.cells2(D.id1[x], one[one_e])
                                if E.v(kappa[one_e], E.wl(c, d)) == path],
                               f"{f}* unit comparison at {e}")
    H = Homomorphism(S, D, obj, one, two, phi, phi0, name=f"{f}*")
    return Reindexing(H, kappa, validate_homomorphism(H, limit))


def reindex_comparison(proj, C, g, f, fibres=None):
    """Components f*(g*e) -> (gf)*e of the comparison (gf)* ~ f* g*.

    Returns {e: (component, is_equivalence_in_fibre)}.
    """
    proj = as_projection(proj)
    E, B, P = proj.E, proj.B, proj.P
    fibres = {} if fibres is None else fibres
    b = B.src1(f)
    c_ = B.tgt1(g)
    D = _fibre(proj, C, b, fibres).bicategory
    src = _fibre(proj, C, c_, fibres).bicategory
    gf = B.c1(g, f)
    out = {}
    for e in sorted(src.objects):
        cg = C.lift1[(g, e)]
        cf = C.lift1[(f, E.src1(cg))]
        cgf = C.lift1[(gf, e)]
        target = E.c1(cg, cf)
        found = None
        for w in D.hom.get((E.src1(cf), E.src1(cgf)), []):
            want = B.v(P.phi(cg, cf), B.v(B.r(gf), B.inv(P.phi(cgf, w))))
            if any(P.two[k] == want for k in E.isos(E.c1(cgf, w), target)):
                found = w
                break
        out[e] = (found, found is not None and D.is_equivalence(found))
    return out


# ------------------------------------------------------------ factorization

@dataclass
class WeakFactor1:
    hat: str
    chosen: str
    iso: str
    alternatives: list = field(default_factory=list)   # (hat', iso', comparison or None)

    @property
    def unique_up_to_unique_iso(self):
        return all(c is not None and n == 1 for _, _, c, n in self.alternatives)


def _factor1_all(proj, C, f):
    E, B, P = proj.E, proj.B, proj.P
    z = E.tgt1(f)
    x = E.src1(f)
    c = C.lift1[(P.one[f], z)]
    i = B.id1[P.obj[x]]
    out = []
    for hh in E.hom.get((x, E.src1(c)), []):
        if P.one[hh] != i:
            continue
        for k in E.isos(E.c1(c, hh), f):
            if B.v(P.two[k], P.phi(c, hh)) == B.r(P.one[f]):
                out.append((hh, k))
    return c, out


def factor_1cell_weak(proj, C, f):
    """f ~ <Pf|z>.hat via an iso over r, unique up to unique vertical iso."""
    proj = as_projection(proj)
    E, B, P = proj.E, proj.B, proj.P
    c, sols = _factor1_all(proj, C, f)
    if not sols:
        raise FibreError(f"{f} does not factor through {c}")
    hh, k = sols[0]
    ii = B.id2[B.id1[P.obj[E.src1(f)]]]
    alts = []
    for hh2, k2 in sols:
        cands = [t for t in E.cells2(hh, hh2)
                 if P.two[t] == ii and E.is_iso(t) and E.v(k2, E.wl(c, t)) == k]
        alts.append((hh2, k2, cands[0] if cands else None, len(cands)))
    return WeakFactor1(hh, c, k, alts)


@dataclass
class WeakFactor2:
    hat_f: WeakFactor1
    hat_g: WeakFactor1
    hat_h: WeakFactor1
    chosen: str
    eta: str
    fibre_comp: str
    comp_lift: str
    hat_alpha: str
    solutions: int
    pasting_ok: bool
    alternatives: list = field(default_factory=list)   # (f^', g^', h^', al^', law holds)

    @property
    def unique_up_to_unique_iso(self):
        return self.solutions == 1 and all(ok for *_, ok in self.alternatives)


def _solve2(proj, fib, al, chi, pf, pg, ph):
    """eta and the candidates al^ for one choice of 1-cell factorizations."""
    E, B, P = proj.E, proj.B, proj.P
    (fh, cf, tf), (gh, _, tg), (hh, _, th) = pf, pg, ph
    h = E.src2(chi)
    rhs = E.seq(tf, al, E.inv(tg))
    over = B.v(P.phi(h, gh), B.inv(P.phi(cf, fh)))
    etas = [t for t in E.cells2(E.c1(cf, fh), E.c1(h, gh))
            if P.two[t] == over and E.v(E.wr(chi, gh), t) == rhs]
    if len(etas) != 1:
        raise FibreError(f"eta for {al}: {len(etas)} candidates")
    eta = etas[0]
    comp = fib.bicategory.c1(hh, gh)
    kappa = fib.comp_lift[(hh, gh)]
    target = E.seq(eta, E.wr(E.inv(th), gh), E.a(cf, hh, gh), E.wl(cf, E.inv(kappa)))
    ii = B.id2[B.id1[fib.base_object]]
    sols = [t for t in E.cells2(fh, comp) if P.two[t] == ii and E.wl(cf, t) == target]
    return eta, comp, kappa, sols


def factor_2cell_weak(proj, C, al, fibres=None):
    """al = tau_g . (chosen*g^) . (tau_h*g^) . a^-1 . (c*kappa) . (c*al^) . tau_f^-1."""
    proj = as_projection(proj)
    E, P = proj.E, proj.P
    fibres = {} if fibres is None else fibres
    f, g = E.two_cells[al]
    w = E.src1(f)
    Ff = factor_1cell_weak(proj, C, f)
    Fg = factor_1cell_weak(proj, C, g)
    cf, cg = Ff.chosen, Fg.chosen
    chi = C.lift2[(P.two[al], cg)]
    h = E.src2(chi)
    Fh = factor_1cell_weak(proj, C, h)
    if Fh.chosen != cf:
        raise FibreError("chosen lifts of Pf and Ph differ")
    fib = _fibre(proj, C, P.obj[w], fibres)
    pick = (lambda F: (F.hat, F.chosen, F.iso))
    eta, comp, kappa, sols = _solve2(proj, fib, al, chi, pick(Ff), pick(Fg), pick(Fh))
    if not sols:
        raise FibreError(f"no hat alpha for {al}")
    ah = sols[0]
    hh, gh = Fh.hat, Fg.hat
    back = E.seq(E.inv(Ff.iso), E.wl(cf, ah), E.wl(cf, kappa), E.inv(E.a(cf, hh, gh)),
                 E.wr(Fh.iso, gh), E.wr(chi, gh), Fg.iso)
    D = fib.bicategory
    alts = []
    for f2, k2, tf, _ in Ff.alternatives:
        for g2, l2, tg, _ in Fg.alternatives:
            for h2, m2, th, _ in Fh.alternatives:
                if None in (tf, tg, th):
                    alts.append((f2, g2, h2, None, False))
                    continue
                _, _, _, s2 = _solve2(proj, fib, al, chi, (f2, cf, k2), (g2, cg, l2), (h2, cf, m2))
                ok = len(s2) == 1 and E.v(s2[0], tf) == E.v(D.h(th, tg), ah)
                alts.append((f2, g2, h2, s2[0] if s2 else None, ok))
    return WeakFactor2(Ff, Fg, Fh, chi, eta, comp, kappa, ah, len(sols), back == al, alts)
