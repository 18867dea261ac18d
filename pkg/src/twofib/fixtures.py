"""Small named categories, diagrams and maps used by tests and the CLI."""
from __future__ import annotations

from .core import TwoCategory, tabulate, tup
from .maps import (AdjointData, Homomorphism, IndexedTwoDiagram, Transformation,
                   TwoFunctor, Trihomomorphism, identity_functor,
                   identity_transformation, terminal_functor)


def locally_discrete(objects, arrows, comp, ids, name=""):
    """A 1-category viewed as a 2-category with identity 2-cells only.

    arrows: name -> (src, tgt); comp(g, f) -> name; ids: object -> name.
    2-cells are named ``id_<f>``.
    """
    two = {f"id_{f}": (f, f) for f in arrows}
    return tabulate(
        objects, arrows, two,
        id1=lambda x: ids[x],
        id2=lambda f: f"id_{f}",
        comp1=comp,
        vcomp=lambda b, a: a,
        hcomp=lambda b, a: f"id_{comp(b[3:], a[3:])}",
        name=name)


def terminal():
    """One object, one 1-cell, one 2-cell."""
    return TwoCategory(["*"], {"id": ("*", "*")}, {"id": ("id", "id")},
                       {"*": "id"}, {"id": "id"}, {("id", "id"): "id"},
                       {("id", "id"): "id"}, {("id", "id"): "id"}, name="1")


def arrow():
    """The walking arrow u: 0 -> 1."""
    arrows = {"id0": ("0", "0"), "id1": ("1", "1"), "u": ("0", "1")}

    def comp(g, f):
        return f if g.startswith("id") else g
    return locally_discrete(["0", "1"], arrows, comp, {"0": "id0", "1": "id1"}, name="2")


def sigma2():
    """The walking 2-cell alpha: f => g: a -> b."""
    one = {"id_a": ("a", "a"), "id_b": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")}
    two = {"id_id_a": ("id_a", "id_a"), "id_id_b": ("id_b", "id_b"),
           "id_f": ("f", "f"), "id_g": ("g", "g"), "alpha": ("f", "g")}

    def c1(g, f):
        return f if g.startswith("id_") else g

    def vc(b, a):
        if b.startswith("id_"):
            return a
        return b

    def hc(b, a):
        # one side is always an identity on an identity 1-cell
        return a if b in ("id_id_a", "id_id_b") else b
    return tabulate(["a", "b"], one, two, lambda x: f"id_{x}", lambda f: f"id_{f}",
                    c1, vc, hc, name="Sigma2")


def codiscrete_z2():
    """One object, 1-cells {1, e} with e.e = 1, a unique 2-cell between any two."""
    one = {"1": ("*", "*"), "e": ("*", "*")}
    two = {f"{s}>{t}": (s, t) for s in "1e" for t in "1e"}

    def mul(g, f):
        return "1" if g == f else "e"
    return tabulate(["*"], one, two, lambda x: "1", lambda f: f"{f}>{f}", mul,
                    lambda b, a: f"{a[0]}>{b[2]}",
                    lambda b, a: f"{mul(b[0], a[0])}>{mul(b[2], a[2])}",
                    name="Z2c")


def cyclic_suspension(n=4, cocycle=None, name=None):
    """One object, 1-cells Z/n, automorphism 2-cells Z/n on each 1-cell.

    The associator on (h, g, f) is the automorphism cocycle(h, g, f) of
    h+g+f; the default is the normalized 3-cocycle h * carry(g, f).
    """
    if cocycle is None:
        def cocycle(h, g, f):
            return (h * ((g + f) // n)) % n
    one = {str(m): ("*", "*") for m in range(n)}
    two = {f"{m}:{s}": (str(m), str(m)) for m in range(n) for s in range(n)}

    def split(c):
        m, s = c.split(":")
        return int(m), int(s)

    def cell(m, s):
        return f"{m % n}:{s % n}"

    def vc(b, a):
        (m, s), (_, t) = split(b), split(a)
        return cell(m, s + t)

    def hc(b, a):
        (m, s), (k, t) = split(b), split(a)
        return cell(m + k, s + t)
    return tabulate(["*"], one, two, lambda x: "0", lambda f: cell(int(f), 0),
                    lambda g, f: str((int(g) + int(f)) % n), vc, hc,
                    assoc=lambda h, g, f: cell(int(h) + int(g) + int(f), cocycle(int(h), int(g), int(f))),
                    lunit=lambda f: cell(int(f), 0), runit=lambda f: cell(int(f), 0),
                    name=name or f"SZ{n}", strict=False)


def constant_diagram(B, C):
    """The constant diagram at C over B."""
    I = identity_functor(C)
    one = {f: I for f in B.one_cells}
    two = {a: identity_transformation(I) for a in B.two_cells}
    return IndexedTwoDiagram(B, {b: C for b in B.objects}, one, two, name=f"const_{C.name}")


def arrow_diagram(fibre=None):
    """Over 2: F(1) = fibre (default 2), F(0) = 1, F(u) terminal."""
    B = arrow()
    T = terminal()
    X = arrow() if fibre is None else fibre
    on_obj = {"0": T, "1": X}
    on_1 = {"id0": identity_functor(T), "id1": identity_functor(X), "u": terminal_functor(X, T)}
    on_2 = {f"id_{f}": identity_transformation(F) for f, F in on_1.items()}
    return IndexedTwoDiagram(B, on_obj, on_1, on_2, name="diagram_u")


def sigma2_diagram():
    """Over Sigma2: F(b) = F(a) = 2, Ff = id, Fg = constant 0, Fal: Fg => Ff."""
    B = sigma2()
    X = arrow()
    Ff = identity_functor(X)
    Fg = TwoFunctor(X, X, {"0": "0", "1": "0"}, {"id0": "id0", "id1": "id0", "u": "id0"},
                    {"id_id0": "id_id0", "id_id1": "id_id0", "id_u": "id_id0"}, name="const0")
    on_1 = {"id_a": Ff, "id_b": Ff, "f": Ff, "g": Fg}
    Fal = Transformation(Fg, Ff, {"0": "id0", "1": "u"}, name="Falpha")
    on_2 = {"id_id_a": identity_transformation(Ff), "id_id_b": identity_transformation(Ff),
            "id_f": identity_transformation(Ff), "id_g": identity_transformation(Fg),
            "alpha": Fal}
    return IndexedTwoDiagram(B, {"a": X, "b": X}, on_1, on_2, name="diagram_alpha")


def iota_trihom():
    """Over 1: fibre Z2c, reindexing identity, iota with component e.

    chi is the identity; gamma and delta are the unique cells e => 1.
    """
    B = terminal()
    X = codiscrete_z2()
    I = identity_functor(X)
    chi_t = Transformation(I, I, {"*": "1"})
    iota_t = Transformation(I, I, {"*": "e"}, {"1": "e>e", "e": "1>1"})
    return Trihomomorphism(
        B, {"*": X}, {"id": I}, {"id": identity_transformation(I)},
        chi={("id", "id"): chi_t},
        chi_adj={("id", "id"): AdjointData({"*": "1"}, {"*": "1>1"}, {"*": "1>1"})},
        iota={"*": iota_t},
        iota_adj={"*": AdjointData({"*": "e"}, {"*": "1>1"}, {"*": "1>1"})},
        chi2={("id", "id"): {"*": "1>1"}},
        iota2={"*": {"*": "e>e"}},
        omega={("id", "id", "id"): {"*": "1>1"}},
        gamma={"id": {"*": "e>1"}},
        delta={"id": {"*": "e>1"}},
        name="iota_e")


def twisted_identity(B, c=1, k=None):
    """Identity on a cyclic suspension with phi_id = c and phi_comp = -c."""
    n = len(B.one_cells)
    k = -c if k is None else k
    phi = {(g, f): f"{(int(g) + int(f)) % n}:{k % n}" for g in B.one_cells for f in B.one_cells}
    phi0 = {"*": f"0:{c % n}"}
    return Homomorphism(B, B, {"*": "*"}, {f: f for f in B.one_cells},
                        {a: a for a in B.two_cells}, phi, phi0, name="twist")


def codiscrete_trihom(B, chi_pick=None, iota_pick=None, name="codiscrete"):
    """Fibres Z2c, reindexing identity, chi and iota chosen freely.

    chi_pick(g, f) and iota_pick(x) return "1" or "e".  Every family of
    2-cells is forced because Z2c has exactly one 2-cell between any two
    1-cells, so all coherence conditions hold automatically.
    """
    X = codiscrete_z2()
    I = identity_functor(X)
    chi_pick = chi_pick or (lambda g, f: "1")
    iota_pick = iota_pick or (lambda x: "1")

    def trans(c):
        return Transformation(I, I, {"*": c}, {f: f"{X.c1(f, c)}>{X.c1(c, f)}" for f in X.one_cells})

    def adj(c):
        return AdjointData({"*": c}, {"*": "1>1"}, {"*": "1>1"})

    from .core import enumerate_composable
    chi = {k: trans(chi_pick(*k)) for k in enumerate_composable(B, 2, 1, dim=1)}
    iota = {x: trans(iota_pick(x)) for x in B.objects}
    F = Trihomomorphism(B, {x: X for x in B.objects}, {f: I for f in B.one_cells},
                        {a: identity_transformation(I) for a in B.two_cells},
                        chi=chi, chi_adj={k: adj(t.comp0["*"]) for k, t in chi.items()},
                        iota=iota, iota_adj={x: adj(t.comp0["*"]) for x, t in iota.items()},
                        chi2={}, iota2={}, omega={}, gamma={}, delta={}, name=name)
    fams = {"chi2": F.chi2, "iota2": F.iota2, "omega": F.omega, "gamma": F.gamma, "delta": F.delta}
    for label, key, s, t, _ in F.modification_families():
        comp = {"*": f"{s.comp0['*']}>{t.comp0['*']}"}
        fams[label][key if len(key) > 1 else key[0]] = comp
    return F


def weak_arrow_trihom():
    """Over 2 with fibres Z2c: chi_(id1,u) = e and iota_1 = e."""
    return codiscrete_trihom(arrow(), lambda g, f: "e" if (g, f) == ("id1", "u") else "1",
                             lambda x: "e" if x == "1" else "1", name="weak_u")


def iso_pair():
    """Two objects p, q with inverse 1-cells i: p -> q and j: q -> p."""
    arrows = {"id_p": ("p", "p"), "id_q": ("q", "q"), "i": ("p", "q"), "j": ("q", "p")}

    def comp(g, f):
        if g.startswith("id_"):
            return f
        if f.startswith("id_"):
            return g
        return "id_p" if (g, f) == ("j", "i") else "id_q"
    return locally_discrete(["p", "q"], arrows, comp, {"p": "id_p", "q": "id_q"}, name="I")


def three():
    """The walking composable pair u: 0 -> 1, v: 1 -> 2 with w = v.u."""
    arrows = {"id0": ("0", "0"), "id1": ("1", "1"), "id2": ("2", "2"),
              "u": ("0", "1"), "v": ("1", "2"), "w": ("0", "2")}

    def comp(g, f):
        if g.startswith("id"):
            return f
        if f.startswith("id"):
            return g
        return "w"
    return locally_discrete(["0", "1", "2"], arrows, comp,
                            {"0": "id0", "1": "id1", "2": "id2"}, name="3")


def nonsplit_cleavage():
    """Constant diagram at I over 3 with the lift of v at (2|p) rechosen.

    The replacement (v|j|p) is still cartesian but the chosen lifts no
    longer compose to chosen lifts.  Returns (construction, cleavage).
    """
    from .fib_strict import Cleavage
    from .groth import grothendieck_strict
    c = grothendieck_strict(constant_diagram(three(), iso_pair()))
    lift1 = dict(c.cleavage.lift1)
    lift1[("v", tup("2", "p"))] = tup("v", "j", "p")
    return c, Cleavage(lift1, dict(c.cleavage.lift2), name="rechosen")


def sigma2_collapse():
    """Sigma2 -> 2 identifying f and g; alpha is not cartesian."""
    S, A = sigma2(), arrow()
    return TwoFunctor(S, A, {"a": "0", "b": "1"},
                      {"id_a": "id0", "id_b": "id1", "f": "u", "g": "u"},
                      {"id_id_a": "id_id0", "id_id_b": "id_id1", "id_f": "id_u",
                       "id_g": "id_u", "alpha": "id_u"}, name="collapse")


def to_terminal(B):
    T = terminal()
    cls = TwoFunctor if B.is_strict else Homomorphism
    kw = {} if B.is_strict else {"phi_comp": {k: "id" for k in B.comp1}, "phi_id": {x: "id" for x in B.objects}}
    return cls(B, T, {x: "*" for x in B.objects}, {f: "id" for f in B.one_cells},
               {a: "id" for a in B.two_cells}, name=f"!_{B.name}", **kw)


def point_functor(B, x):
    """1 -> B at x (B a 2-category)."""
    i = B.id1[x]
    return TwoFunctor(terminal(), B, {"*": x}, {"id": i}, {"id": B.id2[i]}, name=f"pt_{x}")


def missing_lift():
    """The projection of el(diagram_u) with everything over 0 deleted."""
    from .core import subcategory
    from .groth import grothendieck_strict
    c = grothendieck_strict(arrow_diagram())
    P = c.projection.P
    E = c.total
    objs = [o for o in E.objects if P.obj[o] != "0"]
    one = [f for f in E.one_cells if all(P.obj[x] != "0" for x in E.one_cells[f])]
    two = [a for a in E.two_cells if E.src2(a) in one]
    E2 = subcategory(E, objs, one, two, name="el_missing")
    return TwoFunctor(E2, P.cod, {o: P.obj[o] for o in objs}, {f: P.one[f] for f in one},
                      {a: P.two[a] for a in two}, name="P_missing")


def broken_functor():
    """2 -> Sigma2 sending u to g: neither 1-cell lifts nor alpha lifts."""
    return TwoFunctor(arrow(), sigma2(), {"0": "a", "1": "b"},
                      {"id0": "id_a", "id1": "id_b", "u": "g"},
                      {"id_id0": "id_id_a", "id_id1": "id_id_b", "id_u": "id_g"}, name="broken")


def suspension_trihom(w=0):
    """Over 1 with fibre the strict suspension of Z/2 and omega = w.

    Every local axiom holds for any w; the pentagon of the total bicategory
    holds only for w = 0.
    """
    from .core import strict_view
    B = terminal()
    X = strict_view(cyclic_suspension(2, cocycle=lambda h, g, f: 0, name="SZ2s"))
    I = identity_functor(X)
    t = identity_transformation(I)
    ones = {"*": "0:0"}
    return Trihomomorphism(B, {"*": X}, {"id": I}, {"id": identity_transformation(I)},
                           chi={("id", "id"): t}, chi_adj={("id", "id"): AdjointData({"*": "0"}, ones, ones)},
                           iota={"*": t}, iota_adj={"*": AdjointData({"*": "0"}, ones, ones)},
                           chi2={("id", "id"): ones}, iota2={"*": ones},
                           omega={("id", "id", "id"): {"*": f"0:{w % 2}"}},
                           gamma={"id": ones}, delta={"id": ones}, name=f"suspension_w{w % 2}")


def fixture_documents():
    """name -> (object, cleavage projection or None) for the .fw files."""
    from .groth import grothendieck_strict
    d = grothendieck_strict(arrow_diagram())
    return {
        "terminal": (terminal(), None),
        "arrow": (arrow(), None),
        "sigma2": (sigma2(), None),
        "z2c": (codiscrete_z2(), None),
        "sz4": (cyclic_suspension(4), None),
        "diagram_u": (arrow_diagram(), None),
        "diagram_alpha": (sigma2_diagram(), None),
        "const_sigma2": (constant_diagram(arrow(), sigma2()), None),
        "iota_trihom": (iota_trihom(), None),
        "weak_u": (weak_arrow_trihom(), None),
        "twist_sz2": (twisted_identity(cyclic_suspension(2)), None),
        "pt_a": (point_functor(sigma2(), "a"), None),
        "pt_b": (point_functor(sigma2(), "b"), None),
        "pt_1": (point_functor(arrow(), "1"), None),
        "id_arrow": (identity_functor(arrow()), None),
        "el_u": (d.cleavage, d.projection),
        "collapse": (sigma2_collapse(), None),
        "broken": (broken_functor(), None),
        "z2c_to_1": (to_terminal(codiscrete_z2()), None),
        "missing_lift": (missing_lift(), None),
        "pt_z2c": (point_functor(codiscrete_z2(), "*"), None),
        "bad_omega": (suspension_trihom(1), None),
    }


def write_fixture_files(directory):
    import os
    from .dsl import dump
    os.makedirs(directory, exist_ok=True)
    for name, (obj, proj) in sorted(fixture_documents().items()):
        dump(obj, os.path.join(directory, f"{name}.fw"), proj)


if __name__ == "__main__":
    import sys
    write_fixture_files(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
