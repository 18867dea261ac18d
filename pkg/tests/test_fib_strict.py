import pytest

import oracles
from catalogue import ALL, STRICT_FIBRATIONS, construction, projection
from twofib.fib_strict import (Cleavage, FactorizationError, Projection, cartesian_cells,
                               check_cartesian_functor, check_cleavage, check_fibration_flags,
                               check_two_fibration, chosen_hcomp_closed, closure_report,
                               default_cleavage, factor_1cell_strict, factor_2cell_strict,
                               is_cartesian_1cell_strict, is_cartesian_2cell, preserves_chosen)
from twofib.fixtures import nonsplit_cleavage
from twofib.maps import TwoFunctor, compose, identity_functor

# Non-cartesian cells, computed once by the pullback-of-hom-categories oracle.
NONCART1 = {
    "diagram_u": {"(id1|u|1)"},
    "diagram_alpha": {"(f|u|1)", "(id_a|u|1)", "(id_b|u|1)"},
    "const_sigma2": {"(id0|f|b)", "(id0|g|b)", "(id1|f|b)", "(id1|g|b)", "(u|f|b)", "(u|g|b)"},
    "collapse": {"f", "g"},
    "sigma2_to_1": {"f", "g"},
    "missing": {"(id1|u|1)"},
}
NONCART2 = {
    "const_sigma2": {"(id_id0|alpha|g|b)", "(id_id1|alpha|g|b)", "(id_u|alpha|g|b)"},
    "collapse": {"alpha"},
    "sigma2_to_1": {"alpha"},
}


@pytest.mark.parametrize("name", ALL)
def test_cartesian_cells_match_oracle(name):
    P = projection(name)
    c1, c2 = cartesian_cells(Projection(P))
    E = P.dom
    assert set(E.one_cells) - c1 == NONCART1.get(name, set())
    assert set(E.two_cells) - c2 == NONCART2.get(name, set())
    assert c1 == oracles.strict_cartesian_1cells(P)
    assert c2 == oracles.cartesian_2cells(P)


def test_parallel_agrees_with_serial():
    P = Projection(projection("const_sigma2"))
    Q = Projection(projection("const_sigma2"))
    assert cartesian_cells(P, parallel=2) == cartesian_cells(Q)


def test_non_cartesian_witness():
    v = is_cartesian_1cell_strict(projection("sigma2_to_1"), "f")
    assert not v and v.witness == ("lift1", "g", "id", 0)
    v = is_cartesian_2cell(projection("collapse"), "alpha")
    assert not v


@pytest.mark.parametrize("name", STRICT_FIBRATIONS)
def test_strict_fibrations(name):
    rep = check_two_fibration(Projection(projection(name)))
    assert rep.is_two_fibration and all(rep.flags.values())
    assert rep.extras["hcomp_closed_chosen"]


# flag -> witnesses for the projections that are not fibrations
FAILURES = {
    "collapse": {"has_cart_1_lifts": [("u", "b")]},
    "broken": {"has_cart_1_lifts": [("f", "1")], "locally_fibred": [("alpha", "u")]},
    "missing": {"has_cart_1_lifts": [("u", "(1|0)"), ("u", "(1|1)")]},
    "pt_z2c": {"has_cart_1_lifts": [("e", "*")], "locally_fibred": [("e>1", "id")]},
}


@pytest.mark.parametrize("name", sorted(FAILURES))
def test_fibration_failures(name):
    rep = check_fibration_flags(Projection(projection(name)))
    assert not rep.is_fibration
    assert rep.witnesses == FAILURES[name]


def test_sigma2_to_point_is_fibration_despite_noncartesian_f():
    # identities lift everything; f and g simply are not cartesian
    rep = check_fibration_flags(Projection(projection("sigma2_to_1")))
    assert rep.is_fibration


def test_witness_limit():
    rep = check_fibration_flags(Projection(projection("missing")), limit=1)
    assert rep.witnesses["has_cart_1_lifts"] == [("u", "(1|0)")]


@pytest.mark.parametrize("name", STRICT_FIBRATIONS)
def test_canonical_cleavage_split(name):
    c = construction(name)
    rep = check_cleavage(c.projection, c.cleavage)
    assert rep.fully_split and rep.passed


def test_default_cleavage_prefers_identities():
    proj = Projection(projection("diagram_u"))
    C = default_cleavage(proj)
    E = proj.E
    for (f, e), h in C.lift1.items():
        if f == proj.B.id1[proj.P.obj[e]]:
            assert h == E.id1[e]
    assert check_cleavage(proj, C).passed


def test_nonsplit_cleavage():
    c, C = nonsplit_cleavage()
    rep = check_cleavage(c.projection, C)
    assert rep.passed and not rep.fully_split
    assert rep.witnesses == {"split_1cells": [("v", "u", "(2|p)")]}


def test_cleavage_with_bad_lift():
    c = construction("diagram_u")
    lift1 = dict(c.cleavage.lift1)
    lift1[("u", "(1|1)")] = "(id1|u|1)"
    rep = check_cleavage(c.projection, Cleavage(lift1, c.cleavage.lift2))
    assert not rep.passed
    assert ("lift1", "u", "(1|1)") in rep.witnesses["cartesian"]
    missing = dict(c.cleavage.lift1)
    del missing[("u", "(1|1)")]
    rep = check_cleavage(c.projection, Cleavage(missing, c.cleavage.lift2))
    assert rep.witnesses["total"] == [("lift1", "u", "(1|1)")]


@pytest.mark.parametrize("name", ALL)
def test_closure_properties(name):
    assert closure_report(Projection(projection(name))).passed


@pytest.mark.parametrize("name", STRICT_FIBRATIONS)
def test_chosen_lifts_suffice(name):
    c = construction(name)
    full = check_fibration_flags(c.projection).flags["hcomp_closed"]
    assert bool(chosen_hcomp_closed(c.projection, c.cleavage)) == full


@pytest.mark.parametrize("name", ["diagram_u", "diagram_alpha", "const_sigma2"])
def test_factorizations_strict(name):
    c = construction(name)
    proj, C = c.projection, c.cleavage
    E, P, B = proj.E, proj.P, proj.B
    for f in sorted(E.one_cells):
        fac = factor_1cell_strict(proj, C, f)
        assert fac.alternatives == 1
        assert E.c1(fac.chosen, fac.hat) == f and proj.is_vertical1(fac.hat)
    for al in sorted(E.two_cells):
        fac = factor_2cell_strict(proj, C, al)
        assert fac.alternatives == 1
        assert P.two[fac.hat_alpha] == B.id2[P.one[fac.hat_f]]
        got = E.v(E.wr(fac.chosen, fac.hat_g), E.wl(fac.chosen_f, fac.hat_alpha))
        assert got == al


def test_factorization_needs_a_lift():
    c = construction("diagram_u")
    C = Cleavage({}, {})
    with pytest.raises(FactorizationError):
        factor_1cell_strict(c.projection, C, "(u|id|1)")


def test_identity_is_cartesian_functor():
    c = construction("diagram_alpha")
    I = identity_functor(c.total)
    assert check_cartesian_functor(c.projection, c.projection, I).passed
    assert preserves_chosen(I, c.projection, c.cleavage, c.projection, c.cleavage).passed


def test_base_triangle_checked():
    c = construction("diagram_u")
    B = c.projection.B
    const1 = TwoFunctor(B, B, {"0": "1", "1": "1"}, {"id0": "id1", "id1": "id1", "u": "id1"},
                        {"id_id0": "id_id1", "id_id1": "id_id1", "id_u": "id_id1"})
    Q = compose(const1, c.projection.P)
    rep = check_cartesian_functor(c.projection, Q, identity_functor(c.total))
    assert rep.laws() == ["base_triangle"]
    d = construction("diagram_alpha")
    rep = check_cartesian_functor(c.projection, d.projection, identity_functor(c.total))
    assert rep.malformed
