import pytest

from catalogue import construction
from twofib.core import TwoCategory, validate, validate_bicategory
from twofib.comma import (CommaError, _default_local_lifts, check_cartesian_map,
                          check_d0_fibration, check_projections_strict, check_two_sided_local,
                          comma_pullback, compose_fibrations, free_fibration, oplax_comma,
                          ordinary_pullback, point)
from twofib.fib_strict import Projection, check_two_fibration
from twofib.fib_weak import check_fibration_weak
from twofib.fixtures import (arrow, codiscrete_trihom, constant_diagram, cyclic_suspension,
                             point_functor, sigma2, terminal, twisted_identity)
from twofib.groth import grothendieck_strict
from twofib.groth_weak import weak_grothendieck
from twofib.maps import identity_functor


def _pairs():
    el_u = construction("diagram_u")
    sz2 = cyclic_suspension(2)
    return {
        "terminal": (identity_functor(terminal()), identity_functor(terminal())),
        "points": (point_functor(sigma2(), "a"), point_functor(sigma2(), "b")),
        "twist_sz2": (twisted_identity(sz2), identity_functor(sz2)),
        "el_u": (el_u.projection.P, identity_functor(arrow())),
    }


PAIRS = _pairs()
COUNTS = {"terminal": (1, 1, 1), "points": (2, 3, 3), "twist_sz2": (2, 16, 64),
          "el_u": (4, 10, 10)}


@pytest.fixture(scope="module")
def commas():
    return {k: oplax_comma(F, G) for k, (F, G) in PAIRS.items()}


@pytest.mark.parametrize("name", sorted(PAIRS))
def test_oplax_comma(commas, name):
    cm = commas[name]
    assert cm.total.counts() == COUNTS[name]
    assert validate_bicategory(cm.total).passed
    assert check_projections_strict(cm).passed
    rep = check_d0_fibration(cm)
    assert rep.is_fibration
    assert rep.extras["chosen_cartesian"] and rep.extras["chosen_hcomp"]
    assert check_two_sided_local(cm).passed


def test_points_comma_names(commas):
    cm = commas["points"]
    # objects are 1-cells a -> b of Sigma2, i.e. f and g
    assert sorted(cm.total.objects) == ["(*|*|f)", "(*|*|g)"]
    # a 1-cell from t_x to t_y carries t_y => t_x, so alpha gives one from g to f
    assert cm.total.one_cells["(id|id|alpha|g|f)"] == ("(*|*|g)", "(*|*|f)")
    assert "(id|id|alpha|f|g)" not in cm.total.one_cells
    assert isinstance(cm.total, TwoCategory)


def test_strict_inputs_give_two_category(commas):
    assert isinstance(commas["el_u"].total, TwoCategory)
    assert not isinstance(commas["twist_sz2"].total, TwoCategory)


def test_mismatched_codomains():
    with pytest.raises(CommaError):
        oplax_comma(identity_functor(arrow()), identity_functor(sigma2()))


def test_mutated_local_lifts(commas):
    cm = commas["el_u"]
    lifts = _default_local_lifts(cm)
    cells = sorted(lifts)
    a, b = cells[0], cells[-1]
    bad = dict(lifts)
    bad[a] = lifts[b]
    rep = check_two_sided_local(cm, bad)
    assert rep.witnesses("eq3.decomposition") == [(a,)]
    bad[a] = ("nonsense", lifts[a][1])
    assert check_two_sided_local(cm, bad).laws() == ["lift.missing"]


def test_free_fibration():
    cm = free_fibration(point_functor(sigma2(), "b"))
    assert sorted(cm.total.objects) == ["(a|*|f)", "(a|*|g)", "(b|*|id_b)"]
    assert cm.total.counts() == (3, 7, 8)
    assert check_d0_fibration(cm).is_fibration
    assert check_two_sided_local(cm).passed


def test_point_of_bicategory():
    p = point(cyclic_suspension(4), "*")
    from twofib.maps import validate_homomorphism
    assert validate_homomorphism(p).passed


@pytest.mark.parametrize("variant", ["equiv", "iso", "strict"])
@pytest.mark.parametrize("F", [identity_functor(arrow()), point_functor(arrow(), "1")],
                         ids=["id", "pt_1"])
def test_pullback_variants(variant, F):
    c = construction("diagram_u")
    pb = comma_pullback(c.projection, F, variant)
    assert validate(pb.total).passed
    if variant == "equiv":
        assert check_fibration_weak(Projection(pb.P)).is_fibration
        assert check_cartesian_map(pb.P, c.projection, pb.F).passed
    else:
        assert isinstance(pb.total, TwoCategory)
        assert check_two_fibration(Projection(pb.P)).is_fibration
        assert check_cartesian_map(pb.P, c.projection, pb.F, weak=False).passed


def test_strict_pullback_is_ordinary_pullback():
    c = construction("diagram_u")
    F = point_functor(arrow(), "1")
    pb = comma_pullback(c.projection, F, "strict")
    op = ordinary_pullback(F, c.projection.P)
    assert (pb.total.objects, pb.total.one_cells, pb.total.two_cells) == \
        (op.objects, op.one_cells, op.two_cells)
    assert (pb.total.comp1, pb.total.vcomp, pb.total.hcomp) == (op.comp1, op.vcomp, op.hcomp)
    # the fibre of el_u over 1 is the walking arrow
    assert op.counts() == (2, 3, 3)


def test_strict_variants_need_strict_input():
    w = weak_grothendieck(codiscrete_trihom(arrow(), lambda g, f: "e"))
    with pytest.raises(CommaError):
        comma_pullback(w.projection, point_functor(arrow(), "1"), "iso")
    with pytest.raises(CommaError):
        comma_pullback(w.projection, point_functor(arrow(), "1"), "sideways")


def test_equiv_comma_of_weak_fibration():
    w = construction("weak_u")
    pb = comma_pullback(w.projection, point_functor(arrow(), "1"), "equiv")
    assert pb.total.counts() == (1, 2, 4)
    assert validate_bicategory(pb.total).passed
    assert check_fibration_weak(Projection(pb.P)).is_fibration
    assert check_cartesian_map(pb.P, w.projection, pb.F).passed


def test_compose_with_identity():
    c = construction("diagram_u")
    I = identity_functor(c.total)
    comp = compose_fibrations(c.projection, I, c.cleavage)
    assert comp.report.is_fibration and comp.cleavage_report.passed
    assert comp.cleavage.lift1 == c.cleavage.lift1


def test_compose_strict_stack():
    c = construction("diagram_u")
    top = grothendieck_strict(constant_diagram(c.total, arrow()))
    comp = compose_fibrations(c.projection, top.projection, c.cleavage, top.cleavage)
    assert all(comp.report.flags.values())
    assert comp.cleavage_report.fully_split
    # the double lift of u at ((1|1)|1) is the lift along Q of the lift along P
    assert comp.cleavage.lift1[("u", "((1|1)|1)")] == top.cleavage.lift1[
        (c.cleavage.lift1[("u", "(1|1)")], "((1|1)|1)")]


def test_compose_weak_stack():
    w = construction("weak_u")
    Q = weak_grothendieck(codiscrete_trihom(w.total, lambda g, f: "e", name="top"))
    comp = compose_fibrations(w.projection, Q.projection, w.cleavage, Q.cleavage)
    assert comp.report.is_fibration
    assert comp.cleavage_report.passed


def test_compose_needs_matching_ends():
    c = construction("diagram_u")
    with pytest.raises(CommaError):
        compose_fibrations(c.projection, identity_functor(arrow()))
