import pytest
from hypothesis import given, strategies as st

from twofib.core import enumerate_composable
from twofib.fixtures import (arrow, arrow_diagram, broken_functor, codiscrete_trihom,
                             codiscrete_z2, constant_diagram, cyclic_suspension, iota_trihom,
                             point_functor, sigma2, sigma2_collapse, sigma2_diagram,
                             suspension_trihom, terminal, to_terminal, twisted_identity,
                             weak_arrow_trihom)
from twofib.maps import (Homomorphism, IndexedModification, IndexedTransformation,
                         IndexedTwoDiagram, Modification, Transformation, TwoFunctor,
                         compose, embed_diagram, find_adjoint, hcomp_t, identity_functor,
                         identity_modification, identity_transformation,
                         transformations_equal, validate_homomorphism,
                         validate_indexed_diagram, validate_indexed_modification,
                         validate_indexed_transformation, validate_modification,
                         validate_transformation, validate_trihomomorphism,
                         validate_two_functor, vcomp_t, whisker_left, whisker_right)


@pytest.mark.parametrize("F", [
    identity_functor(sigma2()), sigma2_collapse(), broken_functor(),
    to_terminal(sigma2()), point_functor(sigma2(), "a"),
], ids=lambda F: F.name)
def test_two_functors_valid(F):
    assert validate_two_functor(F).passed


def test_to_terminal_of_bicategory_is_homomorphism():
    F = to_terminal(cyclic_suspension(4))
    assert isinstance(F, Homomorphism) and F.is_strict
    assert validate_homomorphism(F).passed


def test_broken_local_map_is_reported():
    F = sigma2_collapse()
    two = dict(F.two)
    two["alpha"] = "id_id0"
    bad = TwoFunctor(F.dom, F.cod, F.obj, F.one, two)
    rep = validate_two_functor(bad)
    assert not rep.passed
    assert any("alpha" in v.witness for v in rep.violations)


def test_missing_assignment_is_malformed():
    F = sigma2_collapse()
    one = dict(F.one)
    del one["f"]
    rep = validate_two_functor(TwoFunctor(F.dom, F.cod, F.obj, one, F.two))
    assert rep.malformed


@given(st.integers(2, 4), st.data())
def test_twisted_identity_valid_iff_units_cancel(n, data):
    B = cyclic_suspension(n)
    c = data.draw(st.integers(0, n - 1))
    k = data.draw(st.integers(0, n - 1))
    rep = validate_homomorphism(twisted_identity(B, c, k))
    assert rep.passed == ((c + k) % n == 0)
    if not rep.passed:
        assert "phi.left_unit" in rep.laws()


def test_composite_of_twists():
    B = cyclic_suspension(4)
    T = twisted_identity(B, 1)
    TT = compose(T, T, name="tt")
    assert validate_homomorphism(TT).passed
    # the composite comparison cells add up
    assert TT.phi0("*") == "0:2" and TT.phi("1", "2") == "3:2"


def test_transformation_in_diagram_alpha():
    D = sigma2_diagram()
    t = D.on_2["alpha"]
    assert validate_transformation(t).passed
    assert t.comp0 == {"0": "id0", "1": "u"}
    bad = Transformation(t.source, t.target, {"0": "u", "1": "u"}, t.comp1)
    assert validate_transformation(bad).malformed


def test_transformation_algebra_units():
    D = sigma2_diagram()
    t = D.on_2["alpha"]
    i_src = identity_transformation(t.source)
    i_tgt = identity_transformation(t.target)
    assert transformations_equal(vcomp_t(t, i_src), t)
    assert transformations_equal(vcomp_t(i_tgt, t), t)
    I = identity_functor(t.cod)
    assert transformations_equal(whisker_left(I, t), t)
    assert transformations_equal(whisker_right(t, identity_functor(t.dom)), t)
    assert transformations_equal(hcomp_t(identity_transformation(I), t), t)


def test_modifications():
    t = sigma2_diagram().on_2["alpha"]
    assert validate_modification(identity_modification(t)).passed
    bad = Modification(t, t, {"0": "id_id0", "1": "id_id0"})
    assert validate_modification(bad).malformed


@pytest.mark.parametrize("D", [arrow_diagram(), sigma2_diagram(),
                               constant_diagram(arrow(), sigma2())], ids=lambda D: D.name)
def test_indexed_diagrams_valid(D):
    assert validate_indexed_diagram(D).passed
    assert validate_trihomomorphism(embed_diagram(D)).passed


def test_indexed_diagram_not_functorial():
    D = sigma2_diagram()
    on_1 = dict(D.on_1)
    # Fid must be the identity functor
    on_1["id_b"] = D.on_1["g"]
    bad = IndexedTwoDiagram(D.base, D.on_obj, on_1, D.on_2, name="bad")
    rep = validate_indexed_diagram(bad)
    assert not rep.passed


def _collapse_fibre():
    """On diagram_u: the endomorphism of the fibre over 1 that is constant at 0."""
    D = arrow_diagram()
    X = D.on_obj["1"]
    K = TwoFunctor(X, X, {"0": "0", "1": "0"}, {"id0": "id0", "id1": "id0", "u": "id0"},
                   {"id_id0": "id_id0", "id_id1": "id_id0", "id_u": "id_id0"}, name="K")
    T = D.on_obj["0"]
    eta = IndexedTransformation(D, D, {"0": identity_functor(T), "1": K})
    ident = IndexedTransformation(D, D, {"0": identity_functor(T), "1": identity_functor(X)})
    return D, eta, ident, K


def test_indexed_transformation_and_modification():
    D, eta, ident, K = _collapse_fibre()
    assert validate_indexed_transformation(eta).passed
    X = D.on_obj["1"]
    t1 = Transformation(K, identity_functor(X), {"0": "id0", "1": "u"})
    t0 = identity_transformation(identity_functor(D.on_obj["0"]))
    m = IndexedModification(eta, ident, {"0": t0, "1": t1})
    assert validate_indexed_modification(m).passed
    # the reverse direction has no component 1 -> 0 in the fibre
    assert find_adjoint(X, "u") is None


@pytest.mark.parametrize("F", [iota_trihom(), weak_arrow_trihom(), suspension_trihom(0),
                               suspension_trihom(1)], ids=lambda F: F.name)
def test_trihomomorphisms_locally_valid(F):
    assert validate_trihomomorphism(F).passed


def test_trihom_bad_gamma_component():
    F = iota_trihom()
    F.gamma = {"id": {"*": "1>1"}}
    rep = validate_trihomomorphism(F)
    assert not rep.passed
    assert rep.laws()[0].startswith("gamma.")


@given(st.sampled_from(["arrow", "sigma2", "terminal"]), st.data())
def test_random_codiscrete_trihoms_valid(base, data):
    B = {"arrow": arrow, "sigma2": sigma2, "terminal": terminal}[base]()
    pairs = enumerate_composable(B, 2, 1, dim=1)
    chi = {p: data.draw(st.sampled_from("1e")) for p in pairs}
    iota = {x: data.draw(st.sampled_from("1e")) for x in B.objects}
    F = codiscrete_trihom(B, lambda g, f: chi[(g, f)], lambda x: iota[x])
    assert validate_trihomomorphism(F).passed


def test_adjoint_in_z2c():
    g, eta, eps = find_adjoint(codiscrete_z2(), "e")
    assert g in ("1", "e") and eta.startswith("1>") and eps.endswith(">1")
