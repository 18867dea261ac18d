import pytest
from hypothesis import given, strategies as st

import oracles
from catalogue import DIAGRAMS, construction
from test_maps import _collapse_fibre
from twofib.core import validate_two_category
from twofib.fib_strict import (check_cartesian_functor, check_cleavage,
                               check_two_fibration, preserves_chosen)
from twofib.fixtures import arrow, constant_diagram, iso_pair, nonsplit_cleavage, three
from twofib.groth import (NotSplitError, fibre_strict, grothendieck_map, grothendieck_strict,
                          invert_strict, is_vertical_transformation, roundtrip_iso_strict)
from twofib.maps import (IndexedModification, Transformation,
                         identity_transformation, validate_indexed_diagram,
                         validate_transformation, validate_two_functor)

# diagram_u: (0|*), (1|0), (1|1); the fibre 2 over 1 contributes 3 1-cells,
# 1 over id0 and one lift of u at each object over 1; all 2-cells are identities.
COUNTS = {
    "diagram_u": (3, 6, 6),
    "diagram_alpha": (4, 11, 13),
    "const_sigma2": (4, 12, 15),
    "const_iso_pair": (6, 24, 24),
}


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_counts(name):
    c = construction(name)
    assert c.total.counts() == COUNTS[name]
    if name in DIAGRAMS:
        assert oracles.grothendieck_counts(DIAGRAMS[name]()) == COUNTS[name]


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_split_two_fibration(name):
    c = construction(name)
    assert validate_two_category(c.total).passed
    rep = check_two_fibration(c.projection, c.cleavage)
    assert all(rep.flags.values())
    assert check_cleavage(c.projection, c.cleavage).fully_split


def test_cell_names_decode():
    c = construction("diagram_alpha")
    assert c.parts["(alpha|id_u|id0|1)"] == ("alpha", "id_u", "id0", "1")
    # at 1 the component of Falpha is u, so a cell over alpha into (g|id0|1)
    # has fibre part into u.id0 = u
    over = sorted(a for a in c.total.two_cells if c.parts[a][0] == "alpha")
    assert over == ["(alpha|id_id0|id0|0)", "(alpha|id_u|id0|1)"]
    assert c.total.two_cells["(alpha|id_u|id0|1)"] == ("(f|u|1)", "(g|id0|1)")


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_roundtrip(name):
    c = construction(name)
    rt = roundtrip_iso_strict(c.projection, c.cleavage)
    assert rt.report.passed, rt.report.violations[:5]


@pytest.mark.parametrize("name", sorted(DIAGRAMS))
def test_invert_recovers_diagram(name):
    D = DIAGRAMS[name]()
    c = construction(name)
    D2 = invert_strict(c.projection, c.cleavage)
    assert validate_indexed_diagram(D2).passed
    for b in D.base.objects:
        assert D2.on_obj[b].counts() == D.on_obj[b].counts()
    # reindexing is the original one after decoding names
    p = c.parts
    for f, F in D.on_1.items():
        G = D2.on_1[f]
        assert {p[e][1]: p[G.obj[e]][1] for e in G.obj} == F.obj
        assert {p[k][1]: p[G.one[k]][1] for k in G.one} == F.one


def test_fibre():
    c = construction("diagram_alpha")
    F = fibre_strict(c.projection, "a")
    assert F.counts() == (2, 3, 3)
    assert validate_two_category(F).passed


def test_nonsplit_rejected():
    c, C = nonsplit_cleavage()
    with pytest.raises(NotSplitError) as info:
        invert_strict(c.projection, C)
    assert info.value.flag == "split_1cells"
    assert info.value.witness == ("v", "u", "(2|p)")


def test_map_of_transformation():
    D, eta, ident, K = _collapse_fibre()
    G = grothendieck_strict(D)
    F = grothendieck_map(D, D, eta, G, G)
    assert validate_two_functor(F).passed
    assert check_cartesian_functor(G.projection, G.projection, F).passed
    assert preserves_chosen(F, G.projection, G.cleavage, G.projection, G.cleavage).passed
    assert F.obj["(1|1)"] == "(1|0)"
    I = grothendieck_map(D, D, ident, G, G)
    assert I.obj == {o: o for o in G.total.objects}


def test_map_of_modification():
    D, eta, ident, K = _collapse_fibre()
    X = D.on_obj["1"]
    from twofib.maps import identity_functor
    t1 = Transformation(K, identity_functor(X), {"0": "id0", "1": "u"})
    t0 = identity_transformation(identity_functor(D.on_obj["0"]))
    m = IndexedModification(eta, ident, {"0": t0, "1": t1})
    G = grothendieck_strict(D)
    t = grothendieck_map(D, D, m, G, G)
    assert validate_transformation(t).passed
    assert is_vertical_transformation(t, G.projection.P)
    assert t.comp0["(1|1)"] == "(id1|u|1)"


def test_map_rejects_other_objects():
    D = DIAGRAMS["diagram_u"]()
    with pytest.raises(TypeError):
        grothendieck_map(D, D, "not a cell")


@given(st.sampled_from(["arrow", "three"]), st.sampled_from(["arrow", "iso_pair"]))
def test_constant_diagrams_roundtrip(base, fibre):
    B = {"arrow": arrow, "three": three}[base]()
    X = {"arrow": arrow, "iso_pair": iso_pair}[fibre]()
    D = constant_diagram(B, X)
    c = grothendieck_strict(D)
    assert c.total.counts() == oracles.grothendieck_counts(D)
    n0, n1, n2 = B.counts()
    m0, m1, m2 = X.counts()
    assert c.total.counts() == (n0 * m0, n1 * m1, n2 * m2)
    assert roundtrip_iso_strict(c.projection, c.cleavage).report.passed
